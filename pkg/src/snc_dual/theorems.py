"""Check a model's declared flags against the conclusions they imply.

* declared rational  =>  H^{n-1}(Γ; Q) = 0, n = ambient_dim
* declared hypersurface, n >= 3  =>  π1(Γ) = 0 (so Γ is connected, and the
  π1 verdict must not be "no")
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .complex import DualComplex, build_dual_complex, count_components
from .homology import VanishingStatus, verify_rational_vanishing
from .model import SNCModel
from .pi1 import DEFAULT_BUDGET, Connectivity, simple_connectivity

__all__ = ["RATIONAL_VANISHING", "HYPERSURFACE_PI1", "Outcome", "Finding", "check_declared_flags"]

RATIONAL_VANISHING = "rational-top-cohomology-vanishing"
HYPERSURFACE_PI1 = "hypersurface-simple-connectivity"


class Outcome(str, enum.Enum):
    CONSISTENT = "consistent"
    CONTRADICTED = "contradicted"
    UNDECIDED = "undecided"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class Finding:
    check: str
    outcome: Outcome
    detail: str


def check_declared_flags(model: SNCModel, move_budget: int = DEFAULT_BUDGET,
                         dual: DualComplex | None = None) -> list[Finding]:
    dual = dual or build_dual_complex(model)
    out = []

    if model.declared_rational:
        v = verify_rational_vanishing(model, dual)
        if v.status is VanishingStatus.VIOLATES:
            out.append(Finding(RATIONAL_VANISHING, Outcome.CONTRADICTED,
                               f"declared rational but rank H^{v.degree}(Γ; Q) = {v.rank}"))
        elif v.status is VanishingStatus.CONSISTENT:
            out.append(Finding(RATIONAL_VANISHING, Outcome.CONSISTENT, f"H^{v.degree}(Γ; Q) = 0"))
        else:
            out.append(Finding(RATIONAL_VANISHING, Outcome.NOT_APPLICABLE, "no ambient_dim declared"))

    if model.declared_hypersurface:
        if model.ambient_dim is None or model.ambient_dim < 3:
            out.append(Finding(HYPERSURFACE_PI1, Outcome.NOT_APPLICABLE, "needs ambient_dim >= 3"))
        else:
            n = count_components(dual)
            if n != 1:
                out.append(Finding(HYPERSURFACE_PI1, Outcome.CONTRADICTED,
                                   f"declared hypersurface but Γ has {n} connected components"))
            else:
                s = simple_connectivity(dual, move_budget)
                if s.verdict is Connectivity.NO:
                    out.append(Finding(HYPERSURFACE_PI1, Outcome.CONTRADICTED,
                                       f"declared hypersurface but H1(Γ) = {s.h1} is nonzero"))
                elif s.verdict is Connectivity.YES:
                    out.append(Finding(HYPERSURFACE_PI1, Outcome.CONSISTENT,
                                       f"π1(Γ) trivial ({s.moves_used} Tietze moves)"))
                else:
                    out.append(Finding(HYPERSURFACE_PI1, Outcome.UNDECIDED,
                                       f"H1(Γ) = 0 but the presentation did not simplify within "
                                       f"{move_budget} moves"))
    return out
