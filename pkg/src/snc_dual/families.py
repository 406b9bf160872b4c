"""Generators for example models: hyperplane arrangements, trees, cones,
random models and covers, and the bundled compound Du Val corpus."""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from itertools import combinations, product

from .complex import DualComplex, _barycentric, build_dual_complex
from .model import SNCModel, load_model, make_model, simplex_name, simplicial_model
from .nerve import TriangulatedCover

__all__ = [
    "FamilySpec",
    "gordon_family",
    "tree_family",
    "cone_family",
    "random_snc_model",
    "random_cover",
    "bundled_cdv_models",
    "bundled_model_names",
    "load_bundled",
    "generate",
]


@dataclass(frozen=True)
class FamilySpec:
    name: str
    n: int | None = None
    shape: tuple[int, ...] | None = None
    n_components: int = 4
    max_depth: int = 2
    density: float = 0.5
    seed: int = 0
    multi_piece: bool = False


def gordon_family(n: int) -> SNCModel:
    """n hyperplanes in general position in P^{n-1}: every proper subset of
    the n components meets, the full set does not.  Γ is ∂Δ^{n-1}."""
    if n < 2:
        raise ValueError(f"gordon family needs n >= 2, got {n}")
    labels = [str(i) for i in range(1, n + 1)]
    sets = [s for k in range(1, n) for s in combinations(range(n), k)]
    return simplicial_model(labels, sets, ambient_dim=n, name=f"gordon{n}")


def tree_family(shape: list[int] | tuple[int, ...]) -> SNCModel:
    """Tree of curves on a surface.  ``shape[i]`` is the parent of node i; the
    root is the (unique) node that is its own parent, or has parent -1."""
    n = len(shape)
    if n == 0:
        raise ValueError("tree shape must be nonempty")
    roots = [i for i, p in enumerate(shape) if p == i or p == -1]
    if len(roots) != 1:
        raise ValueError(f"tree shape needs exactly one root, found {len(roots)}")
    for i, p in enumerate(shape):
        if not (p == -1 or 0 <= p < n):
            raise ValueError(f"node {i} has parent {p} outside 0..{n - 1}")
    for i in range(n):
        seen = set()
        v = i
        while v not in roots:
            if v in seen:
                raise ValueError(f"tree shape has a cycle through node {v}")
            seen.add(v)
            v = shape[v]
    labels = [str(i) for i in range(n)]
    edges = [(min(i, p), max(i, p)) for i, p in enumerate(shape) if i not in roots]
    return simplicial_model(labels, edges, ambient_dim=2, declared_rational=True, name=f"tree{n}")


def cone_family(base: DualComplex, *, ambient_dim: int | None = None, apex: str = "apex") -> SNCModel:
    """Model whose dual complex is the cone over the simplicial complex ``base``."""
    if not base.is_simplicial():
        raise ValueError("cone_family needs a simplicial base")
    labels = list(base.vertex_labels)
    while apex in labels:
        apex += "'"
    labels.append(apex)
    a = len(labels) - 1
    sets = []
    for s in base.simplices():
        sets.append(s)
        sets.append(s + (a,))
    dim = base.dim + 1
    return simplicial_model(labels, sets, ambient_dim=ambient_dim or dim + 1, name="cone")


def random_snc_model(n_components: int = 4, max_depth: int = 2, density: float = 0.5, seed: int = 0,
                     *, multi_piece: bool = False, ambient_dim: int | None = None) -> SNCModel:
    """Random downward-closed model.  An index set is offered only when all of
    its facets are present, then kept with probability ``density``.  With
    ``multi_piece`` a stratum may get two pieces, parents chosen so the double
    drop links stay consistent."""
    if n_components < 1 or max_depth < 0 or not 0 <= density <= 1:
        raise ValueError("need n_components >= 1, max_depth >= 0, 0 <= density <= 1")
    rng = random.Random(seed)
    labels = [str(i) for i in range(n_components)]
    # index set -> list of (piece name, {dropped index: parent name})
    pieces: dict[tuple[int, ...], list[tuple[str, dict[int, str]]]] = {
        (i,): [(labels[i], {})] for i in range(n_components)}
    parent_of: dict[str, dict[int, str]] = {labels[i]: {} for i in range(n_components)}
    for size in range(2, max_depth + 2):
        for s in combinations(range(n_components), size):
            facets = [s[:j] + s[j + 1:] for j in range(size)]
            if not all(f in pieces for f in facets) or rng.random() >= density:
                continue
            count = 2 if multi_piece and rng.random() < 0.3 else 1
            base = simplex_name([labels[i] for i in s])
            made = []
            for j in range(count):
                choice = _consistent_parents(s, pieces, parent_of, rng)
                if choice is None:
                    break
                name = base if count == 1 else f"{base}#{j}"
                made.append((name, choice))
                parent_of[name] = choice
            if made:
                pieces[s] = made
    strata = {}
    for s, plist in pieces.items():
        strata[tuple(labels[i] for i in s)] = [
            (name, {labels[i]: p for i, p in faces.items()}) for name, faces in plist]
    return make_model(labels, strata, ambient_dim=ambient_dim or max(max_depth + 1, 2),
                      name=f"random-{n_components}-{max_depth}-{seed}")


def _consistent_parents(s, pieces, parent_of, rng):
    options = []
    for j, i in enumerate(s):
        names = [name for name, _ in pieces[s[:j] + s[j + 1:]]]
        rng.shuffle(names)
        options.append(names)
    if len(s) == 2:
        return {s[0]: options[0][0], s[1]: options[1][0]}
    for combo in product(*options):
        choice = dict(zip(s, combo))
        ok = True
        for a, b in combinations(s, 2):
            if parent_of[choice[a]].get(b) != parent_of[choice[b]].get(a):
                ok = False
                break
        if ok:
            return choice
    return None


def random_cover(seed: int = 0, *, n_components: int | None = None, stars: int | None = None) -> TriangulatedCover:
    """Random valid cover: Γ is a random simplicial model K, T is the
    barycentric subdivision of K with Z_i the dual block of vertex i (the
    cells of K containing i), then a few random stellar subdivisions of T."""
    rng = random.Random(seed)
    n = n_components or rng.randint(2, 6)
    model = random_snc_model(n, rng.randint(1, 2), 0.6, rng.randrange(10 ** 6))
    K = build_dual_complex(model)
    T, keys = _barycentric(K)
    members = []
    for i in range(K.n_vertices):
        members.append(frozenset(v for v, key in enumerate(keys) if i in K.cell(key).vertices))
    cover = TriangulatedCover(T, K.vertex_labels, tuple(members))
    for _ in range(rng.randint(1, 6) if stars is None else stars):
        keys = list(cover.triangulation.keys())
        cover = cover.star(keys[rng.randrange(len(keys))])
    return cover


_CDV = ("odp", "cA2_pair", "cA3_chain", "cD4_triangle")


def bundled_model_names() -> tuple[str, ...]:
    return _CDV


def load_bundled(name: str) -> SNCModel:
    text = resources.files("snc_dual").joinpath("models", f"{name}.json").read_text(encoding="utf-8")
    return load_model(text)


def bundled_cdv_models() -> list[SNCModel]:
    """Curated compound Du Val resolution models.  The intersection data are
    inputs, not derived; each is flagged rational and hypersurface."""
    return [load_bundled(name) for name in _CDV]


def generate(spec: FamilySpec) -> SNCModel:
    if spec.name == "gordon":
        return gordon_family(spec.n if spec.n is not None else 3)
    if spec.name == "tree":
        return tree_family(spec.shape or (0,))
    if spec.name == "random":
        return random_snc_model(spec.n_components, spec.max_depth, spec.density, spec.seed,
                                multi_piece=spec.multi_piece)
    raise ValueError(f"unknown family {spec.name!r}")
