"""Combinatorial intersection models of simple-normal-crossings divisors.

A model records the components Z_1..Z_N of a divisor, the irreducible pieces
of every nonempty intersection, and for each piece the unique piece one level
up that contains it once a component is dropped (its *face links*).

Documents are UTF-8 JSON::

    {"ambient_dim": 3,
     "components": ["A", "B"],
     "strata": [{"indices": ["A", "B"],
                 "pieces": [{"name": "AB", "faces": {"A": "B", "B": "A"}}]}],
     "flags": {"declared_rational": false, "declared_hypersurface": false}}

The ``faces`` map sends the *dropped* component to the parent piece, so the
piece of {A, B} links to the piece of {B} under key "A".  Singleton strata may
be omitted; they default to one piece named after the component.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

__all__ = [
    "ModelError",
    "Violation",
    "Piece",
    "SNCModel",
    "simplex_name",
    "make_model",
    "simplicial_model",
    "load_model",
    "read_model",
    "dumps_model",
    "model_to_document",
    "model_digest",
    "validate",
    "is_simplicial_case",
    "stratum_count_bound",
]

_TOP_KEYS = {"ambient_dim", "components", "strata", "flags", "name", "description"}
_FLAG_KEYS = {"declared_rational", "declared_hypersurface"}


@dataclass(frozen=True)
class Violation:
    code: str
    names: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.message}"


class ModelError(ValueError):
    """Raised when a document cannot be turned into a valid model."""

    def __init__(self, message: str, violations: Iterable[Violation] = ()):
        super().__init__(message)
        self.violations = list(violations)


@dataclass(frozen=True)
class Piece:
    name: str
    indices: tuple[int, ...]
    # (dropped component index, parent piece name), sorted by index
    faces: tuple[tuple[int, str], ...] = ()

    @property
    def depth(self) -> int:
        return len(self.indices) - 1

    def parent(self, dropped: int) -> str | None:
        for i, name in self.faces:
            if i == dropped:
                return name
        return None


def _piece_order(p: Piece) -> tuple[int, tuple[int, ...]]:
    return (len(p.indices), p.indices)


@dataclass(frozen=True)
class SNCModel:
    """Immutable intersection model; construct through :func:`load_model` or
    :func:`make_model` to get validation."""

    components: tuple[str, ...]
    pieces: tuple[Piece, ...]
    ambient_dim: int | None = None
    declared_rational: bool = False
    declared_hypersurface: bool = False
    name: str | None = None
    description: str | None = None
    _by_name: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        # stable sort: document order is kept inside a stratum
        ordered = tuple(sorted(self.pieces, key=_piece_order))
        object.__setattr__(self, "pieces", ordered)
        object.__setattr__(self, "_by_name", {p.name: p for p in ordered})

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def strata(self) -> dict[tuple[int, ...], tuple[Piece, ...]]:
        out: dict[tuple[int, ...], list[Piece]] = defaultdict(list)
        for p in self.pieces:
            out[p.indices].append(p)
        return {k: tuple(v) for k, v in out.items()}

    @property
    def max_depth(self) -> int:
        return max((p.depth for p in self.pieces), default=-1)

    def piece(self, name: str) -> Piece:
        return self._by_name[name]

    def pieces_at_depth(self, k: int) -> tuple[Piece, ...]:
        return tuple(p for p in self.pieces if p.depth == k)

    def labels(self, indices: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.components[i] for i in indices)


def simplex_name(labels: Sequence[str]) -> str:
    """Canonical piece/cell name for a simplex with the given vertex labels."""
    if len(labels) == 1:
        return labels[0]
    return "{" + ",".join(labels) + "}"


# -- construction -----------------------------------------------------------


def make_model(
    components: Sequence[str],
    strata: Mapping[Sequence[str], Sequence[tuple[str, Mapping[str, str]]]],
    *,
    ambient_dim: int | None = None,
    declared_rational: bool = False,
    declared_hypersurface: bool = False,
    name: str | None = None,
    description: str | None = None,
    check: bool = True,
) -> SNCModel:
    """Build a model from label-keyed strata ``{(labels...): [(piece, faces)]}``.

    ``faces`` maps dropped component label to parent piece name.  Missing
    singleton strata are filled in.
    """
    index = {c: i for i, c in enumerate(components)}
    if len(index) != len(components):
        dup = [c for c, n in Counter(components).items() if n > 1]
        raise ModelError("duplicate component", [
            Violation("duplicate-component", tuple(dup), f"duplicate components {dup}")])
    pieces: list[Piece] = []
    seen_singletons: set[int] = set()
    for labels, plist in strata.items():
        try:
            idx = tuple(sorted(index[c] for c in labels))
        except KeyError as exc:
            raise ModelError(f"unknown component {exc.args[0]!r}", [
                Violation("unknown-component", (str(exc.args[0]),),
                          f"stratum {list(labels)} names unknown component {exc.args[0]!r}")]) from None
        if len(set(idx)) != len(idx):
            raise ModelError(f"repeated component in stratum {list(labels)}", [
                Violation("schema", tuple(labels), f"stratum {list(labels)} repeats a component")])
        if len(idx) == 1:
            seen_singletons.add(idx[0])
        for pname, faces in plist:
            links = []
            for dropped, parent in faces.items():
                if dropped not in index:
                    raise ModelError(f"piece {pname!r}: unknown component {dropped!r}", [
                        Violation("unknown-component", (pname, dropped),
                                  f"piece {pname!r} drops unknown component {dropped!r}")])
                links.append((index[dropped], parent))
            pieces.append(Piece(pname, idx, tuple(sorted(links))))
    for i, c in enumerate(components):
        if i not in seen_singletons:
            pieces.append(Piece(c, (i,), ()))
    model = SNCModel(
        components=tuple(components),
        pieces=tuple(pieces),
        ambient_dim=ambient_dim,
        declared_rational=declared_rational,
        declared_hypersurface=declared_hypersurface,
        name=name,
        description=description,
    )
    if check:
        problems = validate(model)
        if problems:
            raise ModelError(f"invalid model: {problems[0]}", problems)
    return model


def simplicial_model(
    components: Sequence[str],
    index_sets: Iterable[Iterable[int]],
    **kwargs: Any,
) -> SNCModel:
    """Model with one piece per given index set (closed downward), named by
    :func:`simplex_name`."""
    closed: set[tuple[int, ...]] = {(i,) for i in range(len(components))}
    for s in index_sets:
        s = tuple(sorted(set(s)))
        for k in range(1, len(s) + 1):
            closed.update(combinations(s, k))
    strata = {}
    for s in sorted(closed, key=lambda t: (len(t), t)):
        labels = tuple(components[i] for i in s)
        faces = {}
        if len(s) > 1:
            for j, i in enumerate(s):
                faces[components[i]] = simplex_name(labels[:j] + labels[j + 1:])
        strata[labels] = [(simplex_name(labels), faces)]
    return make_model(components, strata, **kwargs)


# -- validation -------------------------------------------------------------


def validate(model: SNCModel) -> list[Violation]:
    """All invariant violations of ``model``; empty iff the model is valid."""
    out: list[Violation] = []
    n = model.n_components

    counts = Counter(p.name for p in model.pieces)
    for pname, k in counts.items():
        if k > 1:
            out.append(Violation("duplicate-piece", (pname,), f"piece name {pname!r} used {k} times"))

    strata = model.strata
    for i, c in enumerate(model.components):
        k = len(strata.get((i,), ()))
        if k != 1:
            out.append(Violation("singleton-pieces", (c,),
                                 f"component {c!r} must have exactly one piece, found {k}"))

    for p in model.pieces:
        if not p.indices or any(not 0 <= i < n for i in p.indices) or len(set(p.indices)) != len(p.indices):
            out.append(Violation("schema", (p.name,), f"piece {p.name!r} has bad indices {p.indices}"))
            continue
        if model.ambient_dim is not None and p.depth > model.ambient_dim - 1:
            out.append(Violation(
                "depth-exceeded", (p.name,),
                f"piece {p.name!r} has depth {p.depth} > ambient_dim - 1 = {model.ambient_dim - 1}"))

    by_name = {}
    for p in model.pieces:
        by_name.setdefault(p.name, p)

    def label(i: int) -> str:
        return model.components[i] if 0 <= i < n else str(i)

    resolved: dict[str, dict[int, Piece]] = {}
    for p in model.pieces:
        if p.depth == 0:
            if p.faces:
                out.append(Violation("extra-link", (p.name,), f"vertex piece {p.name!r} must not have face links"))
            continue
        links: dict[int, Piece] = {}
        dropped = [i for i, _ in p.faces]
        for i, k in Counter(dropped).items():
            if k > 1:
                out.append(Violation("extra-link", (p.name, label(i)),
                                     f"piece {p.name!r} links component {label(i)!r} {k} times"))
        for i in p.indices:
            if i not in dropped:
                out.append(Violation("missing-link", (p.name, label(i)),
                                     f"piece {p.name!r} has no face link dropping {label(i)!r}"))
        for i, parent in p.faces:
            if i not in p.indices:
                out.append(Violation("extra-link", (p.name, label(i)),
                                     f"piece {p.name!r} drops {label(i)!r}, which is not one of its components"))
                continue
            target = by_name.get(parent)
            if target is None:
                out.append(Violation("dangling-link", (p.name, parent),
                                     f"piece {p.name!r} links to nonexistent piece {parent!r}"))
                continue
            expected = tuple(j for j in p.indices if j != i)
            if target.indices != expected:
                out.append(Violation(
                    "wrong-parent-stratum", (p.name, parent),
                    f"piece {p.name!r} dropping {label(i)!r} must link into stratum "
                    f"{[label(j) for j in expected]}, but {parent!r} lies in {[label(j) for j in target.indices]}"))
                continue
            links[i] = target
        resolved[p.name] = links

    for p in model.pieces:
        if p.depth < 2 or p.name not in resolved:
            continue
        links = resolved[p.name]
        for s, t in combinations(p.indices, 2):
            if s not in links or t not in links:
                continue
            a = resolved.get(links[s].name, {}).get(t)
            b = resolved.get(links[t].name, {}).get(s)
            if a is None or b is None:
                continue
            if a.name != b.name:
                out.append(Violation(
                    "inconsistent-links", (p.name, label(s), label(t)),
                    f"piece {p.name!r}: dropping {label(s)!r} then {label(t)!r} reaches {a.name!r}, "
                    f"the other order reaches {b.name!r}"))
    return out


def is_simplicial_case(model: SNCModel) -> bool:
    """True iff every intersection is irreducible (at most one piece per index set)."""
    return all(len(ps) <= 1 for ps in model.strata.values())


# -- documents --------------------------------------------------------------


def _schema(msg: str, *names: str) -> ModelError:
    return ModelError(msg, [Violation("schema", tuple(names), msg)])


def _parse(doc: Any) -> SNCModel:
    if not isinstance(doc, Mapping):
        raise _schema("document must be a JSON object")
    extra = set(doc) - _TOP_KEYS
    if extra:
        raise _schema(f"unknown fields {sorted(extra)}", *sorted(extra))
    if "components" not in doc:
        raise _schema("missing field 'components'", "components")
    comps = doc["components"]
    if not isinstance(comps, list) or not comps or not all(isinstance(c, str) and c for c in comps):
        raise _schema("'components' must be a nonempty list of nonempty strings", "components")
    ambient = doc.get("ambient_dim")
    if ambient is not None and (not isinstance(ambient, int) or isinstance(ambient, bool) or ambient < 1):
        raise _schema("'ambient_dim' must be a positive integer", "ambient_dim")
    flags = doc.get("flags", {})
    if not isinstance(flags, Mapping):
        raise _schema("'flags' must be an object", "flags")
    if set(flags) - _FLAG_KEYS:
        raise _schema(f"unknown flags {sorted(set(flags) - _FLAG_KEYS)}", *sorted(set(flags) - _FLAG_KEYS))
    for k, v in flags.items():
        if not isinstance(v, bool):
            raise _schema(f"flag {k!r} must be a boolean", k)
    for key in ("name", "description"):
        if key in doc and not isinstance(doc[key], str):
            raise _schema(f"{key!r} must be a string", key)

    strata_doc = doc.get("strata", [])
    if not isinstance(strata_doc, list):
        raise _schema("'strata' must be a list", "strata")
    strata: dict[tuple[str, ...], list[tuple[str, dict[str, str]]]] = {}
    seen_sets = set()
    for entry in strata_doc:
        if not isinstance(entry, Mapping) or set(entry) != {"indices", "pieces"}:
            raise _schema("each stratum needs exactly the fields 'indices' and 'pieces'")
        labels = entry["indices"]
        if not isinstance(labels, list) or not labels or not all(isinstance(c, str) for c in labels):
            raise _schema("'indices' must be a nonempty list of component names")
        key = frozenset(labels)
        if len(key) != len(labels):
            raise _schema(f"stratum {labels} repeats a component", *labels)
        if key in seen_sets:
            raise _schema(f"stratum {sorted(labels)} listed twice", *labels)
        seen_sets.add(key)
        plist = entry["pieces"]
        if not isinstance(plist, list) or not plist:
            raise _schema(f"stratum {labels}: 'pieces' must be a nonempty list", *labels)
        parsed = []
        for piece in plist:
            if not isinstance(piece, Mapping) or "name" not in piece or set(piece) - {"name", "faces"}:
                raise _schema(f"stratum {labels}: pieces need 'name' and optional 'faces' only", *labels)
            pname = piece["name"]
            faces = piece.get("faces", {})
            if not isinstance(pname, str) or not pname:
                raise _schema(f"stratum {labels}: piece name must be a nonempty string", *labels)
            if not isinstance(faces, Mapping) or not all(
                    isinstance(k, str) and isinstance(v, str) for k, v in faces.items()):
                raise _schema(f"piece {pname!r}: 'faces' must map component names to piece names", pname)
            parsed.append((pname, dict(faces)))
        strata[tuple(labels)] = parsed

    return make_model(
        comps,
        strata,
        ambient_dim=ambient,
        declared_rational=flags.get("declared_rational", False),
        declared_hypersurface=flags.get("declared_hypersurface", False),
        name=doc.get("name"),
        description=doc.get("description"),
        check=True,
    )


def load_model(document: str | bytes | Mapping[str, Any]) -> SNCModel:
    """Parse and validate a model document (JSON text or an already decoded
    mapping).  Raises :class:`ModelError` carrying the violation list."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise _schema(f"not valid JSON: {exc}") from None
    return _parse(document)


def read_model(path: str | Path) -> SNCModel:
    model = load_model(Path(path).read_text(encoding="utf-8"))
    if model.name is None:
        model = _with_name(model, Path(path).stem)
    return model


def _with_name(model: SNCModel, name: str) -> SNCModel:
    return SNCModel(model.components, model.pieces, model.ambient_dim, model.declared_rational,
                    model.declared_hypersurface, name, model.description)


def model_to_document(model: SNCModel) -> dict[str, Any]:
    comps = model.components
    strata = []
    for idx, plist in sorted(model.strata.items(), key=lambda kv: (len(kv[0]), kv[0])):
        strata.append({
            "indices": [comps[i] for i in idx],
            "pieces": [{"name": p.name, "faces": {comps[i]: parent for i, parent in p.faces}} for p in plist],
        })
    doc: dict[str, Any] = {
        "components": list(comps),
        "strata": strata,
        "flags": {
            "declared_rational": model.declared_rational,
            "declared_hypersurface": model.declared_hypersurface,
        },
    }
    if model.ambient_dim is not None:
        doc["ambient_dim"] = model.ambient_dim
    if model.name is not None:
        doc["name"] = model.name
    if model.description is not None:
        doc["description"] = model.description
    return doc


def dumps_model(model: SNCModel) -> str:
    """Canonical serialization (sorted keys, strata by depth then index order)."""
    return json.dumps(model_to_document(model), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def model_digest(model: SNCModel) -> str:
    return hashlib.sha256(dumps_model(model).encode("utf-8")).hexdigest()


def stratum_count_bound(model: SNCModel, k: int) -> int:
    return comb(model.n_components, k + 1)
