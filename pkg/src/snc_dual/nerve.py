"""The nerve map ψ from a triangulated model of Z to its dual complex.

A :class:`TriangulatedCover` is a finite simplicial complex T together with a
vertex subset per component; component Z_i is the subcomplex of T induced on
its vertices.  After one barycentric subdivision Σ of T, every vertex v of Σ
has a depth set D(v) = {i : v ∈ Z_i}, and ψ sends v to the barycenter of the
cell Δ_{D(v)}, a vertex of the barycentric subdivision of Γ.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .complex import DualComplex, _barycentric, build_dual_complex, star_subdivision
from .model import ModelError, SNCModel, Violation, load_model, simplicial_model

__all__ = [
    "CoverError",
    "NerveMapError",
    "TriangulatedCover",
    "NerveMap",
    "load_cover",
    "read_cover",
    "cover_to_document",
    "validate_cover",
    "build_nerve_map",
    "check_surjective",
    "fiber_components",
    "sample_points",
]


class CoverError(ValueError):
    def __init__(self, message: str, violations: Iterable[Violation] = ()):
        super().__init__(message)
        self.violations = list(violations)


class NerveMapError(ValueError):
    def __init__(self, message: str, simplex: tuple[str, ...] = ()):
        super().__init__(message)
        self.simplex = simplex


@dataclass(frozen=True)
class TriangulatedCover:
    triangulation: DualComplex
    components: tuple[str, ...]
    # vertex indices of ``triangulation`` belonging to each component
    membership: tuple[frozenset[int], ...]

    @classmethod
    def from_labels(cls, simplices: Iterable[Sequence[str]], membership: Mapping[str, Iterable[str]],
                    vertices: Sequence[str] | None = None) -> "TriangulatedCover":
        T = DualComplex.from_simplices(simplices, vertices)
        index = {lab: i for i, lab in enumerate(T.vertex_labels)}
        comps = tuple(membership)
        sets = []
        for c in comps:
            try:
                sets.append(frozenset(index[v] for v in membership[c]))
            except KeyError as exc:
                raise CoverError(f"component {c!r} lists unknown vertex {exc.args[0]!r}", [
                    Violation("unknown-vertex", (c, str(exc.args[0])), f"unknown vertex {exc.args[0]!r}")]) from None
        return cls(T, comps, tuple(sets))

    def depth_set(self, vertices: Iterable[int]) -> tuple[int, ...]:
        vs = set(vertices)
        return tuple(i for i, m in enumerate(self.membership) if vs <= m)

    def induced(self, indices: Sequence[int]) -> list[tuple[int, ...]]:
        """Simplices of Z_{indices} (intersection of the chosen subcomplexes)."""
        common = frozenset.intersection(*(self.membership[i] for i in indices))
        return [s for s in self.triangulation.simplices() if common.issuperset(s)]

    def nerve(self) -> list[tuple[int, ...]]:
        """Index sets with nonempty intersection, in (size, lex) order."""
        out = []
        n = len(self.components)
        frontier = [(i,) for i in range(n) if self.membership[i]]
        while frontier:
            out.extend(frontier)
            nxt = set()
            for s in frontier:
                common = frozenset.intersection(*(self.membership[i] for i in s))
                for j in range(s[-1] + 1, n):
                    if common & self.membership[j]:
                        nxt.add(s + (j,))
            frontier = sorted(nxt)
        return out

    def model(self, **kwargs: Any) -> SNCModel:
        """The associated (simplicial-case) model whose dual complex is the nerve."""
        kwargs.setdefault("ambient_dim", max(len(s) for s in self.nerve()) if self.components else 1)
        return simplicial_model(self.components, self.nerve(), **kwargs)

    def subdivide(self) -> "TriangulatedCover":
        """Barycentric subdivision of T with membership carried along: the
        barycenter of s lies in Z_i iff s does."""
        sd, keys = _barycentric(self.triangulation)
        members = []
        for m in self.membership:
            members.append(frozenset(
                v for v, key in enumerate(keys) if m.issuperset(self.triangulation.cell(key).vertices)))
        return TriangulatedCover(sd, self.components, tuple(members))

    def star(self, cell) -> "TriangulatedCover":
        """Stellar subdivision of T at ``cell``; the new vertex joins Z_i iff
        the subdivided simplex lies in Z_i."""
        key = self.triangulation.find_cell(cell)
        sigma = set(self.triangulation.cell(key).vertices)
        T2 = star_subdivision(self.triangulation, key)
        old = {lab: i for i, lab in enumerate(self.triangulation.vertex_labels)}
        new_label = T2.vertex_labels[-1]
        members = []
        for m in self.membership:
            vs = set()
            for j, lab in enumerate(T2.vertex_labels):
                if lab in old and lab != new_label:
                    if old[lab] in m:
                        vs.add(j)
                elif sigma <= m:
                    vs.add(j)
            members.append(frozenset(vs))
        return TriangulatedCover(T2, self.components, tuple(members))


def _connected(simplices: list[tuple[int, ...]]) -> int:
    """Number of connected components of the complex spanned by ``simplices``."""
    verts = sorted({v for s in simplices for v in s})
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in simplices:
        for v in s[1:]:
            a, b = find(s[0]), find(v)
            if a != b:
                parent[a] = b
    return len({find(v) for v in verts})


def validate_cover(cover: TriangulatedCover, model: SNCModel | None = None) -> list[Violation]:
    """Check the cover hypotheses: every simplex of T lies in some Z_i, each
    nonempty intersection Z_I is connected (irreducible), the nerve agrees
    with ``model`` when given, and each piece Z_I with the open stars of its
    deeper intersections removed (in Σ) is nonempty and connected."""
    out: list[Violation] = []
    T = cover.triangulation
    names = cover.components
    for i, m in enumerate(cover.membership):
        if not m:
            out.append(Violation("empty-component", (names[i],), f"component {names[i]!r} has no vertices"))
    for s in T.simplices():
        if not cover.depth_set(s):
            labs = tuple(T.vertex_labels[v] for v in s)
            out.append(Violation("uncovered-simplex", labs, f"simplex {list(labs)} lies in no component"))
    nerve = cover.nerve()
    for I in nerve:
        k = _connected(cover.induced(I))
        if k != 1:
            labs = tuple(names[i] for i in I)
            out.append(Violation("reducible-intersection", labs,
                                 f"intersection of {list(labs)} has {k} connected pieces"))
    if model is not None:
        if tuple(model.components) != tuple(names):
            out.append(Violation("nerve-mismatch", (), "membership keys differ from the model's components"))
        else:
            want = sorted(model.strata, key=lambda t: (len(t), t))
            if any(len(ps) != 1 for ps in model.strata.values()):
                out.append(Violation("nerve-mismatch", (), "covers need a simplicial-case model"))
            if want != nerve:
                extra = sorted(set(nerve) - set(want))
                missing = sorted(set(want) - set(nerve))
                out.append(Violation(
                    "nerve-mismatch", (),
                    f"nerve differs from model strata (extra {[[names[i] for i in s] for s in extra]}, "
                    f"missing {[[names[i] for i in s] for s in missing]})"))
    if out:
        return out
    sigma = cover.subdivide()
    depth = {v: sigma.depth_set((v,)) for v in range(sigma.triangulation.n_vertices)}
    for I in nerve:
        core = [s for s in sigma.triangulation.simplices() if all(depth[v] == I for v in s)]
        k = _connected(core)
        if k != 1:
            labs = tuple(names[i] for i in I)
            out.append(Violation("disconnected-contraction-complex", labs,
                                 f"Z_{list(labs)} minus neighbourhoods of deeper strata has {k} components"))
    return out


# -- the map ----------------------------------------------------------------


@dataclass(frozen=True)
class NerveMap:
    source: DualComplex            # Σ
    target: DualComplex            # barycentric subdivision of Γ
    gamma: DualComplex             # Γ
    vertex_map: tuple[int, ...]    # Σ-vertex -> target vertex
    target_cells: tuple[tuple[int, ...], ...]  # target vertex -> Γ cell (component indices)
    cover: TriangulatedCover       # the cover whose triangulation is Σ
    subdivisions: int = 1

    def target_vertex(self, indices: Sequence[int]) -> int:
        return self.target_cells.index(tuple(sorted(indices)))

    def restrict(self, vertices: Iterable[int]) -> "NerveMap":
        """ψ on the subcomplex of Σ induced by ``vertices`` (same target)."""
        keep = set(vertices)
        order = sorted(keep)
        sub = [s for s in self.source.simplices() if keep.issuperset(s)]
        renum = {v: i for i, v in enumerate(order)}
        labels = [self.source.vertex_labels[v] for v in order]
        src = DualComplex.from_simplices([[labels[renum[v]] for v in s] for s in sub], labels)
        cover = TriangulatedCover(src, self.cover.components,
                                  tuple(frozenset(renum[v] for v in m if v in keep) for m in self.cover.membership))
        return NerveMap(src, self.target, self.gamma, tuple(self.vertex_map[v] for v in order),
                        self.target_cells, cover, self.subdivisions)


def _try_map(cover: TriangulatedCover, gamma: DualComplex, target: DualComplex,
             target_cells: list[tuple[int, ...]]) -> tuple[list[int], tuple[str, ...] | None]:
    lookup = {cells: v for v, cells in enumerate(target_cells)}
    vmap = []
    for v in range(cover.triangulation.n_vertices):
        D = cover.depth_set((v,))
        if D not in lookup:
            return [], (cover.triangulation.vertex_labels[v],)
        vmap.append(lookup[D])
    target_simplices = set(target.simplices())
    for s in cover.triangulation.simplices():
        image = tuple(sorted({vmap[v] for v in s}))
        if image not in target_simplices:
            return vmap, tuple(cover.triangulation.vertex_labels[v] for v in s)
    return vmap, None


def build_nerve_map(cover: TriangulatedCover, model: SNCModel | None = None) -> NerveMap:
    """Construct ψ: Σ → sd Γ and check that it extends simplicially.

    One barycentric subdivision is tried first, then a second; failure after
    both raises :class:`NerveMapError` naming the offending simplex.
    """
    problems = validate_cover(cover, model)
    if problems:
        raise CoverError(f"invalid cover: {problems[0]}", problems)
    model = model or cover.model()
    gamma = build_dual_complex(model)
    target, keys = _barycentric(gamma)
    target_cells = [gamma.cell(key).vertices for key in keys]
    sigma = cover
    bad = None
    for rounds in (1, 2):
        sigma = sigma.subdivide()
        vmap, bad = _try_map(sigma, gamma, target, target_cells)
        if bad is None:
            return NerveMap(sigma.triangulation, target, gamma, tuple(vmap), tuple(target_cells), sigma, rounds)
    raise NerveMapError(f"ψ does not extend simplicially on {list(bad)}", bad)


def check_surjective(psi: NerveMap) -> bool:
    """True iff every simplex of the target lies in the image of a source simplex."""
    images = set()
    for s in psi.source.simplices():
        images.add(tuple(sorted({psi.vertex_map[v] for v in s})))
    return all(s in images for s in psi.target.simplices())


def fiber_components(psi: NerveMap, simplex: Sequence[Sequence[int] | int],
                     coords: Sequence[Fraction | int | str]) -> int:
    """Connected components of ψ^{-1}(y) for y = Σ coords[j] · simplex[j].

    ``simplex`` lists target vertices, either as target vertex indices or as
    Γ-cells (component index tuples).  Inside a source simplex σ the
    preimage is the product of simplices Π_w t_w·Δ(σ ∩ ψ^{-1}(w)), nonempty iff
    every vertex w in the support of y is hit by σ; these convex pieces meet
    along common faces, so components are counted on that face poset.
    """
    tv = [v if isinstance(v, int) else psi.target_vertex(v) for v in simplex]
    if len(tv) != len(coords):
        raise ValueError("one coordinate per simplex vertex is required")
    t = [Fraction(c) for c in coords]
    if any(x < 0 for x in t):
        raise ValueError("barycentric coordinates must be nonnegative")
    if sum(t) != 1:
        raise ValueError(f"barycentric coordinates sum to {sum(t)}, not 1")
    if tuple(sorted(set(tv))) not in set(psi.target.simplices()):
        raise ValueError(f"{simplex} is not a simplex of the target")
    support = {w for w, x in zip(tv, t) if x > 0}

    qualifying = []
    for s in psi.source.simplices():
        if support <= {psi.vertex_map[v] for v in s}:
            qualifying.append(s)
    qset = set(qualifying)
    parent = {s: s for s in qualifying}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in qualifying:
        for j in range(len(s)):
            f = s[:j] + s[j + 1:]
            if f in qset:
                a, b = find(s), find(f)
                if a != b:
                    parent[a] = b
    return len({find(s) for s in qualifying})


def sample_points(psi: NerveMap, per_simplex: int = 16, seed: int = 0):
    """Vertices, barycenters and ``per_simplex`` random rational interior
    points of every target simplex, as ``(simplex, coords)`` pairs."""
    rng = random.Random(seed)
    for s in psi.target.simplices():
        k = len(s)
        if k == 1:
            yield s, (Fraction(1),)
            continue
        yield s, tuple(Fraction(1, k) for _ in range(k))
        for _ in range(per_simplex):
            w = [rng.randint(1, 64) for _ in range(k)]
            total = sum(w)
            yield s, tuple(Fraction(x, total) for x in w)


# -- documents --------------------------------------------------------------


def load_cover(document: str | bytes | Mapping[str, Any]) -> tuple[TriangulatedCover, SNCModel]:
    """Parse a cover document: a model document plus ``triangulation`` and
    ``membership`` fields.  The model's strata must equal the cover's nerve."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise CoverError(f"not valid JSON: {exc}") from None
    if not isinstance(document, Mapping):
        raise CoverError("document must be a JSON object")
    doc = dict(document)
    tri = doc.pop("triangulation", None)
    memb = doc.pop("membership", None)
    if not isinstance(tri, Mapping) or set(tri) != {"vertices", "simplices"}:
        raise CoverError("'triangulation' must have exactly 'vertices' and 'simplices'")
    if not isinstance(memb, Mapping):
        raise CoverError("'membership' must map components to vertex lists")
    try:
        model = load_model(doc)
    except ModelError as exc:
        raise CoverError(str(exc), exc.violations) from None
    verts = tri["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts) or len(set(verts)) != len(verts):
        raise CoverError("triangulation vertices must be distinct strings")
    simplices = tri["simplices"]
    if not isinstance(simplices, list) or not all(
            isinstance(s, list) and s and all(v in verts for v in s) for s in simplices):
        raise CoverError("triangulation simplices must be nonempty lists of known vertices")
    if set(memb) != set(model.components):
        raise CoverError("membership keys must be exactly the model's components")
    ordered = {c: memb[c] for c in model.components}
    cover = TriangulatedCover.from_labels(simplices, ordered, verts)
    problems = validate_cover(cover, model)
    if problems:
        raise CoverError(f"invalid cover: {problems[0]}", problems)
    return cover, model


def read_cover(path: str | Path) -> tuple[TriangulatedCover, SNCModel]:
    return load_cover(Path(path).read_text(encoding="utf-8"))


def cover_to_document(cover: TriangulatedCover, model: SNCModel | None = None) -> dict[str, Any]:
    from .model import model_to_document

    T = cover.triangulation
    doc = model_to_document(model or cover.model())
    maximal = _maximal(T)
    doc["triangulation"] = {
        "vertices": list(T.vertex_labels),
        "simplices": [[T.vertex_labels[v] for v in s] for s in maximal],
    }
    doc["membership"] = {c: [T.vertex_labels[v] for v in sorted(m)]
                         for c, m in zip(cover.components, cover.membership)}
    return doc


def _maximal(T: DualComplex) -> list[tuple[int, ...]]:
    faces = set()
    for layer in T.cells[1:]:
        for c in layer:
            for j in range(len(c.vertices)):
                faces.add(c.vertices[:j] + c.vertices[j + 1:])
    return [s for s in T.simplices() if s not in faces]
