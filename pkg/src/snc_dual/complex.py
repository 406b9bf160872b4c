"""Dual complexes as Δ-complexes, and the subdivision moves acting on them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .model import Piece, SNCModel, make_model, simplex_name

__all__ = [
    "Cell",
    "DualComplex",
    "build_dual_complex",
    "f_vector",
    "euler_characteristic",
    "barycentric_subdivision",
    "star_subdivision",
    "complex_to_model",
    "connected_components",
    "count_components",
    "subcomplex",
]

CellKey = tuple[int, int]


@dataclass(frozen=True)
class Cell:
    vertices: tuple[int, ...]
    name: str
    # faces[s] is the index (one dimension down) of the face opposite vertices[s]
    faces: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class DualComplex:
    """Cells per dimension, each with an ordered vertex tuple and explicit
    face references.  ``cells[0][i]`` is always the vertex ``(i,)``."""

    cells: tuple[tuple[Cell, ...], ...]
    vertex_labels: tuple[str, ...]

    def __post_init__(self):
        if self.cells and len(self.cells[0]) != len(self.vertex_labels):
            raise ValueError("vertex cells and vertex labels disagree")
        for i, c in enumerate(self.cells[0] if self.cells else ()):
            if c.vertices != (i,):
                raise ValueError(f"vertex cell {i} has vertex tuple {c.vertices}")
        for k in range(1, len(self.cells)):
            below = self.cells[k - 1]
            for c in self.cells[k]:
                if len(c.vertices) != k + 1 or len(c.faces) != k + 1:
                    raise ValueError(f"cell {c.name!r} is malformed for dimension {k}")
                for s, f in enumerate(c.faces):
                    if not 0 <= f < len(below):
                        raise ValueError(f"cell {c.name!r} has face reference {f} out of range")
                    if below[f].vertices != c.vertices[:s] + c.vertices[s + 1:]:
                        raise ValueError(f"cell {c.name!r}: face {s} has the wrong vertices")

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_labels)

    def cell(self, key: CellKey) -> Cell:
        return self.cells[key[0]][key[1]]

    def keys(self) -> Iterable[CellKey]:
        for k, layer in enumerate(self.cells):
            for i in range(len(layer)):
                yield (k, i)

    def labels_of(self, cell: Cell) -> tuple[str, ...]:
        return tuple(self.vertex_labels[v] for v in cell.vertices)

    def is_simplicial(self) -> bool:
        seen = set()
        for layer in self.cells:
            for c in layer:
                if c.vertices in seen:
                    return False
                seen.add(c.vertices)
        return True

    def simplices(self) -> list[tuple[int, ...]]:
        return [c.vertices for layer in self.cells for c in layer]

    def find_cell(self, spec: Hashable) -> CellKey:
        """Resolve a cell name, a (dim, index) key, or a sequence of vertex
        labels (also written ``"{A,B}"`` or ``"A,B"``)."""
        if isinstance(spec, tuple) and len(spec) == 2 and all(isinstance(x, int) for x in spec):
            k, i = spec
            if 0 <= k < len(self.cells) and 0 <= i < len(self.cells[k]):
                return (k, i)
            raise KeyError(f"no cell {spec}")
        if isinstance(spec, str):
            for key in self.keys():
                if self.cell(key).name == spec:
                    return key
            labels = spec.strip()
            if labels.startswith("{") and labels.endswith("}"):
                labels = labels[1:-1]
            spec = [s.strip() for s in labels.split(",")] if labels else []
        if not isinstance(spec, str):
            wanted = list(spec)
            index = {lab: i for i, lab in enumerate(self.vertex_labels)}
            if wanted and all(lab in index for lab in wanted):
                verts = tuple(sorted(index[lab] for lab in wanted))
                hits = [key for key in self.keys() if self.cell(key).vertices == verts] \
                    if len(verts) - 1 < len(self.cells) else []
                if len(hits) == 1:
                    return hits[0]
                if len(hits) > 1:
                    raise KeyError(f"vertex set {wanted} names {len(hits)} parallel cells; use a cell name")
        raise KeyError(f"unknown cell {spec!r}")

    @classmethod
    def from_simplices(cls, simplices: Iterable[Sequence[str]],
                       labels: Sequence[str] | None = None) -> "DualComplex":
        """Simplicial complex generated (downward closure) by the given simplices.

        Vertex order follows ``labels`` when given, else first appearance.
        """
        simplices = [tuple(s) for s in simplices]
        if labels is None:
            labels = list(dict.fromkeys(v for s in simplices for v in s))
        index = {lab: i for i, lab in enumerate(labels)}
        return _simplicial(labels, [tuple(index[v] for v in s) for s in simplices], keep_all=True)


def _simplicial(labels: Sequence[str], generators: Iterable[Iterable[int]], *,
                keep_all: bool = False) -> DualComplex:
    """Build a simplicial complex from index sets over ``labels``.

    Unused vertices are dropped (and indices renumbered, preserving order)
    unless ``keep_all``.
    """
    closed: set[tuple[int, ...]] = set()
    for g in generators:
        g = tuple(sorted(set(g)))
        if not g or g in closed:
            continue
        for k in range(1, len(g) + 1):
            closed.update(combinations(g, k))
    if keep_all:
        closed.update((i,) for i in range(len(labels)))
    used = sorted({v for s in closed if len(s) == 1 for v in s})
    renum = {v: i for i, v in enumerate(used)}
    new_labels = tuple(labels[v] for v in used)
    by_dim: list[list[tuple[int, ...]]] = []
    for s in closed:
        t = tuple(renum[v] for v in s)
        while len(by_dim) < len(t):
            by_dim.append([])
        by_dim[len(t) - 1].append(t)
    cells: list[tuple[Cell, ...]] = []
    position: dict[tuple[int, ...], int] = {}
    for k, layer in enumerate(by_dim):
        layer.sort()
        row = []
        for i, t in enumerate(layer):
            position[t] = i
            faces = tuple(position[t[:s] + t[s + 1:]] for s in range(len(t))) if k else ()
            row.append(Cell(t, simplex_name([new_labels[v] for v in t]), faces))
        cells.append(tuple(row))
    return DualComplex(tuple(cells), new_labels)


def build_dual_complex(model: SNCModel) -> DualComplex:
    """One k-cell per depth-k piece, faces following the model's face links."""
    layers: list[list[Piece]] = []
    for p in model.pieces:
        while len(layers) <= p.depth:
            layers.append([])
        layers[p.depth].append(p)
    position = {}
    cells = []
    for k, layer in enumerate(layers):
        row = []
        for i, p in enumerate(layer):
            position[p.name] = i
            faces = tuple(position[p.parent(v)] for v in p.indices) if k else ()
            row.append(Cell(p.indices, p.name, faces))
        cells.append(tuple(row))
    return DualComplex(tuple(cells), model.components)


def f_vector(dual: DualComplex) -> tuple[int, ...]:
    return tuple(len(layer) for layer in dual.cells)


def euler_characteristic(dual: DualComplex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(f_vector(dual)))


def _barycentric(dual: DualComplex) -> tuple[DualComplex, list[CellKey]]:
    offsets, total = [], 0
    for layer in dual.cells:
        offsets.append(total)
        total += len(layer)
    keys = list(dual.keys())
    vertex_counts: dict[tuple[int, ...], int] = {}
    for k, i in keys:
        v = dual.cells[k][i].vertices
        vertex_counts[v] = vertex_counts.get(v, 0) + 1
    labels = []
    for k, i in keys:
        c = dual.cells[k][i]
        if k == 0:
            labels.append(dual.vertex_labels[i])
        elif vertex_counts[c.vertices] == 1:
            labels.append("b" + simplex_name(dual.labels_of(c)))
        else:
            labels.append("b[" + c.name + "]")

    cofaces = {key: 0 for key in keys}
    for k in range(1, len(dual.cells)):
        for c in dual.cells[k]:
            for f in c.faces:
                cofaces[(k - 1, f)] += 1

    flags = []

    def descend(k: int, i: int, chain: list[int]):
        chain.append(offsets[k] + i)
        if k == 0:
            flags.append(tuple(chain))
        else:
            for f in set(dual.cells[k][i].faces):
                descend(k - 1, f, chain)
        chain.pop()

    for k, i in keys:
        if cofaces[(k, i)] == 0:
            descend(k, i, [])
    sub = _simplicial(labels, flags)
    # every cell is maximal or lies under one, so no vertex is dropped
    return sub, keys


def barycentric_subdivision(dual: DualComplex) -> DualComplex:
    """Vertices are the cells of ``dual``; simplices are chains under the face
    relation.  Vertex cells keep their labels, a cell on vertex set {A,B}
    becomes vertex ``b{A,B}``."""
    return _barycentric(dual)[0]


def _fresh_label(base: str, taken: set[str]) -> str:
    label = base
    while label in taken:
        label += "'"
    return label


def star_subdivision(dual: DualComplex, cell: Hashable) -> DualComplex:
    """Stellar subdivision at ``cell``: every simplex containing it is replaced
    by the cone from a new vertex ``*{labels}`` over the part of its closure
    not containing the cell.  The complex must be simplicial."""
    if not dual.is_simplicial():
        raise ValueError("star subdivision needs a simplicial complex; take the barycentric subdivision first")
    k, i = dual.find_cell(cell)
    sigma = dual.cells[k][i].vertices
    sset = set(sigma)
    new = dual.n_vertices
    labels = list(dual.vertex_labels)
    labels.append(_fresh_label("*" + simplex_name([labels[v] for v in sigma]), set(labels)))

    contains: set[tuple[int, ...]] = set()
    for layer in dual.cells[k:]:
        for c in layer:
            if sset.issubset(c.vertices):
                contains.add(c.vertices)
    generators: list[tuple[int, ...]] = []
    for layer in dual.cells:
        for c in layer:
            if c.vertices not in contains:
                generators.append(c.vertices)
    for tau in contains:
        rest = tuple(v for v in tau if v not in sset)
        for x in sigma:
            generators.append(tuple(v for v in sigma if v != x) + rest + (new,))
    return _simplicial(labels, generators)


def connected_components(dual: DualComplex) -> list[DualComplex]:
    """Connected components, each as a standalone complex (vertex order kept)."""
    parent = list(range(dual.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if len(dual.cells) > 1:
        for c in dual.cells[1]:
            a, b = find(c.vertices[0]), find(c.vertices[1])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(dual.n_vertices):
        groups.setdefault(find(v), []).append(v)
    return [subcomplex(dual, set(vs)) for vs in groups.values()]


def subcomplex(dual: DualComplex, vertices: set[int]) -> DualComplex:
    """Cells of ``dual`` whose vertices all lie in ``vertices`` (names kept)."""
    keep = sorted(vertices)
    renum = {v: i for i, v in enumerate(keep)}
    cells = []
    position: list[dict[int, int]] = []
    for k, layer in enumerate(dual.cells):
        row, pos = [], {}
        for i, c in enumerate(layer):
            if all(v in renum for v in c.vertices):
                pos[i] = len(row)
                faces = tuple(position[k - 1][f] for f in c.faces) if k else ()
                row.append(Cell(tuple(renum[v] for v in c.vertices), c.name, faces))
        if not row:
            break
        cells.append(tuple(row))
        position.append(pos)
    return DualComplex(tuple(cells), tuple(dual.vertex_labels[v] for v in keep))


def count_components(dual: DualComplex) -> int:
    seen = [False] * dual.n_vertices
    adj: list[list[int]] = [[] for _ in range(dual.n_vertices)]
    if len(dual.cells) > 1:
        for c in dual.cells[1]:
            a, b = c.vertices
            adj[a].append(b)
            adj[b].append(a)
    count = 0
    for s in range(dual.n_vertices):
        if seen[s]:
            continue
        count += 1
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return count


def complex_to_model(dual: DualComplex, *, ambient_dim: int | None = None, **flags) -> SNCModel:
    """Encode a complex in the model document format: components are the
    vertices, one piece per cell.  ``ambient_dim`` defaults to ``dim + 1``."""
    labels = dual.vertex_labels
    strata: dict[tuple[str, ...], list] = {}
    for k, layer in enumerate(dual.cells):
        for c in layer:
            faces = {}
            for s, f in enumerate(c.faces):
                faces[labels[c.vertices[s]]] = dual.cells[k - 1][f].name
            strata.setdefault(tuple(labels[v] for v in c.vertices), []).append((c.name, faces))
    if ambient_dim is None:
        ambient_dim = max(dual.dim + 1, 1)
    return make_model(labels, strata, ambient_dim=ambient_dim, **flags)
