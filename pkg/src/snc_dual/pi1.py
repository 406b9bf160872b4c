"""Edge-path presentations, Tietze simplification, collapses and the
contractibility verdict for 2-dimensional dual complexes.

Words are tuples of nonzero ints: letter ``g`` is generator ``g - 1`` and
``-g`` its inverse.
"""

from __future__ import annotations

import enum
import heapq
from collections import Counter, deque
from dataclasses import dataclass
from typing import Sequence

from .complex import Cell, DualComplex, count_components
from .homology import ChainComplex, HomologyGroup, homology, smith_normal_form

__all__ = [
    "DisconnectedError",
    "GroupPresentation",
    "edge_path_presentation",
    "abelianization",
    "tietze_simplify",
    "Connectivity",
    "Pi1Summary",
    "simple_connectivity",
    "simple_connectivity_verdict",
    "CollapseMove",
    "CollapseCertificate",
    "greedy_collapse",
    "replay_collapse",
    "Contractibility",
    "contractibility_verdict_dim2",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10_000

Word = tuple[int, ...]


class DisconnectedError(ValueError):
    def __init__(self, n_components: int):
        super().__init__(f"complex is disconnected ({n_components} components)")
        self.n_components = n_components


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    history: tuple[str, ...] = ()

    @property
    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def is_trivial(self) -> bool:
        return not self.generators

    def spell(self, word: Word) -> str:
        if not word:
            return "1"
        return " ".join(self.generators[abs(x) - 1] + ("" if x > 0 else "^-1") for x in word)

    def __str__(self) -> str:
        rels = ", ".join(self.spell(r) for r in self.relators)
        return f"< {', '.join(self.generators)} | {rels} >"


def edge_path_presentation(dual: DualComplex) -> GroupPresentation:
    """Generators are the edges off a BFS spanning tree (rooted at the least
    vertex label, neighbours visited by label); relators are 2-cell boundary
    words with tree edges deleted."""
    n = count_components(dual)
    if n != 1:
        raise DisconnectedError(n)
    labels = dual.vertex_labels
    edges = dual.cells[1] if dual.dim >= 1 else ()
    adj: list[list[tuple[str, int, int]]] = [[] for _ in range(dual.n_vertices)]
    for e, cell in enumerate(edges):
        a, b = cell.vertices
        adj[a].append((labels[b], e, b))
        adj[b].append((labels[a], e, a))
    for lst in adj:
        lst.sort()
    root = min(range(dual.n_vertices), key=lambda v: (labels[v], v))
    tree = set()
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for _, e, w in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.add(e)
                queue.append(w)
    letter = {}
    gens = []
    for e, cell in enumerate(edges):
        if e not in tree:
            gens.append(cell.name)
            letter[e] = len(gens)
    rels = []
    if dual.dim >= 2:
        for cell in dual.cells[2]:
            f0, f1, f2 = cell.faces
            # v0 -> v1 -> v2 -> v0 along faces f2, f0, f1^-1
            word = []
            for e, sign in ((f2, 1), (f0, 1), (f1, -1)):
                if e in letter:
                    word.append(sign * letter[e])
            rels.append(tuple(word))
    return GroupPresentation(tuple(gens), tuple(rels), ())


def abelianization(pres: GroupPresentation) -> HomologyGroup:
    """Rank and torsion of the abelianized group (exponent-sum matrix SNF)."""
    ng = len(pres.generators)
    matrix = []
    for r in pres.relators:
        row = [0] * ng
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        matrix.append(row)
    snf = smith_normal_form(matrix) if matrix and ng else None
    rank = snf.rank if snf else 0
    return HomologyGroup(ng - rank, snf.torsion if snf else ())


# -- Tietze moves -----------------------------------------------------------


def _free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(_free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def _inverse(word: Word) -> Word:
    return tuple(-x for x in reversed(word))


def _canonical(word: Word) -> Word:
    """Least rotation of the word or its inverse, for duplicate detection."""
    if not word:
        return word
    cands = []
    for w in (word, _inverse(word)):
        cands.extend(w[i:] + w[:i] for i in range(len(w)))
    return min(cands)


def _substitute(word: Word, g: int, replacement: Word) -> Word:
    out: list[int] = []
    inv = _inverse(replacement)
    for x in word:
        if x == g:
            out.extend(replacement)
        elif x == -g:
            out.extend(inv)
        else:
            out.append(x)
    return _cyclic_reduce(out)


def _renumber(word: Word, removed: int) -> Word:
    return tuple(x if abs(x) < removed else (x - 1 if x > 0 else x + 1) for x in word)


def _eliminate(gens: list[str], rels: list[Word], ri: int, g: int) -> tuple[list[str], list[Word]]:
    r = rels[ri]
    pos = next(i for i, x in enumerate(r) if abs(x) == g)
    rot = r[pos:] + r[:pos]
    # rot = g^e w = 1  =>  g = w^-1 (e = 1)  or  g = w (e = -1)
    w = rot[1:]
    replacement = _inverse(w) if rot[0] > 0 else w
    new_rels = [_substitute(x, g, replacement) for k, x in enumerate(rels) if k != ri]
    new_rels = [_renumber(x, g) for x in new_rels]
    return gens[:g - 1] + gens[g:], new_rels


def _shorten(a: Word, b: Word) -> Word | None:
    """Use relator ``b`` to shorten relator ``a``: if a cyclic rotation of a
    contains more than half of a rotation of b (or b^-1), replace it by the
    inverse of the remaining part."""
    lb = len(b)
    if lb == 0 or len(a) == 0:
        return None
    best = None
    rots_a = [a[i:] + a[:i] for i in range(len(a))]
    for base in (b, _inverse(b)):
        for i in range(lb):
            rb = base[i:] + base[:i]
            for m in range(lb, lb // 2, -1):
                s, t = rb[:m], rb[m:]
                for ra in rots_a:
                    for j in range(len(ra) - m + 1):
                        if ra[j:j + m] == s:
                            cand = _cyclic_reduce(ra[:j] + _inverse(t) + ra[j + m:])
                            if len(cand) < len(a) and (best is None or len(cand) < len(best)):
                                best = cand
                if best is not None:
                    return best
    return best


def tietze_simplify(pres: GroupPresentation, move_budget: int = DEFAULT_BUDGET) -> GroupPresentation:
    """Simplify with group-preserving moves until a fixpoint or ``move_budget``
    moves have been spent.

    Moves, in priority order: cyclic free reduction of a relator; deleting a
    trivial or duplicate relator; eliminating a generator that occurs once in
    a relator (length <= 3 always, longer only if total length does not grow);
    shortening one relator by another.  Each move is logged in ``history``.
    """
    gens = list(pres.generators)
    rels = list(pres.relators)
    history = list(pres.history)
    moves = 0

    def log(msg: str):
        nonlocal moves
        moves += 1
        history.append(msg)

    while True:
        if moves >= move_budget:
            history.append(f"budget exhausted after {moves} moves")
            break
        changed = False
        for i, r in enumerate(rels):
            red = _cyclic_reduce(r)
            if red != r:
                rels[i] = red
                log(f"reduce relator {i}")
                changed = True
                break
        if changed:
            continue
        seen = {}
        for i, r in enumerate(rels):
            key = _canonical(r)
            if not r or key in seen:
                del rels[i]
                log(f"drop {'trivial' if not r else 'duplicate'} relator {i}")
                changed = True
                break
            seen[key] = i
        if changed:
            continue

        total = sum(len(r) for r in rels)
        best = None
        for i, r in enumerate(rels):
            counts = Counter(abs(x) for x in r)
            for g, c in counts.items():
                if c != 1:
                    continue
                occurrences = sum(1 for k, x in enumerate(rels) if k != i for y in x if abs(y) == g)
                new_total = total - len(r) - occurrences + occurrences * (len(r) - 1)
                if len(r) > 3 and new_total > total:
                    continue
                key = (len(r), new_total, i, g)
                if best is None or key < best:
                    best = key
        if best is not None:
            _, _, i, g = best
            name = gens[g - 1]
            gens, rels = _eliminate(gens, rels, i, g)
            log(f"eliminate generator {name} via relator of length {best[0]}")
            continue

        for i in range(len(rels)):
            for j in range(len(rels)):
                if i == j:
                    continue
                cand = _shorten(rels[i], rels[j])
                if cand is not None:
                    rels[i] = cand
                    log(f"shorten relator {i} by relator {j}")
                    changed = True
                    break
            if changed:
                break
        if not changed:
            break
    return GroupPresentation(tuple(gens), tuple(rels), tuple(history))


# -- verdicts ---------------------------------------------------------------


class Connectivity(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Pi1Summary:
    verdict: Connectivity
    h1: HomologyGroup
    budget: int
    moves_used: int
    presentation: GroupPresentation
    simplified: GroupPresentation | None


def simple_connectivity(dual: DualComplex, move_budget: int = DEFAULT_BUDGET,
                        chain: ChainComplex | None = None) -> Pi1Summary:
    """π1 verdict with its evidence.  "no" comes from a nonzero H1, "yes" from
    a presentation simplified to the trivial one; anything else is "unknown"."""
    pres = edge_path_presentation(dual)
    chain = chain or ChainComplex(dual)
    h1 = homology(chain, 1) if chain.dim >= 1 else HomologyGroup(0)
    if h1.rank or h1.torsion:
        return Pi1Summary(Connectivity.NO, h1, move_budget, 0, pres, None)
    simple = tietze_simplify(pres, move_budget)
    used = len(simple.history) - len(pres.history)
    if simple.history and simple.history[-1].startswith("budget exhausted"):
        used -= 1
    verdict = Connectivity.YES if simple.is_trivial() else Connectivity.UNKNOWN
    return Pi1Summary(verdict, h1, move_budget, used, pres, simple)


def simple_connectivity_verdict(dual: DualComplex, move_budget: int = DEFAULT_BUDGET) -> Connectivity:
    return simple_connectivity(dual, move_budget).verdict


# -- collapses --------------------------------------------------------------


@dataclass(frozen=True)
class CollapseMove:
    face: tuple[int, int]
    cell: tuple[int, int]
    face_name: str
    cell_name: str


@dataclass(frozen=True)
class CollapseCertificate:
    moves: tuple[CollapseMove, ...]

    def to_list(self) -> list[dict]:
        return [{"free_face": m.face_name, "cell": m.cell_name,
                 "free_face_key": list(m.face), "cell_key": list(m.cell)} for m in self.moves]


def _alive_complex(dual: DualComplex, alive: set[tuple[int, int]]) -> DualComplex:
    cells = []
    position: list[dict[int, int]] = []
    for k, layer in enumerate(dual.cells):
        row, pos = [], {}
        for i, c in enumerate(layer):
            if (k, i) in alive:
                pos[i] = len(row)
                row.append(c)
        if not row:
            break
        position.append(pos)
        cells.append(row)
    verts = {c.vertices[0] for c in cells[0]} if cells else set()
    renum = {v: i for i, v in enumerate(sorted(verts))}
    out = []
    for k, row in enumerate(cells):
        out.append(tuple(Cell(tuple(renum[v] for v in c.vertices), c.name,
                              tuple(position[k - 1][f] for f in c.faces) if k else ())
                         for c in row))
    return DualComplex(tuple(out), tuple(dual.vertex_labels[v] for v in sorted(verts)))


def _coface_lists(dual: DualComplex) -> dict[tuple[int, int], list[tuple[int, int]]]:
    cof: dict[tuple[int, int], list[tuple[int, int]]] = {key: [] for key in dual.keys()}
    for k in range(1, len(dual.cells)):
        for j, c in enumerate(dual.cells[k]):
            for f in c.faces:
                cof[(k - 1, f)].append((k, j))
    return cof


def greedy_collapse(dual: DualComplex) -> tuple[DualComplex, CollapseCertificate]:
    """Collapse free faces greedily (lowest dimension first, then lexicographic
    vertex tuple) until none is left.  Returns the reduced complex and a
    replayable certificate."""
    cof = _coface_lists(dual)
    alive = set(dual.keys())
    alive_cof = {key: len(v) for key, v in cof.items()}

    def order(key):
        return (key[0], dual.cell(key).vertices, key[1])

    heap = [order(key) for key in alive if alive_cof[key] == 1]
    heapq.heapify(heap)
    moves = []
    while heap:
        k, _, i = heapq.heappop(heap)
        key = (k, i)
        if key not in alive or alive_cof[key] != 1:
            continue
        (top,) = [c for c in cof[key] if c in alive]
        if alive_cof[top] != 0:
            continue
        alive.discard(key)
        alive.discard(top)
        moves.append(CollapseMove(key, top, dual.cell(key).name, dual.cell(top).name))
        touched = [(k, f) for f in dual.cell(top).faces]
        if k > 0:
            touched += [(k - 1, f) for f in dual.cell(key).faces]
        for fk in touched:
            if fk not in alive:
                continue
            alive_cof[fk] -= 1
            if alive_cof[fk] == 1:
                heapq.heappush(heap, order(fk))
            elif alive_cof[fk] == 0 and fk[0] > 0:
                # fk became maximal: its free faces may now collapse into it
                for g in dual.cell(fk).faces:
                    gk = (fk[0] - 1, g)
                    if gk in alive and alive_cof[gk] == 1:
                        heapq.heappush(heap, order(gk))
    return _alive_complex(dual, alive), CollapseCertificate(tuple(moves))


def replay_collapse(dual: DualComplex, certificate: CollapseCertificate) -> DualComplex:
    """Re-apply a certificate, checking that every move is an elementary collapse."""
    cof = _coface_lists(dual)
    alive = set(dual.keys())
    for m in certificate.moves:
        if m.face not in alive or m.cell not in alive:
            raise ValueError(f"collapse {m.face_name} / {m.cell_name}: cell already removed")
        live = [c for c in cof[m.face] if c in alive]
        if live != [m.cell]:
            raise ValueError(f"{m.face_name} is not a free face of {m.cell_name}")
        if any(c in alive for c in cof[m.cell]):
            raise ValueError(f"{m.cell_name} is not a maximal cell")
        alive.discard(m.face)
        alive.discard(m.cell)
    return _alive_complex(dual, alive)


# -- contractibility --------------------------------------------------------


class Contractibility(str, enum.Enum):
    POINT = "point"
    NOT_POINT = "not-point"
    UNKNOWN = "unknown"


def contractibility_verdict_dim2(dual: DualComplex, move_budget: int = DEFAULT_BUDGET) -> Contractibility:
    """For complexes of dimension <= 2: a simply connected complex with
    H_2 = 0 is contractible (H_2 of a 2-complex is free, so rank 0 suffices)."""
    if dual.dim > 2:
        raise ValueError(f"dimension {dual.dim} > 2")
    chain = ChainComplex(dual)
    groups = [homology(chain, k) for k in range(chain.dim + 1)]
    reduced = [h.rank - (1 if k == 0 else 0) for k, h in enumerate(groups)]
    if any(reduced) or any(h.torsion for h in groups):
        return Contractibility.NOT_POINT
    verdict = simple_connectivity(dual, move_budget, chain).verdict
    if verdict is Connectivity.NO:
        return Contractibility.NOT_POINT
    h2 = groups[2].rank if chain.dim >= 2 else 0
    if verdict is Connectivity.YES and h2 == 0:
        return Contractibility.POINT
    return Contractibility.UNKNOWN
