"""Exact integral homology and rational cohomology of dual complexes.

All arithmetic uses Python integers (arbitrary precision) or
:class:`fractions.Fraction`; nothing here goes through floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .complex import DualComplex, build_dual_complex
from .model import SNCModel

__all__ = [
    "SmithForm",
    "smith_normal_form",
    "smith_decomposition",
    "invariant_factors",
    "rank_over_q",
    "HomologyGroup",
    "ChainComplex",
    "homology",
    "homology_groups",
    "betti_numbers",
    "reduced_betti_numbers",
    "CochainComplexDelta",
    "cochain_complex_delta",
    "VanishingStatus",
    "VanishingResult",
    "verify_rational_vanishing",
]

# sparse matrices are {row: {col: value}} with no stored zeros
Sparse = dict[int, dict[int, int]]


@dataclass(frozen=True)
class SmithForm:
    diagonal: tuple[int, ...]
    rank: int

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


def invariant_factors(values: Iterable[int]) -> tuple[int, ...]:
    """Rewrite diag(values) in divisibility order d1 | d2 | ... (zeros dropped)."""
    rest = [abs(v) for v in values if v]
    ones = [v for v in rest if v == 1]
    rest = sorted(v for v in rest if v != 1)
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            if b % a:
                g = gcd(a, b)
                rest[i], rest[j] = g, a // g * b
    return tuple(ones + sorted(rest))


def _to_sparse(matrix: Sequence[Sequence[int]]) -> tuple[Sparse, int]:
    rows: Sparse = {}
    ncols = 0
    for r, row in enumerate(matrix):
        ncols = max(ncols, len(row))
        entries = {c: int(v) for c, v in enumerate(row) if v}
        if entries:
            rows[r] = entries
    return rows, ncols


def _sparse_diagonal(rows: Sparse) -> list[int]:
    """Eliminate a sparse integer matrix to a diagonal (not yet in
    divisibility order).  Consumes ``rows``."""
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    def add_row(dst: int, src: int, q: int):
        target = rows[dst]
        for c, v in rows[src].items():
            nv = target.get(c, 0) - q * v
            if nv:
                if c not in target:
                    cols[c].add(dst)
                target[c] = nv
            elif c in target:
                del target[c]
                cols[c].discard(dst)
        if not target:
            del rows[dst]

    diag = []
    while rows:
        pivot = None
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                a = abs(v)
                if best is None or a < best:
                    best, pivot = a, (r, c)
                    if a == 1:
                        break
            if best == 1:
                break
        r, c = pivot
        while True:
            p = rows[r][c]
            for r2 in sorted(cols[c] - {r}):
                add_row(r2, r, rows[r2][c] // p)
            others = [r2 for r2 in cols[c] if r2 != r]
            if others:
                r = min(others, key=lambda x: (abs(rows[x][c]), x))
                continue
            row = rows[r]
            smaller = []
            for c2 in [x for x in row if x != c]:
                v = row[c2]
                rem = v - (v // p) * p
                # column c holds only row r, so this column operation touches row r alone
                if rem:
                    row[c2] = rem
                    smaller.append(c2)
                else:
                    del row[c2]
                    cols[c2].discard(r)
            if smaller:
                c = min(smaller, key=lambda x: (abs(row[x]), x))
                continue
            diag.append(abs(p))
            del rows[r]
            del cols[c]
            break
    return diag


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithForm:
    """Invariant factors of an integer matrix.

    >>> smith_normal_form([[2, 4], [6, 8]])
    SmithForm(diagonal=(2, 4), rank=2)
    """
    rows, _ = _to_sparse(matrix)
    diag = invariant_factors(_sparse_diagonal(rows))
    return SmithForm(diag, len(diag))


def smith_decomposition(matrix: Sequence[Sequence[int]]):
    """Dense Smith decomposition with transforms: returns ``(S, U, V)`` where
    ``U @ M @ V == S``, U and V unimodular, and S diagonal with d1 | d2 | ...

    Slower than :func:`smith_normal_form`; used for certification.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    A = [[int(x) for x in row] for row in matrix]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(M, dst, src, q):  # row dst -= q * row src
        M[dst] = [a - q * b for a, b in zip(M[dst], M[src])]

    def col_op(M, dst, src, q):  # col dst -= q * col src
        for row in M:
            row[dst] -= q * row[src]

    def swap_rows(M, i, j):
        M[i], M[j] = M[j], M[i]

    def swap_cols(M, i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(A, t, i)
        swap_rows(U, t, i)
        swap_cols(A, t, j)
        swap_cols(V, t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    row_op(A, i, t, q)
                    row_op(U, i, t, q)
                dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    col_op(A, j, t, q)
                    col_op(V, j, t, q)
                dirty |= A[t][j] != 0
            if not dirty:
                # divisibility: fold any entry not divisible by p into row t
                bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p]
                if not bad:
                    break
                i, _ = bad[0]
                row_op(A, t, i, -1)
                row_op(U, t, i, -1)
                continue
            cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]] + \
                   [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            _, i, j = min(cand)
            swap_rows(A, t, i)
            swap_rows(U, t, i)
            swap_cols(A, t, j)
            swap_cols(V, t, j)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def rank_over_q(rows: Sparse) -> int:
    """Rank of a sparse integer matrix by exact Gaussian elimination over Q."""
    work = {r: {c: Fraction(v) for c, v in row.items()} for r, row in rows.items() if row}
    rank = 0
    while work:
        r = min(work, key=lambda x: (len(work[x]), x))
        prow = work.pop(r)
        if not prow:
            continue
        c = min(prow)
        inv = 1 / prow[c]
        rank += 1
        for r2 in list(work):
            row = work[r2]
            v = row.get(c)
            if v is None:
                continue
            f = v * inv
            for cc, pv in prow.items():
                nv = row.get(cc, 0) - f * pv
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
            if not row:
                del work[r2]
    return rank


# -- chains -----------------------------------------------------------------


@dataclass(frozen=True)
class HomologyGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = (["Z^%d" % self.rank] if self.rank > 1 else ["Z"] if self.rank == 1 else []) + \
                [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


class ChainComplex:
    """Integral simplicial chains of a Δ-complex.

    ``boundary(k)`` has rows indexed by (k-1)-cells and columns by k-cells;
    the column of a cell is the alternating sum of its faces.
    """

    def __init__(self, dual: DualComplex):
        self.counts = tuple(len(layer) for layer in dual.cells)
        self._boundaries: list[Sparse] = [{}]
        for k in range(1, len(dual.cells)):
            rows: Sparse = {}
            for j, cell in enumerate(dual.cells[k]):
                for s, f in enumerate(cell.faces):
                    row = rows.setdefault(f, {})
                    v = row.get(j, 0) + (-1) ** s
                    if v:
                        row[j] = v
                    else:
                        del row[j]
            self._boundaries.append({r: row for r, row in rows.items() if row})
        self._snf: dict[int, SmithForm] = {}

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    def boundary(self, k: int) -> Sparse:
        if k <= 0 or k > self.dim:
            return {}
        return self._boundaries[k]

    def matrix(self, k: int) -> list[list[int]]:
        """Dense ∂_k (shape counts[k-1] x counts[k])."""
        nrows = self.counts[k - 1] if k >= 1 else 0
        ncols = self.counts[k] if 0 <= k <= self.dim else 0
        out = [[0] * ncols for _ in range(nrows)]
        for r, row in self.boundary(k).items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def smith(self, k: int) -> SmithForm:
        if k not in self._snf:
            rows = {r: dict(row) for r, row in self.boundary(k).items()}
            diag = invariant_factors(_sparse_diagonal(rows))
            self._snf[k] = SmithForm(diag, len(diag))
        return self._snf[k]


def homology(chain: ChainComplex, k: int) -> HomologyGroup:
    if not 0 <= k <= chain.dim:
        raise ValueError(f"degree {k} outside 0..{chain.dim}")
    cycles = chain.counts[k] - chain.smith(k).rank
    nxt = chain.smith(k + 1)
    return HomologyGroup(cycles - nxt.rank, nxt.torsion)


def homology_groups(dual: DualComplex | ChainComplex) -> list[HomologyGroup]:
    chain = dual if isinstance(dual, ChainComplex) else ChainComplex(dual)
    return [homology(chain, k) for k in range(chain.dim + 1)]


def betti_numbers(dual: DualComplex | ChainComplex) -> tuple[int, ...]:
    return tuple(h.rank for h in homology_groups(dual))


def reduced_betti_numbers(dual: DualComplex | ChainComplex) -> tuple[int, ...]:
    b = list(betti_numbers(dual))
    if b:
        b[0] -= 1
    return tuple(b)


# -- the combinatoric cochain complex ---------------------------------------


class CochainComplexDelta:
    """Cochains with one coordinate per piece; δ^p sends a p-cochain a to
    (δa)_P = Σ_j (-1)^j a_{P_j}, where P_j is the parent of the depth-(p+1)
    piece P obtained by dropping its j-th component."""

    def __init__(self, dual: DualComplex):
        self.counts = tuple(len(layer) for layer in dual.cells)
        self.piece_names = tuple(tuple(c.name for c in layer) for layer in dual.cells)
        self._delta: list[Sparse] = []
        for p in range(len(dual.cells) - 1):
            rows: Sparse = {}
            for r, piece in enumerate(dual.cells[p + 1]):
                row: dict[int, int] = {}
                for j, parent in enumerate(piece.faces):
                    row[parent] = row.get(parent, 0) + (-1) ** j
                row = {c: v for c, v in row.items() if v}
                if row:
                    rows[r] = row
            self._delta.append(rows)
        self._ranks: dict[int, int] = {}

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    def delta(self, p: int) -> Sparse:
        """Sparse δ^p (rows: depth p+1 pieces, columns: depth p pieces)."""
        if 0 <= p < len(self._delta):
            return self._delta[p]
        return {}

    def matrix(self, p: int) -> list[list[int]]:
        nrows = self.counts[p + 1] if p + 1 <= self.dim else 0
        ncols = self.counts[p] if 0 <= p <= self.dim else 0
        out = [[0] * ncols for _ in range(nrows)]
        for r, row in self.delta(p).items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def delta_rank(self, p: int) -> int:
        if p not in self._ranks:
            self._ranks[p] = rank_over_q(self.delta(p))
        return self._ranks[p]

    def cohomology_rank(self, p: int) -> int:
        if not 0 <= p <= self.dim:
            raise ValueError(f"degree {p} outside 0..{self.dim}")
        return self.counts[p] - self.delta_rank(p) - (self.delta_rank(p - 1) if p else 0)

    def cohomology_ranks(self) -> tuple[int, ...]:
        return tuple(self.cohomology_rank(p) for p in range(self.dim + 1))


def cochain_complex_delta(dual: DualComplex) -> CochainComplexDelta:
    return CochainComplexDelta(dual)


# -- top-degree vanishing ---------------------------------------------------


class VanishingStatus(str, enum.Enum):
    CONSISTENT = "consistent"
    VIOLATES = "violates"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class VanishingResult:
    status: VanishingStatus
    degree: int | None
    rank: int
    torsion: tuple[int, ...] = ()


def verify_rational_vanishing(model: SNCModel, dual: DualComplex | None = None) -> VanishingResult:
    """Check that H^{n-1}(Γ; Q) = 0 for a model declared rational (n = ambient_dim).

    A nonzero rank means the model cannot come from a rational singularity;
    a zero rank is only consistent with, not proof of, rationality.  Torsion of
    H_{n-1}(Γ; Z) is reported but does not enter the verdict.
    """
    if model.ambient_dim is None:
        return VanishingResult(VanishingStatus.NOT_APPLICABLE, None, 0)
    if dual is None:
        dual = build_dual_complex(model)
    top = model.ambient_dim - 1
    if top > dual.dim:
        rank, torsion = 0, ()
    else:
        h = homology(ChainComplex(dual), top)
        rank, torsion = h.rank, h.torsion
    if not model.declared_rational:
        status = VanishingStatus.NOT_APPLICABLE
    elif rank > 0:
        status = VanishingStatus.VIOLATES
    else:
        status = VanishingStatus.CONSISTENT
    return VanishingResult(status, top, rank, torsion)
