"""Independent brute-force references used by the tests.

Nothing here imports the package's linear algebra."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import gcd


def det(rows: tuple[tuple[int, ...], ...]) -> int:
    """Laplace expansion along the first row, memoized on the minor."""
    return _det(rows)


@lru_cache(maxsize=None)
def _det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j, a in enumerate(rows[0]):
        if a:
            minor = tuple(r[:j] + r[j + 1:] for r in rows[1:])
            total += (-1) ** j * a * _det(minor)
    return total


def minor_gcd_diagonal(matrix: list[list[int]]) -> list[int]:
    """Smith diagonal from determinantal divisors: s_k = d_k / d_{k-1} where
    d_k is the gcd of all k-by-k minors.  Stops at the first zero d_k."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    out = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        d = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                d = gcd(d, det(tuple(tuple(matrix[r][c] for c in cs) for r in rs)))
                if d == 1:
                    break
            if d == 1:
                break
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out


def rank_over_rationals(matrix: list[list[int]]) -> int:
    """Rank over Q by exact fraction-free Gaussian elimination (Bareiss)."""
    a = [list(r) for r in matrix]
    if not a or not a[0]:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == rows:
            break
    return r


def naive_betti(simplices: list[tuple[int, ...]]) -> list[int]:
    """Betti numbers over Q of the downward closure of ``simplices``, built
    from scratch with dense boundary matrices."""
    closed = set()
    for s in simplices:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            closed.update(combinations(s, k))
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for s in sorted(closed):
        by_dim.setdefault(len(s) - 1, []).append(s)
    top = max(by_dim) if by_dim else -1
    ranks = {}
    for k in range(1, top + 1):
        index = {f: i for i, f in enumerate(by_dim[k - 1])}
        mat = [[0] * len(by_dim[k]) for _ in by_dim[k - 1]]
        for j, s in enumerate(by_dim[k]):
            for i in range(len(s)):
                mat[index[s[:i] + s[i + 1:]]][j] = (-1) ** i
        ranks[k] = rank_over_rationals(mat)
    return [len(by_dim[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(top + 1)]


def closure(simplices) -> set[frozenset]:
    out = set()
    for s in simplices:
        s = tuple(s)
        for k in range(1, len(s) + 1):
            out.update(frozenset(c) for c in combinations(s, k))
    return out


def stellar_by_link(faces: set[frozenset], sigma: frozenset, apex) -> set[frozenset]:
    """(K minus the open star of sigma) joined with apex * boundary(sigma) * link(sigma)."""
    keep = {f for f in faces if not sigma <= f}
    link = [f - sigma for f in faces if sigma <= f]  # includes the empty set
    bd = [frozenset(c) for k in range(len(sigma)) for c in combinations(sorted(sigma, key=repr), k)]
    cone = {frozenset({apex}) | a | b for a in bd for b in link}
    return keep | cone
