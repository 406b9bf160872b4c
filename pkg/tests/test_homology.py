import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import minor_gcd_diagonal, rank_over_rationals
from snc_dual.complex import DualComplex, build_dual_complex
from snc_dual.families import gordon_family, load_bundled, tree_family
from snc_dual.homology import (ChainComplex, HomologyGroup, VanishingStatus, betti_numbers,
                               cochain_complex_delta, homology, homology_groups, invariant_factors,
                               reduced_betti_numbers, smith_decomposition, smith_normal_form,
                               verify_rational_vanishing)
from snc_dual.model import read_model

# six-vertex real projective plane
RP2 = [(1, 2, 4), (1, 2, 6), (1, 3, 5), (1, 3, 6), (1, 4, 5),
       (2, 3, 4), (2, 3, 5), (2, 5, 6), (3, 4, 6), (4, 5, 6)]


def rp2():
    return DualComplex.from_simplices([[str(v) for v in t] for t in RP2])


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def test_small_smith_forms():
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == (2, 4)
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
    assert smith_normal_form([[6]]).torsion == (6,)
    assert smith_normal_form([[1, 0], [0, 1]]).torsion == ()


def test_invariant_factors_normalize_divisibility():
    assert invariant_factors([6, 4]) == (2, 12)
    assert invariant_factors([1, 3, 1]) == (1, 1, 3)


def test_projective_plane_has_two_torsion():
    g = homology_groups(rp2())
    assert g[0] == HomologyGroup(1)
    assert g[1] == HomologyGroup(0, (2,))
    assert g[2] == HomologyGroup(0)
    assert str(g[1]) == "Z/2"


def test_projective_plane_delta_ranks_are_rational_ranks():
    assert cochain_complex_delta(rp2()).cohomology_ranks() == betti_numbers(rp2()) == (1, 0, 0)


def test_delta_is_transpose_of_boundary():
    d = rp2()
    chain, co = ChainComplex(d), cochain_complex_delta(d)
    for p in range(d.dim):
        b = chain.matrix(p + 1)
        assert co.matrix(p) == [list(r) for r in zip(*b)]


def test_gordon_spheres():
    for n in range(2, 7):
        red = reduced_betti_numbers(build_dual_complex(gordon_family(n)))
        assert red == tuple(1 if k == n - 2 else 0 for k in range(n - 1))


def test_homology_degree_out_of_range():
    with pytest.raises(ValueError):
        homology(ChainComplex(rp2()), 3)


def test_vanishing_verdicts(fixtures):
    assert verify_rational_vanishing(load_bundled("odp")).status is VanishingStatus.CONSISTENT
    assert verify_rational_vanishing(tree_family([0, 0, 1])).status is VanishingStatus.CONSISTENT
    bad = verify_rational_vanishing(read_model(fixtures / "sphere_counterexample.json"))
    assert bad.status is VanishingStatus.VIOLATES
    assert (bad.degree, bad.rank) == (2, 1)
    plain = verify_rational_vanishing(gordon_family(3))
    assert plain.status is VanishingStatus.NOT_APPLICABLE


def test_vanishing_is_vacuous_above_the_dimension():
    res = verify_rational_vanishing(load_bundled("cA2_pair"))
    assert res.degree == 2 and res.rank == 0


def test_decomposition_on_a_fixed_matrix():
    m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    s, u, v = smith_decomposition(m)
    assert matmul(matmul(u, m), v) == s
    assert [s[i][i] for i in range(3)] == [2, 6, 12]


matrices = st.integers(1, 6).flatmap(
    lambda m: st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))


def det_int(a):
    # Bareiss determinant for square integer matrices
    a = [list(r) for r in a]
    n, sign, prev = len(a), 1, 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_decomposition_is_unimodular_and_diagonal(m):
    s, u, v = smith_decomposition(m)
    assert matmul(matmul(u, m), v) == s
    assert abs(det_int(u)) == 1 and abs(det_int(v)) == 1
    diag = [s[i][i] for i in range(min(len(m), len(m[0])))]
    assert all(s[i][j] == 0 for i in range(len(s)) for j in range(len(s[0])) if i != j)
    nz = [x for x in diag if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert tuple(nz) == smith_normal_form(m).diagonal


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_matches_minor_gcds(m):
    assert list(smith_normal_form(m).diagonal) == minor_gcd_diagonal(m)
    assert smith_normal_form(m).rank == rank_over_rationals(m)


@settings(max_examples=80, deadline=None)
@given(matrices, st.integers(0, 10 ** 6))
def test_unimodular_scrambling_preserves_the_form(m, seed):
    rng = random.Random(seed)
    rows, cols = len(m), len(m[0])
    a = [list(r) for r in m]
    for _ in range(12):
        q = rng.choice([-2, -1, 1, 2])
        if rng.random() < 0.5 and rows > 1:
            i, j = rng.sample(range(rows), 2)
            a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        elif cols > 1:
            i, j = rng.sample(range(cols), 2)
            for r in a:
                r[i] += q * r[j]
    assert smith_normal_form(a).diagonal == smith_normal_form(m).diagonal
