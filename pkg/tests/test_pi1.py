from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from snc_dual.complex import DualComplex, build_dual_complex, connected_components, f_vector
from snc_dual.families import cone_family, gordon_family
from snc_dual.homology import ChainComplex, HomologyGroup, homology
from snc_dual.pi1 import (CollapseCertificate, Connectivity, Contractibility, DisconnectedError,
                          GroupPresentation, abelianization, contractibility_verdict_dim2,
                          edge_path_presentation, greedy_collapse, replay_collapse, simple_connectivity,
                          simple_connectivity_verdict, tietze_simplify)

# 17 triangles, every edge in at least two of them, trivial homology
DUNCE_HAT = [(1, 2, 4), (1, 2, 7), (1, 2, 8), (1, 3, 4), (1, 3, 5), (1, 3, 6), (1, 5, 6), (1, 7, 8), (2, 3, 5),
             (2, 3, 7), (2, 3, 8), (2, 4, 5), (3, 4, 8), (3, 6, 7), (4, 5, 6), (4, 6, 8), (6, 7, 8)]
RP2 = [(1, 2, 4), (1, 2, 6), (1, 3, 5), (1, 3, 6), (1, 4, 5),
       (2, 3, 4), (2, 3, 5), (2, 5, 6), (3, 4, 6), (4, 5, 6)]


def cx(tris):
    return DualComplex.from_simplices([[str(v) for v in t] for t in tris])


def sphere(n):
    return DualComplex.from_simplices(list(combinations("ABCDEFG"[:n + 2], n + 1)))


def test_circle_presentation_is_free_of_rank_one():
    p = edge_path_presentation(sphere(1))
    assert len(p.generators) == 1 and p.relators == ()
    assert simple_connectivity_verdict(sphere(1)) is Connectivity.NO


def test_two_sphere_is_simply_connected():
    s = simple_connectivity(sphere(2))
    assert s.verdict is Connectivity.YES
    assert s.simplified.is_trivial()
    assert 0 < s.moves_used <= s.budget


def test_projective_plane_fails_through_torsion():
    s = simple_connectivity(cx(RP2))
    assert s.verdict is Connectivity.NO
    assert s.h1.torsion == (2,)
    assert abelianization(s.presentation) == s.h1


def test_zero_budget_gives_unknown():
    assert simple_connectivity_verdict(sphere(2), 0) is Connectivity.UNKNOWN
    assert contractibility_verdict_dim2(cx(DUNCE_HAT), 0) is Contractibility.UNKNOWN


def test_budget_exhaustion_is_logged():
    out = tietze_simplify(edge_path_presentation(sphere(2)), 1)
    assert out.history[-1] == "budget exhausted after 1 moves"


def test_elementary_moves():
    assert tietze_simplify(GroupPresentation(("a",), ((1,),))).is_trivial()
    free = tietze_simplify(GroupPresentation(("a",), ()))
    assert free.generators == ("a",) and free.relators == ()
    # <a, b | a b a^-1 b^-1> stays an honest rank-two abelian group
    torus = tietze_simplify(GroupPresentation(("a", "b"), ((1, 2, -1, -2),)))
    assert abelianization(torus).rank == 2
    assert str(GroupPresentation(("a",), ((1, 1),))) == "< a | a a >"


def test_disconnected_complex_has_no_presentation():
    with pytest.raises(DisconnectedError):
        edge_path_presentation(DualComplex.from_simplices([("A",), ("B",)]))


def test_dunce_hat_is_contractible_but_stuck_for_greedy_collapse():
    d = cx(DUNCE_HAT)
    assert contractibility_verdict_dim2(d) is Contractibility.POINT
    reduced, cert = greedy_collapse(d)
    assert cert.moves == () and f_vector(reduced) == f_vector(d)


def test_contractibility_verdicts():
    assert contractibility_verdict_dim2(sphere(2)) is Contractibility.NOT_POINT
    assert contractibility_verdict_dim2(cx(RP2)) is Contractibility.NOT_POINT
    assert contractibility_verdict_dim2(DualComplex.from_simplices([("A", "B", "C")])) is Contractibility.POINT
    with pytest.raises(ValueError):
        contractibility_verdict_dim2(sphere(3))


def test_cone_collapses_and_replays():
    cone = build_dual_complex(cone_family(sphere(2)))
    reduced, cert = greedy_collapse(cone)
    assert f_vector(reduced) == (1,)
    assert f_vector(replay_collapse(cone, cert)) == (1,)
    listed = cert.to_list()
    assert set(listed[0]) == {"free_face", "cell", "free_face_key", "cell_key"}


def test_tampered_certificate_is_rejected():
    cone = build_dual_complex(cone_family(sphere(1)))
    _, cert = greedy_collapse(cone)
    moves = list(cert.moves)
    moves[0], moves[-1] = moves[-1], moves[0]
    with pytest.raises(ValueError):
        replay_collapse(cone, CollapseCertificate(tuple(moves)))
    doubled = CollapseCertificate(cert.moves + cert.moves[:1])
    with pytest.raises(ValueError, match="already removed"):
        replay_collapse(cone, doubled)


def test_sphere_does_not_collapse():
    reduced, _ = greedy_collapse(sphere(2))
    assert f_vector(reduced) == f_vector(sphere(2))


complexes = st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=3, unique=True), min_size=1, max_size=10)


@settings(max_examples=80, deadline=None)
@given(complexes)
def test_abelianization_is_first_homology(gens):
    d = DualComplex.from_simplices([[f"v{i}" for i in g] for g in gens])
    for part in connected_components(d):
        chain = ChainComplex(part)
        h1 = homology(chain, 1) if chain.dim >= 1 else HomologyGroup(0)
        assert abelianization(edge_path_presentation(part)) == h1


words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=7)


@settings(max_examples=150, deadline=None)
@given(st.lists(words, max_size=4))
def test_tietze_preserves_abelianization(rels):
    pres = GroupPresentation(("a", "b", "c"), tuple(tuple(r) for r in rels))
    out = tietze_simplify(pres)
    assert abelianization(out) == abelianization(pres)
    assert out.total_length <= pres.total_length or len(out.generators) < len(pres.generators)


def test_gordon_three_verdict():
    assert simple_connectivity_verdict(build_dual_complex(gordon_family(3))) is Connectivity.NO
