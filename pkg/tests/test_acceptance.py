"""Acceptance criteria 1-9.  Each test records one PASS/FAIL line, printed in
the terminal summary."""

import random
import time
from contextlib import contextmanager

import pytest

from oracles import minor_gcd_diagonal
from snc_dual.complex import build_dual_complex, connected_components, euler_characteristic, f_vector
from snc_dual.families import bundled_cdv_models, cone_family, gordon_family, random_cover, random_snc_model
from snc_dual.homology import (ChainComplex, HomologyGroup, VanishingStatus, cochain_complex_delta, homology,
                               homology_groups, reduced_betti_numbers, smith_normal_form,
                               verify_rational_vanishing)
from snc_dual.model import read_model
from snc_dual.nerve import build_nerve_map, check_surjective, fiber_components, read_cover, sample_points
from snc_dual.pi1 import (Connectivity, Contractibility, abelianization, contractibility_verdict_dim2,
                          edge_path_presentation, greedy_collapse, simple_connectivity_verdict)

import suites

RESULTS: dict[int, str] = {}


@contextmanager
def criterion(number: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        RESULTS[number] = f"FAIL criterion {number}: {title} ({type(exc).__name__})"
        raise
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        RESULTS[number] = f"FAIL criterion {number}: {title} ({elapsed:.2f}s >= {limit}s)"
        pytest.fail(f"took {elapsed:.2f}s, limit {limit}s")
    RESULTS[number] = f"PASS criterion {number}: {title} ({elapsed:.2f}s)"


def test_1_gordon_spheres():
    with criterion(1, "hyperplane arrangements give spheres", 5.0):
        suites.gordon_suite.cache_clear()
        for n, d in suites.gordon_suite():
            assert reduced_betti_numbers(d) == tuple(1 if k == n - 2 else 0 for k in range(n - 1)), n


def test_2_trees_simply_connected():
    with criterion(2, "trees of curves are simply connected", 5.0):
        suites.tree_models.cache_clear()
        suites.tree_suite.cache_clear()
        for d in suites.tree_suite():
            assert sum(cochain_complex_delta(d).cohomology_ranks()[1:]) == 0
            assert simple_connectivity_verdict(d) is Connectivity.YES


def test_3_vanishing_checker(fixtures):
    with criterion(3, "rational top-cohomology vanishing checker", 2.0):
        for m in suites.vanishing_models():
            assert verify_rational_vanishing(m).status is VanishingStatus.CONSISTENT, m.name
        bad = read_model(fixtures / "sphere_counterexample.json")
        assert verify_rational_vanishing(bad).status is VanishingStatus.VIOLATES


def test_4_blowup_invariance():
    with criterion(4, "star subdivisions preserve homology and Euler characteristic", 60.0):
        suites.blowup_suite.cache_clear()
        for seed, (before, after) in enumerate(suites.blowup_suite(), start=1):
            assert before.n_vertices <= 8
            assert homology_groups(before) == homology_groups(after), seed
            assert euler_characteristic(before) == euler_characteristic(after), seed


def test_5_smith_normal_form_oracle():
    rng = random.Random(5)
    with criterion(5, "Smith normal form matches determinantal divisors", 30.0):
        for _ in range(500):
            m, n = rng.randint(1, 6), rng.randint(1, 6)
            a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
            assert list(smith_normal_form(a).diagonal) == minor_gcd_diagonal(a), a


def test_6_delta_cohomology_matches_homology():
    with criterion(6, "delta-cochain ranks equal homology ranks"):
        for d in suites.all_complexes():
            chain = ChainComplex(d)
            ranks = tuple(homology(chain, k).rank for k in range(chain.dim + 1))
            assert cochain_complex_delta(d).cohomology_ranks() == ranks


def test_7_contractibility():
    with criterion(7, "contractibility verdicts", 10.0):
        for m in bundled_cdv_models():
            assert contractibility_verdict_dim2(build_dual_complex(m)) is Contractibility.POINT, m.name
        rng = random.Random(7)
        made = 0
        while made < 20:
            base = build_dual_complex(random_snc_model(rng.randint(1, 6), rng.randint(0, 2), 0.6, rng.randrange(10 ** 6)))
            reduced, _ = greedy_collapse(build_dual_complex(cone_family(base)))
            assert f_vector(reduced) == (1,)
            made += 1
        tetra = build_dual_complex(gordon_family(4))
        assert contractibility_verdict_dim2(tetra) is Contractibility.NOT_POINT


def test_8_nerve_map(fixtures):
    with criterion(8, "nerve map is simplicial, surjective, with connected fibers", 30.0):
        covers = [read_cover(fixtures / f"{n}_cover.json") for n in ("path", "cycle")]
        covers += [(random_cover(seed), None) for seed in range(1, 21)]
        for cover, model in covers:
            psi = build_nerve_map(cover, model)
            assert check_surjective(psi)
            for simplex, coords in sample_points(psi, per_simplex=16):
                assert fiber_components(psi, simplex, coords) == 1


def test_9_abelianization_is_h1():
    with criterion(9, "presentation abelianization equals H1"):
        for d in suites.all_complexes():
            for part in connected_components(d):
                chain = ChainComplex(part)
                h1 = homology(chain, 1) if chain.dim >= 1 else HomologyGroup(0)
                assert abelianization(edge_path_presentation(part)) == h1
