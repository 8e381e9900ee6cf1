from hypothesis import given, settings, strategies as st

from bundlecross.generators import circular, polygon_instance, random_polyomino, staircase_polygon
from bundlecross.net import net_from_arrangement
from bundlecross.oracle import OrthoPolygon, ortho_brute_force, ortho_exact
from bundlecross.rectangulation import (
    build_gamma,
    extract_rectangulation,
    gamma_checks,
    greedy_rectangulate,
    is_saturating,
    random_order,
    to_bundling,
)
import random


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 10), st.integers(0, 10**6), st.integers(0, 100))
def test_greedy_invariants(n_chords, seed, order_seed):
    arr = circular(n_chords, seed)
    n = net_from_arrangement(arr)
    cut = greedy_rectangulate(n, (), random_order(n, order_seed))
    assert is_saturating(n, cut)
    assert len(cut) <= n.total_exponent
    r = extract_rectangulation(n, cut)
    assert r.R - r.S + r.H == 2
    b = to_bundling(arr, n, r)
    assert sorted(c for x in b.bundles for c in x) == sorted(c.id for c in arr.crossings)
    if r.S:
        assert gamma_checks(build_gamma(n, r), r).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 30))
def test_ortho_exact_optimal(seed, size):
    rng = random.Random(seed)
    cells = staircase_polygon(rng, size) if seed % 2 else random_polyomino(rng, size)
    P = OrthoPolygon(cells)
    ex = ortho_exact(P)
    assert ex.R == ex.S + 1 == ortho_brute_force(P)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 25))
def test_polygon_nets_euler(seed, size):
    arr = polygon_instance(random_polyomino(random.Random(seed), size))
    n = net_from_arrangement(arr)
    r = extract_rectangulation(n, greedy_rectangulate(n))
    assert r.R - r.S + r.H == 2 and n.n_holes == 1
