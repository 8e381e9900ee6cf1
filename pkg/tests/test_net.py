import random

from bundlecross.generators import circular, grid, lense, loop, polygon_instance, random_polyomino, ring, toothed
from bundlecross.net import (
    BORDER,
    REGULAR,
    detect_forbidden_patterns,
    detect_toothed_holes,
    exponent_of,
    net_from_arrangement,
    relative_exponent,
    relative_exponent_brute,
    shoot_segment,
    toothed_kind,
)


def test_plus_sign():
    n = net_from_arrangement(grid(1, 1))
    assert n.n_squares == 1
    assert n.n_holes == 1
    assert n.total_exponent == 0
    assert all(n.kind(v) == BORDER for v in range(n.n_vertices))


def test_grid_structure():
    n = net_from_arrangement(grid(3, 3))
    assert n.n_squares == 9
    assert sum(1 for v in range(n.n_vertices) if n.kind(v) == REGULAR) == 4
    assert n.n_holes == 1
    assert n.total_exponent == 0


def test_exponent_table():
    assert exponent_of("regular", 4) == 0
    assert exponent_of("border", 3) == 0
    assert exponent_of("border", 5) == 1
    assert exponent_of("border", 7) == 2
    assert exponent_of("vertex-hole", 3) == 2
    assert exponent_of("vertex-hole", 5) == 3
    assert exponent_of("vertex-hole", 6) == 3


def test_neighbor_squares_are_symmetric():
    n = net_from_arrangement(circular(8, 5))
    for s in range(n.n_squares):
        for side in range(4):
            nb = n.neighbor_square(s, side)
            if nb is not None:
                t, j = nb
                assert n.neighbor_square(t, j) == (s, side)


def test_relative_exponent_matches_brute_force():
    rng = random.Random(4)
    for seed in range(15):
        n = net_from_arrangement(circular(7, seed))
        for v in range(n.n_vertices):
            inner = n.interior_edges_at(v)
            sub = {e for e in inner if rng.random() < 0.5}
            assert relative_exponent(n, sub, v) == relative_exponent_brute(n, sub, v)


def test_shoot_stops_at_hole():
    n = net_from_arrangement(polygon_instance(random_polyomino(random.Random(3), 15)))
    for v in range(n.n_vertices):
        if n.exponents[v] and n.interior_edges_at(v):
            e = n.interior_edges_at(v)[0]
            seg = shoot_segment(n, v, e, set(), set())
            assert seg.ends[0] == v
            assert not n.is_regular(seg.ends[1])
            return
    raise AssertionError("no shootable vertex")


def test_toothed_detection():
    assert toothed_kind([3, 3, 7]) == "a"
    assert toothed_kind([5, 3, 5, 3]) == "b"
    assert toothed_kind([3, 5, 3]) is None
    for k in range(6):
        assert detect_toothed_holes(net_from_arrangement(toothed(k))) == k


def test_forbidden_patterns():
    assert detect_forbidden_patterns(net_from_arrangement(circular(6, 0))).ok
    assert detect_forbidden_patterns(net_from_arrangement(ring(4))).square_rings
    assert detect_forbidden_patterns(net_from_arrangement(loop(2))).square_loops
    assert detect_forbidden_patterns(net_from_arrangement(lense())).low_degree_holes
