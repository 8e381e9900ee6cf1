import pytest

from bundlecross.generators import circular, grid, polygon_instance, toothed
from bundlecross.net import net_from_arrangement
from bundlecross.oracle import (
    OracleTooLarge,
    OrthoPolygon,
    PolygonError,
    brute_force_min_rectangulation,
    enumerate_rectangles,
    max_bipartite_matching,
    max_independent_set,
    oracle_cap,
    ortho_brute_force,
    ortho_exact,
    ortho_greedy,
    verify_inequalities,
)
from bundlecross.rectangulation import extract_rectangulation, greedy_rectangulate

L_SHAPE = frozenset({(0, 0), (1, 0), (0, 1)})
PLUS = frozenset({(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)})


def test_l_and_plus():
    e = ortho_exact(OrthoPolygon(L_SHAPE))
    assert (e.S, e.R) == (1, 2)
    e = ortho_exact(OrthoPolygon(PLUS))
    assert (e.S, e.R) == (2, 3)
    assert ortho_brute_force(OrthoPolygon(PLUS)) == 3


def test_rectangle_needs_nothing():
    P = OrthoPolygon(frozenset((x, y) for x in range(3) for y in range(2)))
    assert ortho_exact(P).R == 1 and ortho_greedy(P).S == 0


@pytest.mark.parametrize(
    "cells",
    [frozenset(), frozenset({(0, 0), (1, 1)}), frozenset((x, y) for x in range(3) for y in range(3)) - {(1, 1)}],
)
def test_bad_polygons(cells):
    with pytest.raises(PolygonError):
        OrthoPolygon(cells)


def test_pinch_point_rejected():
    with pytest.raises(PolygonError):
        OrthoPolygon(frozenset({(0, 0), (1, 0), (1, 1), (2, 1), (0, 1) , (2, 2), (1, 2)}) - {(1, 1)})


def test_matching_and_independent_set():
    adj = [[0, 1], [0], [2]]
    m = max_bipartite_matching(adj, 3)
    assert sorted(x for x in m if x >= 0) == [0, 1, 2]
    left, right = max_independent_set([[0], [0]], 1)
    assert len(left) + len(right) == 2


def test_plus_sign_oracle():
    opt = brute_force_min_rectangulation(net_from_arrangement(grid(1, 1)))
    assert (opt.R_opt, opt.S_opt, opt.H) == (1, 0, 1)


def test_rectangles_of_grid():
    n = net_from_arrangement(grid(2, 2))
    # 1x1: 4, 1x2 and 2x1: 4, 2x2: 1
    assert len(enumerate_rectangles(n)) == 9


def test_toothed_optimum_two():
    opt = brute_force_min_rectangulation(net_from_arrangement(toothed(3)))
    assert opt.R_opt == 2 and opt.t == 3


def test_oracle_cap(monkeypatch):
    n = net_from_arrangement(grid(5, 5))
    with pytest.raises(OracleTooLarge, match="too large"):
        brute_force_min_rectangulation(n, cap=20)
    monkeypatch.setenv("BUNDLE_ORACLE_CAP", "30")
    assert oracle_cap() == 30
    assert brute_force_min_rectangulation(n).R_opt == 1


def test_s_opt_independent_of_ambiguous_choices():
    for seed in range(20):
        n = net_from_arrangement(circular(6, seed))
        opt = brute_force_min_rectangulation(n)
        assert len(opt.S_variants) <= 1


def test_verify_report():
    n = net_from_arrangement(circular(7, 5))
    opt = brute_force_min_rectangulation(n)
    g = extract_rectangulation(n, greedy_rectangulate(n))
    rep = verify_inequalities(n, opt, g)
    assert rep.ok
    assert rep.by_name("euler_opt").holds
    assert rep.tsv().splitlines()[0] == "check\tlhs\trhs\tapplicable\tholds"


def test_polygon_net_equivalence():
    cells = PLUS
    n = net_from_arrangement(polygon_instance(cells))
    assert brute_force_min_rectangulation(n).R_opt == ortho_exact(OrthoPolygon(cells)).R
