import random

import pytest

from bundlecross.arrangement import build_planarization, validate_pseudosegments
from bundlecross.generators import (
    FAMILIES,
    GeneratorSpec,
    circular,
    generate,
    grid,
    is_simply_connected,
    staircase_polygon,
    toothed,
)
from bundlecross.net import net_from_arrangement


@pytest.mark.parametrize("family, size", [("circular", (6,)), ("bilaminar", (12,)), ("grid", (2, 3)),
                                          ("toothed", (4,)), ("c4xc4", ()), ("ring", (5,)), ("loop", (2,))])
def test_determinism(family, size):
    a = generate(GeneratorSpec(family, size, 7)).to_json()
    b = generate(GeneratorSpec(family, size, 7)).to_json()
    assert a == b


def test_families_listed():
    assert set(FAMILIES) >= {"circular", "bilaminar", "grid", "toothed", "c4xc4", "ring", "loop"}


def test_seed_changes_circular():
    assert circular(7, 1).to_json() != circular(7, 2).to_json()


def test_circular_valid():
    for s in range(30):
        arr = circular(6, s)
        assert validate_pseudosegments(build_planarization(arr)).ok
        assert len(arr.strings) == 6


def test_circular_bipartite_colored():
    arr = circular(7, 3, bipartite=True)
    assert arr.is_colored and arr.is_bipartite()


@pytest.mark.parametrize("bad", [lambda: circular(1), lambda: grid(0, 3), lambda: toothed(-1),
                                 lambda: generate(GeneratorSpec("nope"))])
def test_invalid_sizes(bad):
    with pytest.raises(ValueError):
        bad()


def test_c4xc4_single_bundle():
    from bundlecross.rectangulation import extract_rectangulation, greedy_rectangulate

    n = net_from_arrangement(generate(GeneratorSpec("c4xc4")))
    assert n.n_squares == 16
    assert extract_rectangulation(n, greedy_rectangulate(n)).R == 1


def test_toothed_counts():
    for k in range(1, 6):
        n = net_from_arrangement(toothed(k))
        assert n.n_holes == k + 1


def test_staircase_polygons_simple():
    rng = random.Random(0)
    for _ in range(50):
        cells = staircase_polygon(rng, 30)
        assert 0 < len(cells) <= 30 and is_simply_connected(cells)
