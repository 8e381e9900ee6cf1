from bundlecross.arrangement import build_planarization
from bundlecross.generators import grid, toothed
from bundlecross.harness import run_bundling
from bundlecross.render import render_svg, tutte_layout


def test_plus_sign_one_bundle():
    arr = grid(1, 1)
    res = run_bundling(arr)
    svg = render_svg(build_planarization(arr), bundles=res.bundles)
    assert svg.count('class="bundle"') == 1
    assert svg.startswith("<svg")


def test_toothed_strings_and_determinism():
    p = build_planarization(toothed(5))
    a, b = render_svg(p), render_svg(p)
    assert a == b
    # two long strings, six verticals, five teeth
    assert a.count('class="string"') == 2 + 6 + 5


def test_layout_finite():
    pos = tutte_layout(build_planarization(grid(4, 4)))
    assert pos.shape[1] == 2 and abs(pos).max() <= 1.5
