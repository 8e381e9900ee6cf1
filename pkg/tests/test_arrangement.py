import json
import logging

import pytest

from bundlecross.arrangement import (
    InstanceError,
    arrangement_from_dict,
    build_planarization,
    ground,
    parse_instance,
    split_components,
    validate_pseudosegments,
)
from bundlecross.generators import circular, grid, lense, loop, ring, toothed


def test_canonical_round_trip():
    arr = circular(6, 4)
    text = arr.to_json()
    assert parse_instance(text).to_json() == text
    data = json.loads(text)
    assert list(data) == ["strings", "crossings"]
    assert list(data["strings"][0]) == ["id", "color", "crossings"]
    assert list(data["crossings"][0]) == ["id", "strings", "sign"]


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"strings": [', "syntax error"),
        ('{"strings": []}', "must be an object"),
        ('{"strings":[{"id":0,"crossings":[5]}],"crossings":[]}', "dangling crossing reference 5"),
        ('{"strings":[{"id":0,"crossings":[0]}],"crossings":[{"id":0,"strings":[0]}]}', "crossing arity"),
        ('{"strings":[{"id":0,"crossings":[0]},{"id":1,"crossings":[0]}],'
         '"crossings":[{"id":0,"strings":[0,1],"sign":2}]}', "sign"),
        ('{"strings":[{"id":0,"color":"green","crossings":[]}],"crossings":[]}', "unknown color"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(InstanceError, match=fragment):
        parse_instance(text)


def test_syntax_error_has_position():
    with pytest.raises(InstanceError, match="line 1"):
        parse_instance('{"strings": [,]}')


def test_planarization_counts_grid():
    p = build_planarization(grid(3, 4))
    # 12 crossings, 14 endpoints; each string of k crossings has k+1 arcs
    assert p.n_vertices == 12 + 2 * 7
    assert p.n_edges == 3 * 5 + 4 * 4
    assert p.euler_characteristic == 2


def test_rotation_alternates():
    p = build_planarization(circular(7, 2))
    for cid, v in p.crossing_vertex.items():
        strings = [p.arc_string[d >> 1] for d in p.rotation[v]]
        assert strings[0] == strings[2] and strings[1] == strings[3] and strings[0] != strings[1]


def test_inconsistent_signs_rejected():
    d = grid(3, 3).to_dict()
    d["crossings"][4]["sign"] = -1  # the middle crossing; a corner one could be mirrored
    with pytest.raises(InstanceError, match="Euler"):
        build_planarization(arrangement_from_dict(d))


def test_uncrossed_strings_dropped(caplog):
    d = grid(1, 2).to_dict()
    d["strings"].append({"id": 9, "color": "red", "crossings": []})
    arr = arrangement_from_dict(d)
    with caplog.at_level(logging.WARNING):
        comps = split_components(arr)
    assert len(comps) == 1 and 9 not in {s.id for s in comps[0].strings}
    assert "uncrossed" in caplog.text


def test_split_components():
    d = grid(1, 1).to_dict()
    d["strings"] += [{"id": 2, "color": "red", "crossings": [1]}, {"id": 3, "color": "blue", "crossings": [1]}]
    d["crossings"].append({"id": 1, "strings": [2, 3], "sign": 1})
    arr = arrangement_from_dict(d)
    comps = split_components(arr)
    assert [sorted(s.id for s in c.strings) for c in comps] == [[0, 1], [2, 3]]
    assert build_planarization(arr).euler_characteristic == 4
    with pytest.raises(InstanceError, match="disconnected"):
        ground(build_planarization(arrangement_from_dict(d)))


def test_validation_reports():
    assert validate_pseudosegments(build_planarization(circular(8, 1))).ok
    msgs = validate_pseudosegments(build_planarization(lense())).messages()
    assert any(m.startswith("(b)") for m in msgs)
    msgs = validate_pseudosegments(build_planarization(loop(3))).messages()
    assert any(m.startswith("(a)") for m in msgs)
    msgs = validate_pseudosegments(build_planarization(ring(5))).messages()
    assert any(m.startswith("(c)") for m in msgs) and any("square-ring" in m for m in msgs)


def test_grounding_one_curve_per_endpoint_face():
    p = build_planarization(toothed(3))
    g = ground(p)
    faces_with_ends = [f for f, walk in enumerate(p.faces) if any(p.is_endpoint(p.head(d)) for d in walk)]
    assert sorted(c.face for c in g.curves) == faces_with_ends
    ends = sorted(e for c in g.curves for e in c.endpoints)
    assert ends == sorted(v for v in range(p.n_vertices) if p.is_endpoint(v))
