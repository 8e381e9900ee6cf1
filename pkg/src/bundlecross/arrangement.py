"""Combinatorial good drawings: parsing, planarization and grounding.

A drawing is given by its strings (each an ordered list of crossing ids) and
its crossings (an ordered pair of strings plus a sign fixing the local
rotation).  Nothing geometric is stored.

Sign convention: at a crossing with strings ``(a, b)`` and ``sign=+1`` the
counterclockwise rotation of the four arcs is ``(a_in, b_in, a_out, b_out)``;
``sign=-1`` is the mirror ``(a_in, b_out, a_out, b_in)``.  ``x_in`` is the arc
of string ``x`` arriving at the crossing and ``x_out`` the arc leaving it, in
the order of the string's crossing list.  For a self-crossing (``a == b``) the
first occurrence along the string plays the role of ``a``.
"""

from __future__ import annotations

import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

log = logging.getLogger(__name__)

COLORS = ("blue", "red")


class InstanceError(ValueError):
    """Raised for malformed or inconsistent instances."""


@dataclass(frozen=True)
class StringCurve:
    id: int
    crossings: tuple[int, ...]
    color: Optional[str] = None
    # Closed strings only exist to encode the square-ring counterexample.
    closed: bool = False


@dataclass(frozen=True)
class Crossing:
    id: int
    strings: tuple[int, int]
    sign: int = 1


@dataclass(frozen=True)
class Arrangement:
    strings: tuple[StringCurve, ...]
    crossings: tuple[Crossing, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_sid", {s.id: s for s in self.strings})
        object.__setattr__(self, "_by_cid", {c.id: c for c in self.crossings})

    def string(self, sid: int) -> StringCurve:
        return self._by_sid[sid]  # type: ignore[attr-defined]

    def crossing(self, cid: int) -> Crossing:
        return self._by_cid[cid]  # type: ignore[attr-defined]

    @property
    def is_colored(self) -> bool:
        return bool(self.strings) and all(s.color in COLORS for s in self.strings)

    def is_bipartite(self) -> bool:
        """True when every crossing joins a blue and a red string."""
        if not self.is_colored:
            return False
        return all(
            self.string(c.strings[0]).color != self.string(c.strings[1]).color
            for c in self.crossings
        )

    def n_arcs(self) -> int:
        return sum(len(s.crossings) + (0 if s.closed else 1) for s in self.strings)

    def without_uncrossed(self) -> "Arrangement":
        kept = tuple(s for s in self.strings if s.crossings)
        if len(kept) != len(self.strings):
            dropped = sorted(s.id for s in self.strings if not s.crossings)
            log.warning("dropping uncrossed strings %s", dropped)
            return Arrangement(kept, self.crossings)
        return self

    def to_dict(self) -> dict:
        strings = []
        for s in sorted(self.strings, key=lambda s: s.id):
            d: dict = {"id": s.id, "color": s.color, "crossings": list(s.crossings)}
            if s.closed:
                d["closed"] = True
            strings.append(d)
        crossings = [
            {"id": c.id, "strings": list(c.strings), "sign": c.sign}
            for c in sorted(self.crossings, key=lambda c: c.id)
        ]
        return {"strings": strings, "crossings": crossings}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _error_at(text: str, msg: str, pos: int) -> InstanceError:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return InstanceError(f"{msg} (line {line}, column {col})")


def parse_instance(text: str) -> Arrangement:
    """Parse the JSON instance format and check referential integrity."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _error_at(text, f"syntax error: {exc.msg}", exc.pos) from None
    return arrangement_from_dict(data)


def arrangement_from_dict(data: dict) -> Arrangement:
    if not isinstance(data, dict) or "strings" not in data or "crossings" not in data:
        raise InstanceError("instance must be an object with 'strings' and 'crossings'")
    strings = []
    for raw in data["strings"]:
        color = raw.get("color")
        if color is not None and color not in COLORS:
            raise InstanceError(f"string {raw.get('id')}: unknown color {color!r}")
        strings.append(
            StringCurve(
                id=int(raw["id"]),
                crossings=tuple(int(c) for c in raw.get("crossings", ())),
                color=color,
                closed=bool(raw.get("closed", False)),
            )
        )
    crossings = []
    for raw in data["crossings"]:
        ends = raw.get("strings", [])
        if len(ends) != 2:
            raise InstanceError(
                f"crossing arity: crossing {raw.get('id')} lists {len(ends)} strings"
            )
        sign = int(raw.get("sign", 1))
        if sign not in (1, -1):
            raise InstanceError(f"crossing {raw.get('id')}: sign must be 1 or -1")
        crossings.append(Crossing(int(raw["id"]), (int(ends[0]), int(ends[1])), sign))
    arr = Arrangement(tuple(strings), tuple(crossings))
    check_integrity(arr)
    return arr


def check_integrity(arr: Arrangement) -> None:
    sids = [s.id for s in arr.strings]
    if len(set(sids)) != len(sids):
        raise InstanceError("duplicate string id")
    cids = [c.id for c in arr.crossings]
    if len(set(cids)) != len(cids):
        raise InstanceError("duplicate crossing id")
    known = set(cids)
    seen: dict[int, list[int]] = defaultdict(list)
    for s in arr.strings:
        for cid in s.crossings:
            if cid not in known:
                raise InstanceError(f"dangling crossing reference {cid} in string {s.id}")
            seen[cid].append(s.id)
    for c in arr.crossings:
        for sid in c.strings:
            if sid not in arr._by_sid:  # type: ignore[attr-defined]
                raise InstanceError(f"crossing {c.id} references unknown string {sid}")
        if sorted(seen[c.id]) != sorted(c.strings):
            raise InstanceError(
                f"crossing {c.id} joins {list(c.strings)} but appears on strings {seen[c.id]}"
            )


def split_components(arr: Arrangement) -> list[Arrangement]:
    """Partition by connectivity of the union of strings (uncrossed strings dropped)."""
    arr = arr.without_uncrossed()
    parent = {s.id: s.id for s in arr.strings}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in arr.crossings:
        a, b = find(c.strings[0]), find(c.strings[1])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[StringCurve]] = defaultdict(list)
    for s in arr.strings:
        groups[find(s.id)].append(s)
    out = []
    for root in sorted(groups):
        members = groups[root]
        ids = {s.id for s in members}
        xs = tuple(c for c in arr.crossings if c.strings[0] in ids)
        out.append(Arrangement(tuple(members), xs))
    return out


# ---------------------------------------------------------------------------
# Planarization
# ---------------------------------------------------------------------------

CROSSING = "crossing"
END = "end"


@dataclass(frozen=True)
class Planarization:
    """Plane combinatorial map of a drawing.

    Arc ``k`` has darts ``2k`` (along the string) and ``2k+1`` (against it).
    ``rotation[v]`` lists the darts leaving ``v`` counterclockwise.  Faces are
    orbits of ``next(d) = successor of twin(d) in the rotation at its origin``.
    """

    arrangement: Arrangement
    vertex_kind: tuple[tuple, ...]
    arc_string: tuple[int, ...]
    arc_tail: tuple[int, ...]
    arc_head: tuple[int, ...]
    rotation: tuple[tuple[int, ...], ...]
    faces: tuple[tuple[int, ...], ...]
    dart_face: tuple[int, ...]
    crossing_vertex: dict = field(repr=False)
    string_arcs: dict = field(repr=False)
    _succ: tuple[int, ...] = field(repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_kind)

    @property
    def n_edges(self) -> int:
        return len(self.arc_string)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    def origin(self, dart: int) -> int:
        return self.arc_tail[dart >> 1] if dart % 2 == 0 else self.arc_head[dart >> 1]

    def head(self, dart: int) -> int:
        return self.origin(dart ^ 1)

    def next_in_face(self, dart: int) -> int:
        return self._succ[dart ^ 1]

    def is_endpoint(self, v: int) -> bool:
        return self.vertex_kind[v][0] == END

    def endpoints(self) -> list[int]:
        return [v for v, k in enumerate(self.vertex_kind) if k[0] == END]


def build_planarization(arr: Arrangement) -> Planarization:
    """Replace crossings by degree-4 vertices and trace the faces.

    Raises InstanceError when the Euler check fails.
    """
    arr = arr.without_uncrossed()
    vertex_kind: list[tuple] = []
    crossing_vertex: dict[int, int] = {}
    for c in sorted(arr.crossings, key=lambda c: c.id):
        crossing_vertex[c.id] = len(vertex_kind)
        vertex_kind.append((CROSSING, c.id))

    arc_string: list[int] = []
    arc_tail: list[int] = []
    arc_head: list[int] = []
    string_arcs: dict[int, tuple[int, ...]] = {}
    # (crossing id, occurrence role 0/1) -> (in_dart, out_dart)
    ports: dict[tuple[int, int], tuple[int, int]] = {}
    occurrences: dict[int, int] = defaultdict(int)

    for s in sorted(arr.strings, key=lambda s: s.id):
        seq = [crossing_vertex[c] for c in s.crossings]
        if s.closed:
            nodes = seq + [seq[0]]
        else:
            start = len(vertex_kind)
            vertex_kind.append((END, s.id, 0))
            vertex_kind.append((END, s.id, 1))
            nodes = [start] + seq + [start + 1]
        arcs = []
        for u, w in zip(nodes, nodes[1:]):
            arcs.append(len(arc_string))
            arc_string.append(s.id)
            arc_tail.append(u)
            arc_head.append(w)
        string_arcs[s.id] = tuple(arcs)
        n = len(s.crossings)
        for i, cid in enumerate(s.crossings):
            if s.closed:
                arc_in, arc_out = arcs[(i - 1) % n], arcs[i]
            else:
                arc_in, arc_out = arcs[i], arcs[i + 1]
            a, b = arr.crossing(cid).strings
            if a == b:
                role = occurrences[cid]
                occurrences[cid] += 1
            else:
                role = 0 if s.id == a else 1
            ports[(cid, role)] = (2 * arc_in + 1, 2 * arc_out)

    rotation: list[tuple[int, ...]] = [() for _ in vertex_kind]
    for c in arr.crossings:
        a_in, a_out = ports[(c.id, 0)]
        b_in, b_out = ports[(c.id, 1)]
        if c.sign == 1:
            rot = (a_in, b_in, a_out, b_out)
        else:
            rot = (a_in, b_out, a_out, b_in)
        rotation[crossing_vertex[c.id]] = rot
    for k, (u, w) in enumerate(zip(arc_tail, arc_head)):
        if vertex_kind[u][0] == END:
            rotation[u] = (2 * k,)
        if vertex_kind[w][0] == END:
            rotation[w] = (2 * k + 1,)

    n_darts = 2 * len(arc_string)
    succ = [0] * n_darts
    for rot in rotation:
        for i, d in enumerate(rot):
            succ[d] = rot[(i + 1) % len(rot)]

    dart_face = [-1] * n_darts
    faces: list[tuple[int, ...]] = []
    for d0 in range(n_darts):
        if dart_face[d0] >= 0:
            continue
        walk = []
        d = d0
        while dart_face[d] < 0:
            dart_face[d] = len(faces)
            walk.append(d)
            d = succ[d ^ 1]
        faces.append(tuple(walk))

    p = Planarization(
        arrangement=arr,
        vertex_kind=tuple(vertex_kind),
        arc_string=tuple(arc_string),
        arc_tail=tuple(arc_tail),
        arc_head=tuple(arc_head),
        rotation=tuple(rotation),
        faces=tuple(faces),
        dart_face=tuple(dart_face),
        crossing_vertex=crossing_vertex,
        string_arcs=string_arcs,
        _succ=tuple(succ),
    )
    # face tracing keeps components apart, so each contributes a sphere
    n_comp = len(split_components(arr)) if arr.strings else 1
    if p.euler_characteristic != 2 * n_comp:
        raise InstanceError(
            "Euler check failed: not a sphere drawing / inconsistent signs "
            f"(V-E+F={p.euler_characteristic}, expected {2 * n_comp})"
        )
    return p


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    self_crossings: list[int] = field(default_factory=list)
    multiple_crossings: list[tuple[int, int]] = field(default_factory=list)
    closed_strings: list[int] = field(default_factory=list)
    net_patterns: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.self_crossings
            or self.multiple_crossings
            or self.closed_strings
            or self.net_patterns
        )

    def messages(self) -> list[str]:
        out = [f"(a) string {s} crosses itself" for s in self.self_crossings]
        out += [f"(b) strings {a} and {b} cross more than once (lense)" for a, b in self.multiple_crossings]
        out += [f"(c) string {s} is closed" for s in self.closed_strings]
        out += [f"(d) {m}" for m in self.net_patterns]
        return out


def validate_pseudosegments(p: Planarization, check_net: bool = True) -> ValidationReport:
    """Report every way in which the drawing fails to be a family of pseudosegments."""
    arr = p.arrangement
    report = ValidationReport()
    pair_count: dict[tuple[int, int], int] = defaultdict(int)
    for c in arr.crossings:
        a, b = c.strings
        if a == b:
            if a not in report.self_crossings:
                report.self_crossings.append(a)
        else:
            pair_count[(min(a, b), max(a, b))] += 1
    report.self_crossings.sort()
    report.multiple_crossings = sorted(k for k, n in pair_count.items() if n > 1)
    report.closed_strings = sorted(s.id for s in arr.strings if s.closed)
    if check_net and len(split_components(arr)) == 1:
        from .net import build_net, detect_forbidden_patterns

        report.net_patterns = detect_forbidden_patterns(build_net(ground(p))).messages()
    return report


# ---------------------------------------------------------------------------
# Grounding
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryCurve:
    face: int
    endpoints: tuple[int, ...]


@dataclass(frozen=True)
class GroundedArrangement:
    """Planarization plus one boundary curve per face holding endpoints.

    The cells of the grounded map that are not bounded by a single boundary
    curve are listed in ``cells``: each is a run of a face walk between two
    consecutive endpoints (border cells) or a whole face without endpoints.
    """

    planarization: Planarization
    curves: tuple[BoundaryCurve, ...]
    cells: tuple[tuple[int, ...], ...]
    cell_curve: tuple[Optional[int], ...]
    dart_cell: tuple[int, ...]


def ground(p: Planarization) -> GroundedArrangement:
    if len(split_components(p.arrangement)) != 1:
        raise InstanceError("disconnected drawing: split components first")
    curves: list[BoundaryCurve] = []
    cells: list[tuple[int, ...]] = []
    cell_curve: list[Optional[int]] = []
    for fi, walk in enumerate(p.faces):
        # positions right after the walk enters an endpoint
        cuts = [i for i, d in enumerate(walk) if p.is_endpoint(p.head(d))]
        if not cuts:
            cells.append(walk)
            cell_curve.append(None)
            continue
        # rotate so the walk starts just after entering an endpoint
        start = (cuts[0] + 1) % len(walk)
        walk = walk[start:] + walk[:start]
        ends = []
        run: list[int] = []
        ci = len(curves)
        for d in walk:
            run.append(d)
            if p.is_endpoint(p.head(d)):
                ends.append(p.head(d))
                cells.append(tuple(run))
                cell_curve.append(ci)
                run = []
        assert not run
        # cyclic order: the endpoint opening the first cell comes first
        ends = ends[-1:] + ends[:-1]
        curves.append(BoundaryCurve(fi, tuple(ends)))
    dart_cell = [0] * (2 * p.n_edges)
    for ci, cell in enumerate(cells):
        for d in cell:
            dart_cell[d] = ci
    return GroundedArrangement(p, tuple(curves), tuple(cells), tuple(cell_curve), tuple(dart_cell))
