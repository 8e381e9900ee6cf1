"""The dual net of a grounded arrangement.

Net vertices are the cells of the grounded map (boundary-hole interiors
excluded) and net edges are the string arcs, so a net dart is identified with
the planarization dart it crosses: dart ``d`` sits at vertex ``dart_vertex[d]``
and its twin ``d ^ 1`` at the other end.  The rotation at a vertex is the
order of its cell walk; for a border vertex the first and last darts are the
two border edges and the hole lies between them.  Between two consecutive
darts of a rotation sits exactly one square (a crossing).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

from .arrangement import GroundedArrangement

REGULAR = "regular"
BORDER = "border"
VERTEX_HOLE = "vertex-hole"


@dataclass(frozen=True, eq=False)
class DualNet:
    grounded: GroundedArrangement
    rot: tuple[tuple[int, ...], ...]
    is_border: tuple[bool, ...]
    dart_vertex: tuple[int, ...]
    dart_pos: tuple[int, ...]
    edge_border: tuple[bool, ...]
    edge_color: tuple[Optional[str], ...]
    squares: tuple[tuple[int, ...], ...]
    square_crossing: tuple[int, ...]
    edge_squares: tuple[tuple[int, ...], ...]
    hole_darts: tuple[tuple[int, ...], ...]
    vertex_curve: tuple[Optional[int], ...]
    _crossing_square: dict = field(repr=False)

    # -- sizes ---------------------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return len(self.rot)

    @property
    def n_edges(self) -> int:
        return len(self.edge_border)

    @property
    def n_squares(self) -> int:
        return len(self.squares)

    @property
    def n_boundary_holes(self) -> int:
        return len(self.hole_darts)

    @property
    def n_faces(self) -> int:
        return self.n_squares + self.n_boundary_holes

    @property
    def planarization(self):
        return self.grounded.planarization

    # -- local structure -----------------------------------------------------
    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def ends(self, e: int) -> tuple[int, int]:
        return self.dart_vertex[2 * e], self.dart_vertex[2 * e + 1]

    def other(self, dart: int) -> int:
        return self.dart_vertex[dart ^ 1]

    def kind(self, v: int) -> str:
        if self.is_border[v]:
            return BORDER
        return REGULAR if len(self.rot[v]) == 4 else VERTEX_HOLE

    def is_regular(self, v: int) -> bool:
        return not self.is_border[v] and len(self.rot[v]) == 4

    def is_vertex_hole(self, v: int) -> bool:
        return not self.is_border[v] and len(self.rot[v]) != 4

    def opposite(self, dart: int) -> int:
        """Dart opposite to ``dart`` in the rotation of a regular vertex."""
        v = self.dart_vertex[dart]
        return self.rot[v][(self.dart_pos[dart] + 2) % 4]

    def incident_edges(self, v: int) -> list[int]:
        seen: list[int] = []
        for d in self.rot[v]:
            if d >> 1 not in seen:
                seen.append(d >> 1)
        return seen

    def interior_edges_at(self, v: int) -> list[int]:
        return [e for e in self.incident_edges(v) if not self.edge_border[e]]

    def square_of_crossing(self, cid: int) -> int:
        return self._crossing_square[cid]

    def angle_square(self, v: int, j: int) -> int:
        """Square between rotation positions ``j`` and ``j+1`` at ``v``."""
        d = self.rot[v][j]
        p = self.planarization
        return self._crossing_square[p.vertex_kind[p.head(d)][1]]

    def neighbor_square(self, s: int, side: int) -> Optional[tuple[int, int]]:
        """Square across ``side`` of square ``s`` and the side index there."""
        d = self.squares[s][side]
        p = self.planarization
        h = p.head(d)
        if p.is_endpoint(h):
            return None
        t = self._crossing_square[p.vertex_kind[h][1]]
        return t, self.squares[t].index(d ^ 1)

    def corner_vertex(self, s: int, side: int) -> int:
        """Net vertex between sides ``side`` and ``side+1`` of square ``s``."""
        return self.dart_vertex[self.squares[s][(side + 1) % 4]]

    # -- classification ------------------------------------------------------
    @cached_property
    def vertex_holes(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n_vertices) if self.is_vertex_hole(v))

    @cached_property
    def n_holes(self) -> int:
        return len(self.vertex_holes) + self.n_boundary_holes

    @cached_property
    def n_odd_holes(self) -> int:
        return sum(1 for v in self.vertex_holes if self.degree(v) % 2)

    def hole_vertices(self, h: int) -> list[int]:
        """Border vertices on boundary-hole ``h`` in curve order (no repeats)."""
        out: list[int] = []
        for d in self.hole_darts[h]:
            v = self.dart_vertex[d]
            if v not in out:
                out.append(v)
        return out

    @cached_property
    def exponents(self) -> tuple[int, ...]:
        return tuple(exponent_of(self.kind(v), self.degree(v)) for v in range(self.n_vertices))

    @cached_property
    def total_exponent(self) -> int:
        return sum(self.exponents)

    @property
    def is_colored(self) -> bool:
        return all(c is not None for c in self.edge_color)


def exponent_of(kind: str, degree: int) -> int:
    if kind == REGULAR:
        return 0
    if kind == BORDER:
        return max(degree // 2 - 1, 0)
    return (degree + 1) // 2


def build_net(g: GroundedArrangement) -> DualNet:
    p = g.planarization
    arr = p.arrangement
    rot = g.cells
    dart_vertex = g.dart_cell
    dart_pos = [0] * len(dart_vertex)
    for cell in rot:
        for i, d in enumerate(cell):
            dart_pos[d] = i
    n_edges = p.n_edges
    edge_border = tuple(
        p.is_endpoint(p.arc_tail[k]) or p.is_endpoint(p.arc_head[k]) for k in range(n_edges)
    )
    edge_color = tuple(arr.string(p.arc_string[k]).color for k in range(n_edges))
    crossings = sorted(p.crossing_vertex)
    crossing_square = {cid: i for i, cid in enumerate(crossings)}
    squares = tuple(p.rotation[p.crossing_vertex[cid]] for cid in crossings)
    edge_squares = []
    for k in range(n_edges):
        sq = []
        for v in (p.arc_tail[k], p.arc_head[k]):
            if not p.is_endpoint(v):
                sq.append(crossing_square[p.vertex_kind[v][1]])
        edge_squares.append(tuple(sq))
    hole_darts = []
    for curve in g.curves:
        darts = []
        for ep in curve.endpoints:
            (d,) = p.rotation[ep]  # leaving the endpoint along its end arc
            darts.append(d)
        hole_darts.append(tuple(darts))
    return DualNet(
        grounded=g,
        rot=rot,
        is_border=tuple(c is not None for c in g.cell_curve),
        dart_vertex=dart_vertex,
        dart_pos=tuple(dart_pos),
        edge_border=edge_border,
        edge_color=edge_color,
        squares=squares,
        square_crossing=tuple(crossings),
        edge_squares=tuple(edge_squares),
        hole_darts=tuple(hole_darts),
        vertex_curve=g.cell_curve,
        _crossing_square=crossing_square,
    )


def net_from_arrangement(arr) -> DualNet:
    from .arrangement import build_planarization, ground

    return build_net(ground(build_planarization(arr)))


@dataclass(frozen=True)
class VertexClasses:
    kinds: tuple[str, ...]
    degrees: tuple[int, ...]
    n_holes: int
    n_odd_holes: int

    def count(self, kind: str) -> int:
        return sum(1 for k in self.kinds if k == kind)


def classify_vertices(n: DualNet) -> VertexClasses:
    return VertexClasses(
        kinds=tuple(n.kind(v) for v in range(n.n_vertices)),
        degrees=tuple(n.degree(v) for v in range(n.n_vertices)),
        n_holes=n.n_holes,
        n_odd_holes=n.n_odd_holes,
    )


# ---------------------------------------------------------------------------
# Saturation and exponents
# ---------------------------------------------------------------------------


def _cut_positions(n: DualNet, v: int, edges: Iterable[int] | set[int]) -> list[int]:
    es = edges if isinstance(edges, (set, frozenset)) else set(edges)
    return [i for i, d in enumerate(n.rot[v]) if (d >> 1) in es or n.edge_border[d >> 1]]


def angle_sizes(n: DualNet, v: int, edges) -> Optional[list[int]]:
    """Number of squares seen by each angle that ``edges`` (with the border) induce at ``v``.

    ``None`` when no edge is incident to an interior vertex.
    """
    cuts = _cut_positions(n, v, edges)
    d = n.degree(v)
    if n.is_border[v]:
        return [b - a for a, b in zip(cuts, cuts[1:])]
    if not cuts:
        return None
    return [((cuts[(i + 1) % len(cuts)] - c - 1) % d) + 1 for i, c in enumerate(cuts)]


def saturates(n: DualNet, edges, v: int) -> bool:
    sizes = angle_sizes(n, v, edges)
    if sizes is None:
        return n.is_regular(v)
    return all(s <= 2 for s in sizes)


def relative_exponent(n: DualNet, edges, v: int) -> int:
    """Fewest edges at ``v`` that must join ``edges`` to saturate ``v``."""
    sizes = angle_sizes(n, v, edges)
    if sizes is None:
        return 0 if n.is_regular(v) else (n.degree(v) + 1) // 2
    return sum((s + 1) // 2 - 1 for s in sizes)


def relative_exponent_brute(n: DualNet, edges, v: int) -> int:
    """Enumeration oracle for :func:`relative_exponent`."""
    es = set(edges)
    free = [e for e in n.interior_edges_at(v) if e not in es]
    for r in range(len(free) + 1):
        for extra in combinations(free, r):
            if saturates(n, es | set(extra), v):
                return r
    raise AssertionError("vertex cannot be saturated")


def exponent(n: DualNet) -> tuple[tuple[int, ...], int]:
    return n.exponents, n.total_exponent


# ---------------------------------------------------------------------------
# Straight paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    """Straight path given by the darts walked from its first vertex."""

    darts: tuple[int, ...]
    vertices: tuple[int, ...]
    start_end: str = "hole"
    stop_end: str = "hole"

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(d >> 1 for d in self.darts)

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def interior_vertices(self) -> tuple[int, ...]:
        return self.vertices[1:-1]


class SegmentError(ValueError):
    pass


def shoot_segment(n: DualNet, v: int, e: int, covered: set[int], touched: set[int]) -> Segment:
    """Shoot from ``v`` along edge ``e`` until a hole or an existing segment.

    ``covered`` holds edges of existing segments and ``touched`` the vertices
    they pass through or end at.
    """
    if e in covered:
        raise SegmentError(f"edge {e} is already covered")
    start = next(d for d in n.rot[v] if d >> 1 == e)
    darts = [start]
    vertices = [v]
    seen = {v}
    d = start
    while True:
        w = n.other(d)
        vertices.append(w)
        if not n.is_regular(w):
            return Segment(tuple(darts), tuple(vertices), "hole", "hole")
        if w in touched:
            return Segment(tuple(darts), tuple(vertices), "hole", "segment")
        if w in seen:
            return Segment(tuple(darts), tuple(vertices), "hole", "self")
        seen.add(w)
        d = n.opposite(d ^ 1)
        darts.append(d)


def maximal_straight_path(n: DualNet, e: int, allowed) -> Segment:
    """Extend edge ``e`` both ways through regular vertices along ``allowed`` edges."""

    def run(d: int) -> list[int]:
        out = [d]
        used = {d >> 1}
        while True:
            w = n.other(d)
            if not n.is_regular(w):
                return out
            nd = n.opposite(d ^ 1)
            if nd >> 1 in used or not allowed(nd >> 1, d ^ 1, nd):
                return out
            used.add(nd >> 1)
            out.append(nd)
            d = nd

    fwd = run(2 * e)
    back = run(2 * e + 1)
    darts = [d ^ 1 for d in reversed(back[1:])] + fwd
    vertices = [n.dart_vertex[darts[0]]] + [n.other(d) for d in darts]
    return Segment(tuple(darts), tuple(vertices))


# ---------------------------------------------------------------------------
# Patterns
# ---------------------------------------------------------------------------


def toothed_kind(degrees: list[int]) -> Optional[str]:
    if not degrees:
        return None
    rest = sorted(degrees)
    if rest[-1] == 7 and all(x == 3 for x in rest[:-1]):
        return "a"
    if len(rest) >= 2 and rest[-1] == rest[-2] == 5 and all(x == 3 for x in rest[:-2]):
        return "b"
    return None


def detect_toothed_holes(n: DualNet) -> int:
    return sum(
        1
        for h in range(n.n_boundary_holes)
        if toothed_kind([n.degree(v) for v in n.hole_vertices(h)]) is not None
    )


@dataclass
class PatternReport:
    square_rings: list[int] = field(default_factory=list)
    square_loops: list[int] = field(default_factory=list)
    low_degree_holes: list[int] = field(default_factory=list)
    boundary_holes_c: list[int] = field(default_factory=list)
    boundary_holes_d: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.messages()

    def messages(self) -> list[str]:
        out = [f"square-ring through square {s}" for s in self.square_rings]
        out += [f"square-loop through square {s}" for s in self.square_loops]
        out += [f"vertex-hole {v} of degree < 3" for v in self.low_degree_holes]
        out += [f"boundary-hole {h}: one degree-5 vertex, rest degree 3" for h in self.boundary_holes_c]
        out += [f"boundary-hole {h}: all vertices of degree 3" for h in self.boundary_holes_d]
        return out


def _strip(n: DualNet, s: int, side: int) -> tuple[str, list[int]]:
    """Walk from square ``s`` across opposite sides starting through ``side``."""
    visited = {s: side % 2}
    order = [s]
    cur, out_side = s, side
    while True:
        nxt = n.neighbor_square(cur, out_side)
        if nxt is None:
            return "open", order
        t, in_side = nxt
        if t in visited:
            if t == s and visited[t] == in_side % 2:
                return "ring", order
            return "loop", order
        visited[t] = in_side % 2
        order.append(t)
        cur, out_side = t, (in_side + 2) % 4


def detect_forbidden_patterns(n: DualNet) -> PatternReport:
    rep = PatternReport()
    for s in range(n.n_squares):
        for axis in (0, 1):
            status, order = _strip(n, s, axis)
            if status == "open":
                status2, order2 = _strip(n, s, axis + 2)
                if status2 == "open":
                    continue
                status, order = status2, order2
            first = min(order)
            bucket = rep.square_rings if status == "ring" else rep.square_loops
            if first not in bucket:
                bucket.append(first)
    rep.low_degree_holes = [v for v in n.vertex_holes if n.degree(v) <= 2]
    for h in range(n.n_boundary_holes):
        degs = sorted(n.degree(v) for v in n.hole_vertices(h))
        if all(x == 3 for x in degs):
            rep.boundary_holes_d.append(h)
        elif degs[-1] == 5 and all(x == 3 for x in degs[:-1]):
            rep.boundary_holes_c.append(h)
    return rep


def dump_net(n: DualNet) -> str:
    """Debug dump: vertices with tags, edges with colors, faces with tags."""
    lines = [f"net V={n.n_vertices} E={n.n_edges} F={n.n_faces} H={n.n_holes}"]
    for v in range(n.n_vertices):
        nbrs = " ".join(f"{d >> 1}->{n.other(d)}" for d in n.rot[v])
        lines.append(f"v {v} {n.kind(v)} deg={n.degree(v)} exp={n.exponents[v]} : {nbrs}")
    for e in range(n.n_edges):
        a, b = n.ends(e)
        tag = "border" if n.edge_border[e] else "interior"
        lines.append(f"e {e} {a} {b} {tag} {n.edge_color[e] or '-'}")
    for s in range(n.n_squares):
        sides = " ".join(str(d >> 1) for d in n.squares[s])
        lines.append(f"f {s} square crossing={n.square_crossing[s]} : {sides}")
    for h in range(n.n_boundary_holes):
        sides = " ".join(str(d >> 1) for d in n.hole_darts[h])
        lines.append(f"f {n.n_squares + h} boundary-hole curve={h} : {sides}")
    return "\n".join(lines)
