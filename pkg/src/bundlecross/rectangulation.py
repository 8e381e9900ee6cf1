"""Cut-sets, the greedy strategy, rectangle extraction and the graph Γ.

A cut-set is a tuple of :class:`~bundlecross.net.Segment`.  Its edges together
with the border split the squares of the net into faces; the cut-set is
saturating exactly when every such face is a rectangle, which
:func:`extract_rectangulation` verifies by labeling each face with grid
coordinates.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .net import DualNet, Segment, SegmentError, maximal_straight_path, saturates, shoot_segment

# counterclockwise: west, south, east, north
DIRS = ((-1, 0), (0, -1), (1, 0), (0, 1))

CutSet = tuple[Segment, ...]


class RectangulationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Validation and saturation
# ---------------------------------------------------------------------------


def covered_edges(segments: Iterable[Segment]) -> set[int]:
    return {e for s in segments for e in s.edges}


def interior_vertex_owner(segments: Sequence[Segment]) -> dict[int, int]:
    owner: dict[int, int] = {}
    for i, s in enumerate(segments):
        for v in s.interior_vertices():
            if v in owner:
                raise RectangulationError(f"segments {owner[v]} and {i} cross at vertex {v}")
            owner[v] = i
    return owner


def validate_cutset(n: DualNet, segments: Sequence[Segment]) -> None:
    """Raise unless ``segments`` are edge-disjoint straight paths with valid ends."""
    seen: set[int] = set()
    for i, s in enumerate(segments):
        if not s.darts:
            raise RectangulationError(f"segment {i} is empty")
        for j, d in enumerate(s.darts):
            e = d >> 1
            if n.edge_border[e]:
                raise RectangulationError(f"segment {i} uses border edge {e}")
            if e in seen:
                raise RectangulationError(f"edge {e} used twice")
            seen.add(e)
            if n.dart_vertex[d] != s.vertices[j] or n.other(d) != s.vertices[j + 1]:
                raise RectangulationError(f"segment {i} is not a path")
            if j > 0:
                w = s.vertices[j]
                if not n.is_regular(w) or n.opposite(s.darts[j - 1] ^ 1) != d:
                    raise RectangulationError(f"segment {i} bends at vertex {w}")
    owner = interior_vertex_owner(segments)
    for i, s in enumerate(segments):
        for v in s.ends:
            if n.is_regular(v) and v not in owner:
                raise RectangulationError(f"segment {i} ends at regular vertex {v} outside any segment")


def is_saturating(n: DualNet, segments: Iterable[Segment]) -> bool:
    es = covered_edges(segments)
    return all(saturates(n, es, v) for v in range(n.n_vertices))


def unsaturated_vertices(n: DualNet, segments: Iterable[Segment]) -> list[int]:
    es = covered_edges(segments)
    return [v for v in range(n.n_vertices) if not saturates(n, es, v)]


# ---------------------------------------------------------------------------
# Greedy
# ---------------------------------------------------------------------------


def _touched(segments: Iterable[Segment]) -> set[int]:
    return {v for s in segments for v in s.vertices}


def greedy_rectangulate(
    n: DualNet,
    seed_cutset: Sequence[Segment] = (),
    order: Optional[Sequence[int]] = None,
) -> CutSet:
    """Saturate the positive-exponent vertices one after the other.

    At each vertex the smallest sets of uncovered incident edges that saturate
    it are tried; the set whose shots are shortest in total wins, ties going
    to the lexicographically smallest edge ids.  Shots within one set are
    fired in edge-id order and may stop on each other.
    """
    segments = list(seed_cutset)
    covered = covered_edges(segments)
    touched = _touched(segments)
    vertices = list(order) if order is not None else list(range(n.n_vertices))
    for v in vertices:
        if n.exponents[v] == 0 or saturates(n, covered, v):
            continue
        free = sorted(e for e in n.interior_edges_at(v) if e not in covered)
        best = None
        for r in range(1, len(free) + 1):
            for subset in combinations(free, r):
                if not saturates(n, covered | set(subset), v):
                    continue
                shots = _shoot_all(n, v, subset, covered, touched)
                key = (sum(s.length for s in shots), subset)
                if best is None or key < best[0]:
                    best = (key, shots)
            if best is not None:
                break
        if best is None:
            raise RectangulationError(f"vertex {v} cannot be saturated")
        for s in best[1]:
            segments.append(s)
            covered.update(s.edges)
            touched.update(s.vertices)
    return tuple(segments)


def _shoot_all(n: DualNet, v: int, edges, covered: set[int], touched: set[int]) -> list[Segment]:
    cov = set(covered)
    tch = set(touched) | {v}
    out = []
    for e in edges:
        if e in cov:  # an earlier shot came back along it
            continue
        s = shoot_segment(n, v, e, cov, tch)
        out.append(s)
        cov.update(s.edges)
        tch.update(s.vertices)
    return out


def random_order(n: DualNet, seed: int) -> list[int]:
    order = list(range(n.n_vertices))
    random.Random(seed).shuffle(order)
    return order


# ---------------------------------------------------------------------------
# Extraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Rectangulation:
    net: DualNet
    segments: CutSet
    rects: tuple[tuple[int, ...], ...]
    square_rect: tuple[int, ...]
    labels: tuple[dict, ...] = field(repr=False)
    dims: tuple[tuple[int, int], ...] = ()

    @property
    def R(self) -> int:
        return len(self.rects)

    @property
    def S(self) -> int:
        return len(self.segments)

    @property
    def H(self) -> int:
        return self.net.n_holes

    def partition(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(r) for r in self.rects)


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def square_classes(n: DualNet, covered: set[int]) -> list[list[int]]:
    parent = list(range(n.n_squares))
    for e, sq in enumerate(n.edge_squares):
        if len(sq) == 2 and e not in covered:
            a, b = _find(parent, sq[0]), _find(parent, sq[1])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for s in range(n.n_squares):
        groups.setdefault(_find(parent, s), []).append(s)
    return sorted(groups.values())


def grid_label(n: DualNet, squares: Sequence[int], covered: set[int]) -> Optional[tuple[dict, tuple[int, int]]]:
    """Grid coordinates for ``squares`` if they form a rectangle, else ``None``.

    Squares are glued across uncovered interior edges; every other side must
    lie on the outline of the bounding box.
    """
    members = set(squares)
    start = min(members)
    pos = {start: (0, 0)}
    orient = {start: 0}  # side index facing west
    queue = [start]
    while queue:
        s = queue.pop()
        x, y = pos[s]
        for side in range(4):
            k = (side - orient[s]) % 4
            e = n.squares[s][side] >> 1
            if e in covered or n.edge_border[e]:
                continue
            nb = n.neighbor_square(s, side)
            if nb is None:
                continue
            t, j = nb
            if t not in members:
                return None
            p = (x + DIRS[k][0], y + DIRS[k][1])
            o = (j - (k + 2)) % 4
            if t in pos:
                if pos[t] != p or orient[t] != o:
                    return None
                continue
            pos[t], orient[t] = p, o
            queue.append(t)
    if len(pos) != len(members) or len(set(pos.values())) != len(pos):
        return None
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    w, h = max(xs) - min(xs) + 1, max(ys) - min(ys) + 1
    if w * h != len(members):
        return None
    x0, y0 = min(xs), min(ys)
    occupied = {p for p in pos.values()}
    for s in members:
        x, y = pos[s]
        for side in range(4):
            k = (side - orient[s]) % 4
            e = n.squares[s][side] >> 1
            q = (x + DIRS[k][0], y + DIRS[k][1])
            cut = e in covered or n.edge_border[e] or n.neighbor_square(s, side) is None
            if cut and q in occupied:
                return None
    return {s: (pos[s][0] - x0, pos[s][1] - y0) for s in members}, (w, h)


def extract_rectangulation(
    n: DualNet, segments: Sequence[Segment], require_saturating: bool = True
) -> Rectangulation:
    """Rectangles cut out by ``segments`` and the border.

    With ``require_saturating=False`` the saturation test is skipped and the
    face check alone decides.
    """
    segments = tuple(segments)
    validate_cutset(n, segments)
    if require_saturating and not is_saturating(n, segments):
        raise RectangulationError("not saturating")
    covered = covered_edges(segments)
    classes = square_classes(n, covered)
    labels, dims = [], []
    square_rect = [0] * n.n_squares
    for i, cls in enumerate(classes):
        got = grid_label(n, cls, covered)
        if got is None:
            raise RectangulationError(f"face containing square {cls[0]} is not a rectangle")
        labels.append(got[0])
        dims.append(got[1])
        for s in cls:
            square_rect[s] = i
    rect = Rectangulation(n, segments, tuple(tuple(c) for c in classes), tuple(square_rect), tuple(labels), tuple(dims))
    if n.n_squares and rect.R - rect.S + rect.H != 2:
        raise RectangulationError(f"Euler bookkeeping failed: R={rect.R} S={rect.S} H={rect.H}")
    return rect


def try_extract(n: DualNet, segments: Sequence[Segment], require_saturating: bool = True) -> Optional[Rectangulation]:
    try:
        return extract_rectangulation(n, segments, require_saturating)
    except (RectangulationError, SegmentError):
        return None


# ---------------------------------------------------------------------------
# Delimiting cut-sets
# ---------------------------------------------------------------------------


def separating_edges(n: DualNet, square_rect: Sequence[int]) -> set[int]:
    return {
        e
        for e, sq in enumerate(n.edge_squares)
        if len(sq) == 2 and square_rect[sq[0]] != square_rect[sq[1]]
    }


def _square_rect_of(n: DualNet, partition) -> list[int]:
    if isinstance(partition, Rectangulation):
        return list(partition.square_rect)
    out = [-1] * n.n_squares
    for i, part in enumerate(partition):
        for s in part:
            out[s] = i
    if -1 in out:
        raise RectangulationError("partition does not cover every square")
    return out


def ambiguous_vertices(n: DualNet, partition) -> list[int]:
    """Regular vertices whose four edges all separate rectangles."""
    sep = separating_edges(n, _square_rect_of(n, partition))
    return [
        v
        for v in range(n.n_vertices)
        if n.is_regular(v) and all((d >> 1) in sep for d in n.rot[v])
    ]


def delimiting_cutset(n: DualNet, partition, flips: Iterable[int] = ()) -> CutSet:
    """Cut-set covering exactly the separating edges of ``partition``.

    Edges are extended maximally, lowest id first.  Where four separating
    edges meet, the straight pair containing the lowest edge id runs through;
    vertices in ``flips`` use the other pair instead.
    """
    sep = separating_edges(n, _square_rect_of(n, partition))
    flips = set(flips)
    through: dict[int, int] = {}  # vertex -> parity of the through pair's positions
    for v in range(n.n_vertices):
        if n.is_regular(v) and all((d >> 1) in sep for d in n.rot[v]):
            low = min(range(4), key=lambda i: n.rot[v][i] >> 1)
            through[v] = (low % 2) ^ (1 if v in flips else 0)
    covered: set[int] = set()

    def allowed(e: int, din: int, dout: int) -> bool:
        if e not in sep or e in covered:
            return False
        v = n.dart_vertex[din]
        return v not in through or n.dart_pos[din] % 2 == through[v]

    out = []
    for e in sorted(sep):
        if e in covered:
            continue
        seg = maximal_straight_path(n, e, allowed)
        out.append(seg)
        covered.update(seg.edges)
    return tuple(out)


def rectangulation_from_partition(n: DualNet, partition, flips: Iterable[int] = ()) -> Rectangulation:
    rect = extract_rectangulation(n, delimiting_cutset(n, partition, flips))
    want = frozenset(frozenset(p) for p in (partition.rects if isinstance(partition, Rectangulation) else partition))
    if rect.partition() != want:
        raise RectangulationError("delimiting cut-set does not reproduce the partition")
    return rect


# ---------------------------------------------------------------------------
# Holes and segment ends
# ---------------------------------------------------------------------------


def hole_of(n: DualNet, v: int) -> Optional[int]:
    """Hole id of ``v``: vertex-holes first (by vertex id), then boundary-holes by curve."""
    if n.is_border[v]:
        return len(n.vertex_holes) + n.vertex_curve[v]
    if n.is_vertex_hole(v):
        return n.vertex_holes.index(v)
    return None


def hole_incidence(n: DualNet, segments: Iterable[Segment]) -> list[int]:
    """Segment ends on each hole, i.e. the degree of the hole in the dual of Γ."""
    inc = [0] * n.n_holes
    for s in segments:
        for v in s.ends:
            h = hole_of(n, v)
            if h is not None:
                inc[h] += 1
    return inc


# ---------------------------------------------------------------------------
# Bundlings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bundling:
    crossing_bundle: dict
    bundles: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.bundles)


def to_bundling(arr, n: DualNet, rect: Rectangulation) -> Bundling:
    """Bundles of crossings, one per rectangle, each checked to be a grid in the drawing."""
    p = n.planarization
    adjacent = set()
    for k in range(p.n_edges):
        a, b = p.arc_tail[k], p.arc_head[k]
        if not p.is_endpoint(a) and not p.is_endpoint(b):
            adjacent.add(frozenset((p.vertex_kind[a][1], p.vertex_kind[b][1])))
    bundles = []
    for i, squares in enumerate(rect.rects):
        at = {rect.labels[i][s]: n.square_crossing[s] for s in squares}
        for (x, y), c in at.items():
            for q in ((x + 1, y), (x, y + 1)):
                if q in at and frozenset((c, at[q])) not in adjacent:
                    raise RectangulationError(f"bundle {i} is not a grid in the drawing")
        bundles.append(tuple(sorted(at.values())))
    bundles.sort()
    assert sum(len(b) for b in bundles) == len(arr.crossings)
    return Bundling({c: i for i, b in enumerate(bundles) for c in b}, tuple(bundles))


def bundling_json(bundling: Bundling, rect: Rectangulation, t: int) -> dict:
    return {
        "bundles": [list(b) for b in bundling.bundles],
        "R": rect.R,
        "S": rect.S,
        "H": rect.H,
        "t": t,
    }


# ---------------------------------------------------------------------------
# The cubic graph Γ
# ---------------------------------------------------------------------------


@dataclass
class GammaGraph:
    """Cubic plane graph; dart ``2i``/``2i+1`` are the two sides of edge ``i``."""

    rotation: list[tuple[int, ...]]
    dart_vertex: list[int]
    edge_color: list[Optional[int]]  # segment index, None for border/link edges
    vertex_end_of: list[Optional[int]]
    faces: list[tuple[int, ...]]
    face_kind: list[str]  # "rect" or "hole"
    free_loops: int = 0

    @property
    def n_vertices(self) -> int:
        return len(self.rotation)

    @property
    def n_edges(self) -> int:
        return len(self.edge_color)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def dart_face(self) -> list[int]:
        out = [0] * (2 * self.n_edges)
        for f, walk in enumerate(self.faces):
            for d in walk:
                out[d] = f
        return out

    def dual_faces(self) -> list[tuple[int, ...]]:
        """Face walks of Γ*: one per vertex of Γ, listing the Γ faces around it."""
        df = self.dart_face()
        return [tuple(df[d] for d in rot) for rot in self.rotation]


def build_gamma(n: DualNet, rect: Rectangulation) -> GammaGraph:
    segs = rect.segments
    n_net_darts = 2 * n.n_edges
    in_h = [n.edge_border[e] for e in range(n.n_edges)]
    edge_seg: dict[int, int] = {}
    for i, s in enumerate(segs):
        for e in s.edges:
            in_h[e] = True
            edge_seg[e] = i
    through: dict[int, int] = {}  # vertex -> dart entering it along the through segment
    for s in segs:
        for j in range(1, len(s.darts)):
            through[s.vertices[j]] = s.darts[j - 1] ^ 1

    # pre-graph: net darts of H keep their ids, links get fresh ids
    pre_vertex: dict[int, int] = {}
    pre_rot: list[tuple[int, ...]] = []
    next_dart = [n_net_darts]
    link_color: dict[int, Optional[int]] = {}

    def new_edge(color: Optional[int]) -> int:
        d = next_dart[0]
        next_dart[0] += 2
        link_color[d >> 1] = color
        return d

    def add_vertex(rot: tuple[int, ...]) -> None:
        u = len(pre_rot)
        pre_rot.append(rot)
        for d in rot:
            pre_vertex[d] = u

    for v in range(n.n_vertices):
        hd = [d for d in n.rot[v] if in_h[d >> 1]]
        if not hd:
            continue
        if n.is_regular(v):
            if len(hd) == 4:
                p = n.dart_pos[through[v]]
                r = n.rot[v]
                f = new_edge(edge_seg[through[v] >> 1])
                add_vertex((r[p], r[(p + 1) % 4], f))
                add_vertex((r[(p + 2) % 4], r[(p + 3) % 4], f ^ 1))
            else:
                add_vertex(tuple(hd))
        elif n.is_border[v]:
            if len(hd) <= 3:
                add_vertex(tuple(hd))
            else:
                k = len(hd) - 2
                links = [new_edge(None) for _ in range(k - 1)]
                for j in range(1, k + 1):
                    prev = hd[0] if j == 1 else links[j - 2] ^ 1
                    nxt = hd[-1] if j == k else links[j - 1]
                    add_vertex((prev, hd[j], nxt))
        else:
            k = len(hd)
            links = [new_edge(None) for _ in range(k)]
            for i in range(k):
                add_vertex((hd[i], links[i], links[i - 1] ^ 1))

    def pre_color(d: int) -> Optional[int]:
        e = d >> 1
        return edge_seg.get(e) if d < n_net_darts else link_color[e]

    # suppress degree-2 vertices
    rotation: list[tuple[int, ...]] = []
    gv = {}
    for u, rot in enumerate(pre_rot):
        if len(rot) != 2:
            gv[u] = len(rotation)
            rotation.append(())
    gdart: dict[int, int] = {}
    edge_color: list[Optional[int]] = []
    chain_net: dict[int, list[int]] = {}
    inner: set[int] = set()  # suppressed vertices lying on some edge of Γ
    for u, rot in enumerate(pre_rot):
        if len(rot) == 2:
            continue
        for x in rot:
            if x in gdart:
                continue
            y = x
            net_darts = [x] if x < n_net_darts else []
            colors = {pre_color(x)}
            while len(pre_rot[pre_vertex[y ^ 1]]) == 2:
                inner.add(pre_vertex[y ^ 1])
                w = pre_rot[pre_vertex[y ^ 1]]
                y = w[0] if w[1] == y ^ 1 else w[1]
                if y < n_net_darts:
                    net_darts.append(y)
                colors.add(pre_color(y))
            i = len(edge_color)
            colors.discard(None)
            if len(colors) > 1:
                raise RectangulationError("two segments merged into one edge of Γ")
            edge_color.append(next(iter(colors)) if colors else None)
            gdart[x] = 2 * i
            gdart[y ^ 1] = 2 * i + 1
            chain_net[2 * i] = net_darts
            chain_net[2 * i + 1] = [d ^ 1 for d in net_darts]
    for u, rot in enumerate(pre_rot):
        if len(rot) != 2:
            rotation[gv[u]] = tuple(gdart[d] for d in rot)
    dart_vertex = [0] * (2 * len(edge_color))
    for u, rot in enumerate(rotation):
        for d in rot:
            dart_vertex[d] = u
    free_loops = _count_free_loops(pre_rot, pre_vertex, inner)

    end_dart = {}
    for i, s in enumerate(segs):
        end_dart[s.darts[0]] = i
        end_dart[s.darts[-1] ^ 1] = i
    vertex_end_of: list[Optional[int]] = [None] * len(rotation)
    for u, rot in enumerate(pre_rot):
        if len(rot) != 2:
            ends = [end_dart[d] for d in rot if d in end_dart]
            vertex_end_of[gv[u]] = ends[0] if len(ends) == 1 else None

    faces, kinds = _gamma_faces(n, rotation, dart_vertex, chain_net)
    return GammaGraph(rotation, dart_vertex, edge_color, vertex_end_of, faces, kinds, free_loops)


def _count_free_loops(pre_rot, pre_vertex, inner: set[int]) -> int:
    """Cycles made only of degree-2 vertices; each vanishes into a closed curve."""
    seen = set(inner)
    loops = 0
    for u, rot in enumerate(pre_rot):
        if len(rot) != 2 or u in seen:
            continue
        loops += 1
        stack = [u]
        while stack:
            w = stack.pop()
            if w in seen:
                continue
            seen.add(w)
            for d in pre_rot[w]:
                stack.append(pre_vertex[d ^ 1])
    return loops


def _gamma_faces(n: DualNet, rotation, dart_vertex, chain_net):
    succ = {}
    for rot in rotation:
        for i, d in enumerate(rot):
            succ[d] = rot[(i + 1) % len(rot)]
    p = n.planarization
    faces, kinds = [], []
    seen: set[int] = set()
    for d0 in range(len(dart_vertex)):
        if d0 in seen:
            continue
        walk = []
        d = d0
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = succ[d ^ 1]
        sides = {not p.is_endpoint(p.origin(x)) for g in walk for x in chain_net.get(g, [])}
        if len(sides) > 1:
            raise RectangulationError("a face of Γ mixes a rectangle and a hole")
        faces.append(tuple(walk))
        kinds.append("rect" if sides == {True} else "hole")
    return faces, kinds


@dataclass
class GammaReport:
    degenerate: bool
    cubic: bool
    vertices_ok: bool
    edges_ok: bool
    faces_ok: bool
    kinds_ok: bool
    ends_ok: bool
    dual_triangles: bool
    holes_independent: bool
    simple_gamma: bool
    simple_dual: bool
    min_hole_incidence: int
    simplicity_implication: bool  # diagnostic only, see README
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(
            (
                self.cubic,
                self.vertices_ok,
                self.edges_ok,
                self.faces_ok,
                self.kinds_ok,
                self.ends_ok,
                self.dual_triangles,
                self.holes_independent,
            )
        )


def gamma_checks(g: GammaGraph, rect: Rectangulation) -> GammaReport:
    n = rect.net
    S, R, H = rect.S, rect.R, rect.H
    inc = hole_incidence(n, rect.segments)
    min_inc = min(inc) if inc else 0
    notes = []
    if S == 0:
        notes.append("no segments: Γ has no vertices and is not simple")
        return GammaReport(
            True, True, g.n_vertices == 0, g.n_edges == 0, True, True, True, True, True,
            False, False, min_inc, True, notes,
        )
    cubic = all(len(r) == 3 for r in g.rotation)
    df = g.dart_face()
    n_rect = sum(1 for k in g.face_kind if k == "rect")
    n_hole = len(g.face_kind) - n_rect
    ends_ok = all(c is not None for c in g.vertex_end_of) and all(
        m == 2 for m in Counter(g.vertex_end_of).values()
    ) and len(set(g.vertex_end_of)) == S
    dual = g.dual_faces()
    dual_tri = all(len(f) == 3 for f in dual)
    indep = all(
        not (g.face_kind[df[2 * i]] == "hole" and g.face_kind[df[2 * i + 1]] == "hole")
        for i in range(g.n_edges)
    )
    loops = any(g.dart_vertex[2 * i] == g.dart_vertex[2 * i + 1] for i in range(g.n_edges))
    pairs = Counter(frozenset((g.dart_vertex[2 * i], g.dart_vertex[2 * i + 1])) for i in range(g.n_edges))
    simple_gamma = not loops and all(m == 1 for m in pairs.values())
    dloops = any(df[2 * i] == df[2 * i + 1] for i in range(g.n_edges))
    dpairs = Counter(frozenset((df[2 * i], df[2 * i + 1])) for i in range(g.n_edges))
    simple_dual = not dloops and all(m == 1 for m in dpairs.values())
    implication = min_inc < 3 or (simple_gamma and simple_dual)
    if not implication:
        notes.append("every hole meets three segments but Γ or Γ* has a loop or multi-edge")
    return GammaReport(
        degenerate=False,
        cubic=cubic,
        vertices_ok=g.n_vertices == 2 * S,
        edges_ok=g.n_edges == 3 * S,
        faces_ok=g.n_faces + g.free_loops == R + H,
        kinds_ok=n_rect == R and n_hole + g.free_loops == H,
        ends_ok=ends_ok,
        dual_triangles=dual_tri,
        holes_independent=indep,
        simple_gamma=simple_gamma,
        simple_dual=simple_dual,
        min_hole_incidence=min_inc,
        simplicity_implication=implication,
        notes=notes,
    )
