"""Exact solvers used as ground truth, and the inequality verifier.

Everything here is exponential except :func:`ortho_exact`, which solves the
orthogonal-polygon case through a maximum matching in the bipartite conflict
graph of good segments.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

from .bipartite import GainGraph, gain_def
from .net import DualNet
from .rectangulation import (
    Rectangulation,
    ambiguous_vertices,
    delimiting_cutset,
    grid_label,
    hole_incidence,
    rectangulation_from_partition,
)

DEFAULT_CAP = 20


class OracleTooLarge(ValueError):
    pass


def oracle_cap(cap: Optional[int] = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("BUNDLE_ORACLE_CAP")
    return int(env) if env else DEFAULT_CAP


# ---------------------------------------------------------------------------
# Minimum rectangulation of a net
# ---------------------------------------------------------------------------


def _step(n: DualNet, s: int, o: int, k: int) -> Optional[tuple[int, int]]:
    """Square next to ``s`` in grid direction ``k`` when side ``o`` of ``s`` faces west."""
    nb = n.neighbor_square(s, (o + k) % 4)
    if nb is None:
        return None
    t, j = nb
    return t, (j - (k + 2)) % 4


def enumerate_rectangles(n: DualNet) -> list[tuple[int, ...]]:
    """Every set of squares that is a rectangle on its own, as sorted tuples."""
    found: set[tuple[int, ...]] = set()
    for s0 in range(n.n_squares):
        for o0 in range(4):
            col = [(s0, o0)]
            while True:  # extend northwards
                rows = []
                width = None
                for s, o in col:
                    row = [(s, o)]
                    while width is None or len(row) < width:
                        nxt = _step(n, row[-1][0], row[-1][1], 2)
                        if nxt is None:
                            break
                        row.append(nxt)
                    rows.append(row)
                    width = len(row) if width is None else min(width, len(row))
                for w in range(1, width + 1):
                    cells = tuple(sorted({sq for row in rows for sq, _ in row[:w]}))
                    if len(cells) != w * len(rows) or cells in found:
                        continue
                    members = set(cells)
                    inner = {
                        e
                        for e, sq in enumerate(n.edge_squares)
                        if len(sq) == 2 and sq[0] in members and sq[1] in members
                    }
                    cut = set(range(n.n_edges)) - inner
                    got = grid_label(n, cells, cut)
                    if got is not None:
                        found.add(cells)
                nxt = _step(n, col[-1][0], col[-1][1], 3)
                if nxt is None or len(col) >= n.n_squares:
                    break
                col.append(nxt)
    return sorted(found, key=lambda c: (len(c), c))


@dataclass
class OptStats:
    R_opt: int
    S_opt: int
    delta: int
    H: int
    H_odd: int
    H_2: int
    t: int
    witnesses: list[Rectangulation] = field(repr=False)
    n_optimal: int = 0
    complete: bool = True
    holes_meet_two: bool = True
    ambiguous: int = 0
    S_variants: tuple[int, ...] = ()

    @property
    def witness(self) -> Rectangulation:
        return self.witnesses[0]


def min_partitions(n: DualNet, limit: int = 2000) -> tuple[int, list[list[tuple[int, ...]]], bool]:
    """Minimum number of rectangles and up to ``limit`` optimal partitions."""
    rects = enumerate_rectangles(n)
    masks = [sum(1 << s for s in r) for r in rects]
    by_low: dict[int, list[int]] = {}
    for i, r in enumerate(rects):
        for s in r:
            by_low.setdefault(s, []).append(i)
    full = (1 << n.n_squares) - 1

    @lru_cache(maxsize=None)
    def best(covered: int) -> int:
        if covered == full:
            return 0
        low = (~covered & (covered + 1)).bit_length() - 1
        out = n.n_squares + 1
        for i in by_low[low]:
            if masks[i] & covered:
                continue
            out = min(out, 1 + best(covered | masks[i]))
        return out

    r_opt = best(0)
    parts: list[list[tuple[int, ...]]] = []
    complete = True

    def walk(covered: int, chosen: list[int]) -> None:
        nonlocal complete
        if len(parts) >= limit:
            complete = False
            return
        if covered == full:
            parts.append([rects[i] for i in chosen])
            return
        low = (~covered & (covered + 1)).bit_length() - 1
        for i in by_low[low]:
            if masks[i] & covered:
                continue
            if 1 + best(covered | masks[i]) == best(covered):
                walk(covered | masks[i], chosen + [i])

    walk(0, [])
    best.cache_clear()
    return r_opt, parts, complete


def brute_force_min_rectangulation(
    n: DualNet, cap: Optional[int] = None, limit: int = 2000, check_ambiguous: bool = True
) -> OptStats:
    from .net import detect_toothed_holes

    cap = oracle_cap(cap)
    if n.n_squares > cap:
        raise OracleTooLarge(f"instance too large for oracle ({n.n_squares} squares > {cap})")
    t = detect_toothed_holes(n)
    if n.n_squares == 0:
        return OptStats(0, 0, 0, n.n_holes, n.n_odd_holes, 0, t, [], 0)
    r_opt, parts, complete = min_partitions(n, limit)
    witnesses = [rectangulation_from_partition(n, p) for p in parts]
    incid = [hole_incidence(n, w.segments) for w in witnesses]
    delta = min(min(inc) for inc in incid)
    h2 = max(sum(1 for x in inc if x <= 2) for inc in incid)
    holes_meet_two = r_opt < 2 or all(min(inc) >= 2 for inc in incid)
    s_opt = witnesses[0].S
    amb = ambiguous_vertices(n, parts[0])
    variants = {s_opt}
    if check_ambiguous and 0 < len(amb) <= 10:
        for k in range(1, len(amb) + 1):
            for flips in combinations(amb, k):
                variants.add(len(delimiting_cutset(n, parts[0], flips)))
    return OptStats(
        R_opt=r_opt,
        S_opt=s_opt,
        delta=delta,
        H=n.n_holes,
        H_odd=n.n_odd_holes,
        H_2=h2,
        t=t,
        witnesses=witnesses,
        n_optimal=len(parts),
        complete=complete,
        holes_meet_two=holes_meet_two,
        ambiguous=len(amb),
        S_variants=tuple(sorted(variants)),
    )


# ---------------------------------------------------------------------------
# Maximum gain
# ---------------------------------------------------------------------------


def brute_force_max_gain(n: DualNet, g: GainGraph, cap: int = 20) -> tuple[list[int], int]:
    """Best subset of B by the defining equation; smallest size, then lexicographic, on ties."""
    if g.n_b > cap:
        raise OracleTooLarge(f"too many segments for gain oracle ({g.n_b} > {cap})")
    best: Optional[tuple[int, list[int]]] = None
    for r in range(g.n_b + 1):
        for subset in combinations(range(g.n_b), r):
            val = gain_def(n, [g.segments[i] for i in subset]).g
            if best is None or val > best[0]:
                best = (val, list(subset))
    assert best is not None
    return best[1], best[0]


# ---------------------------------------------------------------------------
# Orthogonal polygons
# ---------------------------------------------------------------------------

Point = tuple[int, int]
OSegment = tuple[Point, Point]
UNIT = {"W": (-1, 0), "S": (0, -1), "E": (1, 0), "N": (0, 1)}


class PolygonError(ValueError):
    pass


@dataclass(frozen=True)
class OrthoPolygon:
    """Simple orthogonal polygon given by its unit cells ``(x, y)`` = ``[x, x+1] x [y, y+1]``."""

    cells: frozenset

    def __post_init__(self) -> None:
        from .generators import is_simply_connected

        if not self.cells:
            raise PolygonError("degenerate polygon (zero area)")
        if not is_simply_connected(self.cells):
            raise PolygonError("cells do not form a simply connected region")
        for p in self.points():
            ins = self._around(p)
            if ins == (True, False, False, True) or ins == (False, True, True, False):
                raise PolygonError(f"boundary touches itself at {p}")

    def _around(self, p: Point) -> tuple[bool, bool, bool, bool]:
        x, y = p
        c = self.cells
        return ((x - 1, y - 1) in c, (x, y - 1) in c, (x - 1, y) in c, (x, y) in c)

    def points(self) -> list[Point]:
        return sorted({(x + dx, y + dy) for x, y in self.cells for dx in (0, 1) for dy in (0, 1)})

    def is_interior(self, p: Point) -> bool:
        return all(self._around(p))

    def concave_corners(self) -> list[Point]:
        return [p for p in self.points() if sum(self._around(p)) == 3]

    def wants(self, p: Point) -> tuple[str, str]:
        """Directions into the polygon continuing the two boundary edges at a concave corner."""
        sw, se, nw, ne = self._around(p)
        missing = [k for k, v in zip(("SW", "SE", "NW", "NE"), (sw, se, nw, ne)) if not v][0]
        vert = "S" if missing[0] == "N" else "N"
        horiz = "W" if missing[1] == "E" else "E"
        return vert, horiz

    def edge_inside(self, p: Point, q: Point) -> bool:
        """Unit edge ``pq`` has the polygon on both sides."""
        (x1, y1), (x2, y2) = sorted((p, q))
        if y1 == y2:
            return (x1, y1) in self.cells and (x1, y1 - 1) in self.cells
        return (x1, y1) in self.cells and (x1 - 1, y1) in self.cells


def _shoot(P: OrthoPolygon, p: Point, d: str, blocked: set[Point]) -> OSegment:
    dx, dy = UNIT[d]
    cur = p
    while True:
        nxt = (cur[0] + dx, cur[1] + dy)
        if not P.edge_inside(cur, nxt):
            raise PolygonError(f"cannot shoot from {p} towards {d}")
        cur = nxt
        if not P.is_interior(cur) or cur in blocked:
            return (p, cur)


def _points_of(seg: OSegment) -> list[Point]:
    (x1, y1), (x2, y2) = seg
    if x1 == x2:
        lo, hi = sorted((y1, y2))
        return [(x1, y) for y in range(lo, hi + 1)]
    lo, hi = sorted((x1, x2))
    return [(x, y1) for x in range(lo, hi + 1)]


def good_segments(P: OrthoPolygon) -> tuple[list[OSegment], list[OSegment]]:
    """Horizontal and vertical chords joining two concave corners."""
    concave = set(P.concave_corners())
    hs, vs = set(), set()
    for c in concave:
        for d in P.wants(c):
            a, b = _shoot(P, c, d, set())
            if b in concave:
                seg = tuple(sorted((a, b)))
                (hs if d in "WE" else vs).add(seg)
    return sorted(hs), sorted(vs)


def _conflict(h: OSegment, v: OSegment) -> bool:
    (hx1, hy), (hx2, _) = h
    (vx, vy1), (_, vy2) = v
    return hx1 <= vx <= hx2 and vy1 <= hy <= vy2


def max_bipartite_matching(adj: list[list[int]], n_right: int) -> list[int]:
    """Augmenting paths; returns ``match_left[i]`` (right index or -1)."""
    match_r = [-1] * n_right
    match_l = [-1] * len(adj)

    def augment(u: int, seen: set[int]) -> bool:
        for w in adj[u]:
            if w in seen:
                continue
            seen.add(w)
            if match_r[w] == -1 or augment(match_r[w], seen):
                match_r[w] = u
                match_l[u] = w
                return True
        return False

    for u in range(len(adj)):
        augment(u, set())
    return match_l


def max_independent_set(adj: list[list[int]], n_right: int) -> tuple[list[int], list[int]]:
    """Complement of a minimum vertex cover built from a maximum matching."""
    match_l = max_bipartite_matching(adj, n_right)
    match_r = [-1] * n_right
    for u, w in enumerate(match_l):
        if w != -1:
            match_r[w] = u
    zl, zr = set(), set()
    stack = [u for u in range(len(adj)) if match_l[u] == -1]
    zl.update(stack)
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in zr or match_l[u] == w:
                continue
            zr.add(w)
            m = match_r[w]
            if m != -1 and m not in zl:
                zl.add(m)
                stack.append(m)
    left = sorted(zl)
    right = sorted(set(range(n_right)) - zr)
    return left, right


@dataclass
class OrthoResult:
    segments: list[OSegment]
    rectangles: list[frozenset]

    @property
    def S(self) -> int:
        return len(self.segments)

    @property
    def R(self) -> int:
        return len(self.rectangles)


def _complete(P: OrthoPolygon, chosen: list[OSegment]) -> list[OSegment]:
    """Shoot from every concave corner not yet at the end of a segment."""
    segs = list(chosen)
    on_seg = {q for s in segs for q in _points_of(s)}
    ends = {q for s in segs for q in s}
    for c in P.concave_corners():
        if c in ends or c in on_seg:
            continue
        d = P.wants(c)[0]
        seg = _shoot(P, c, d, on_seg)
        segs.append(seg)
        on_seg.update(_points_of(seg))
        ends.update(seg)
    return segs


def ortho_regions(P: OrthoPolygon, segments: Sequence[OSegment]) -> list[frozenset]:
    """Flood fill of the cells with the segments as walls; each region must be a rectangle."""
    walls: set[frozenset] = set()
    for s in segments:
        pts = _points_of(s)
        for a, b in zip(pts, pts[1:]):
            walls.add(frozenset((a, b)))
    seen: set = set()
    regions = []
    for c in sorted(P.cells):
        if c in seen:
            continue
        region = {c}
        stack = [c]
        seen.add(c)
        while stack:
            x, y = stack.pop()
            for nb, wall in (
                ((x + 1, y), frozenset(((x + 1, y), (x + 1, y + 1)))),
                ((x - 1, y), frozenset(((x, y), (x, y + 1)))),
                ((x, y + 1), frozenset(((x, y + 1), (x + 1, y + 1)))),
                ((x, y - 1), frozenset(((x, y), (x + 1, y)))),
            ):
                if nb in P.cells and nb not in seen and wall not in walls:
                    seen.add(nb)
                    region.add(nb)
                    stack.append(nb)
        xs = [p[0] for p in region]
        ys = [p[1] for p in region]
        if (max(xs) - min(xs) + 1) * (max(ys) - min(ys) + 1) != len(region):
            raise PolygonError(f"region containing {c} is not a rectangle")
        regions.append(frozenset(region))
    return regions


def ortho_exact(P: OrthoPolygon) -> OrthoResult:
    hs, vs = good_segments(P)
    adj = [[j for j, v in enumerate(vs) if _conflict(h, v)] for h in hs]
    left, right = max_independent_set(adj, len(vs))
    chosen = [hs[i] for i in left] + [vs[j] for j in right]
    segs = _complete(P, chosen)
    regions = ortho_regions(P, segs)
    if len(regions) != len(segs) + 1:
        raise PolygonError(f"R={len(regions)} but S={len(segs)}")
    return OrthoResult(segs, regions)


def ortho_greedy(P: OrthoPolygon) -> OrthoResult:
    segs = _complete(P, [])
    return OrthoResult(segs, ortho_regions(P, segs))


def ortho_brute_force(P: OrthoPolygon) -> int:
    """Fewest rectangles covering the cells exactly, by branching on the lowest free cell."""
    order = sorted(P.cells, key=lambda c: (c[1], c[0]))
    index = {c: i for i, c in enumerate(order)}
    full = (1 << len(order)) - 1

    @lru_cache(maxsize=None)
    def best(covered: int) -> int:
        if covered == full:
            return 0
        low = (~covered & (covered + 1)).bit_length() - 1
        x0, y0 = order[low]
        out = len(order)
        max_w = 0
        while (x0 + max_w, y0) in index and not covered >> index[(x0 + max_w, y0)] & 1:
            max_w += 1
        for w in range(1, max_w + 1):
            mask = 0
            h = 0
            while True:
                row = [(x0 + i, y0 + h) for i in range(w)]
                if not all(c in index and not covered >> index[c] & 1 for c in row):
                    break
                for c in row:
                    mask |= 1 << index[c]
                h += 1
                out = min(out, 1 + best(covered | mask))
        return out

    return best(0)


# ---------------------------------------------------------------------------
# Verification of the bounds
# ---------------------------------------------------------------------------


@dataclass
class Check:
    name: str
    lhs: float
    rhs: float
    applicable: bool = True

    @property
    def holds(self) -> bool:
        return not self.applicable or self.lhs <= self.rhs

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs


@dataclass
class VerifyReport:
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.holds]

    def by_name(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def tsv(self) -> str:
        rows = ["check\tlhs\trhs\tapplicable\tholds"]
        for c in self.checks:
            rows.append(f"{c.name}\t{c.lhs:g}\t{c.rhs:g}\t{int(c.applicable)}\t{int(c.holds)}")
        return "\n".join(rows)


def verify_inequalities(
    n: DualNet,
    opt: OptStats,
    greedy: Rectangulation,
    bundles: Optional[int] = None,
    bip: Optional[Rectangulation] = None,
) -> VerifyReport:
    R, S, H, t = opt.R_opt, opt.S_opt, opt.H, opt.t
    Rg, Sg = greedy.R, greedy.S
    d3 = opt.delta >= 3
    checks = [
        Check("euler_opt", abs(R - S + H - 2), 0, R > 0),
        Check("S_greed<=exp", Sg, n.total_exponent),
        Check("exp<=2S_opt", n.total_exponent, 2 * S),
        Check("S_greed<=2S_opt", Sg, 2 * S),
        Check("R_greed<=2R_opt+H-2", Rg, 2 * R + H - 2),
        Check("H_odd<=4R_opt", opt.H_odd, 4 * R),
        Check("delta>=3:H<=2R_opt", H, 2 * R, d3),
        Check("delta>=3:R_greed<=4R_opt-2", Rg, 4 * R - 2, d3),
        Check("H_2<=4R_opt+t", opt.H_2, 4 * R + t),
        Check("R_opt>=2:holes_meet_2_segments", 0 if opt.holes_meet_two else 1, 0, R >= 2),
        Check("R_opt>=2:2H<=2S_opt", 2 * H, 2 * S, R >= 2),
        Check("H<=6R_opt+t-4", H, 6 * R + t - 4, R > 0),
        Check("R_greed<=8R_opt+t-6", Rg, 8 * R + t - 6, R > 0),
        Check("bundles<=8bc+t", Rg if bundles is None else bundles, 8 * R + t, R > 0),
    ]
    if bip is not None:
        checks.append(Check("S_A<=ceil(1.5S_opt)", bip.S, math.ceil(1.5 * S)))
        checks.append(Check("R_A<=4.5R_opt+t/2", bip.R, 4.5 * R + t / 2))
    return VerifyReport(checks)
