"""Two-colored nets: weak/strong vertices, the gain graph and the seeded greedy.

Conventions worth knowing:

* Segment ends at border vertices of exponent 0 (degree 3) are kept in the
  gain graph as *inert* vertices.  They behave like weak vertices that can
  never take a second segment, so they only ever appear as leaves.
* :func:`gain_formula` evaluates the closed form with the tree-component
  correction as usually stated.  It disagrees with :func:`gain_def` on every
  subset whose gain graph has a tree component; :func:`gain_corrected` is the
  identity that holds for all subsets.
"""

from __future__ import annotations

import logging
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .net import DualNet, Segment, maximal_straight_path, relative_exponent
from .rectangulation import (
    Rectangulation,
    covered_edges,
    extract_rectangulation,
    greedy_rectangulate,
)

log = logging.getLogger(__name__)

WEAK, STRONG, INERT = "weak", "strong", "inert"


class NotBipartiteError(ValueError):
    pass


def other_color(color: str) -> str:
    return "red" if color == "blue" else "blue"


def check_bipartite(n: DualNet) -> None:
    """Raise unless every edge is colored and colors alternate around squares."""
    if not n.is_colored:
        raise NotBipartiteError("net edges are not all colored")
    for s, sides in enumerate(n.squares):
        cols = [n.edge_color[d >> 1] for d in sides]
        if any(cols[i] == cols[(i + 1) % 4] for i in range(4)):
            raise NotBipartiteError(f"colors do not alternate around square {s}")


def classify_weak_strong(n: DualNet, color: str = "blue") -> dict[int, str]:
    """Positive-exponent vertices split into weak and strong w.r.t. ``color``."""
    out = {}
    other = other_color(color)
    for v in range(n.n_vertices):
        if n.exponents[v] == 0:
            continue
        r = n.rot[v]
        weak = (
            n.is_border[v]
            and n.degree(v) % 2 == 1
            and n.edge_color[r[0] >> 1] == other
            and n.edge_color[r[-1] >> 1] == other
        )
        out[v] = WEAK if weak else STRONG
    return out


def blue_segments(n: DualNet, color: str = "blue") -> list[Segment]:
    """All maximal straight paths made of interior edges of ``color``."""
    out = []
    done: set[int] = set()
    for e in range(n.n_edges):
        if n.edge_border[e] or n.edge_color[e] != color or e in done:
            continue
        seg = maximal_straight_path(n, e, lambda f, _a, _b: n.edge_color[f] == color and not n.edge_border[f])
        done.update(seg.edges)
        out.append(seg)
    return out


# ---------------------------------------------------------------------------
# Gain graph
# ---------------------------------------------------------------------------


@dataclass
class GainGraph:
    """Multigraph on positive-exponent vertices (plus inert segment ends).

    Edges ``0..len(segments)-1`` are the segments of ``B``; every strong vertex
    also carries one loop, stored separately in ``loops``.
    """

    color: str
    segments: list[Segment]
    kind: dict[int, str]
    ends: list[tuple[int, int]]
    loops: dict[int, int] = field(default_factory=dict)  # vertex -> loop edge id

    @property
    def n_b(self) -> int:
        return len(self.segments)

    def edge_ends(self, eid: int) -> tuple[int, int]:
        if eid < self.n_b:
            return self.ends[eid]
        v = next(u for u, k in self.loops.items() if k == eid)
        return v, v

    def all_edges(self) -> list[int]:
        return list(range(self.n_b)) + sorted(self.loops.values())

    def hat(self, subset: Iterable[int]) -> list[int]:
        """``subset`` of B plus the loops at strong vertices it touches."""
        s = sorted(set(subset))
        vs = {v for i in s for v in self.ends[i]}
        return s + sorted(self.loops[v] for v in vs if v in self.loops)


def build_gain_graph(n: DualNet, color: str = "blue") -> GainGraph:
    kind = classify_weak_strong(n, color)
    segs = blue_segments(n, color)
    ends = []
    for s in segs:
        a, b = s.ends
        for v in (a, b):
            if v not in kind:
                kind[v] = INERT
        ends.append((a, b))
    g = GainGraph(color, segs, kind, ends)
    nxt = len(segs)
    for v in sorted(kind):
        if kind[v] == STRONG:
            g.loops[v] = nxt
            nxt += 1
    return g


def _components(g: GainGraph, edges: Sequence[int]) -> list[tuple[set[int], list[int]]]:
    adj: dict[int, list[int]] = defaultdict(list)
    for eid in edges:
        a, b = g.edge_ends(eid)
        adj[a].append(eid)
        adj[b].append(eid)
    seen: set[int] = set()
    comps = []
    for v in sorted(adj):
        if v in seen:
            continue
        vs, es = set(), set()
        stack = [v]
        while stack:
            u = stack.pop()
            if u in vs:
                continue
            vs.add(u)
            for eid in adj[u]:
                es.add(eid)
                for w in g.edge_ends(eid):
                    if w not in vs:
                        stack.append(w)
        seen |= vs
        comps.append((vs, sorted(es)))
    return comps


def tree_components(g: GainGraph, edges: Sequence[int]) -> int:
    return sum(1 for vs, es in _components(g, edges) if len(es) == len(vs) - 1)


def bicircular_nullity(g: GainGraph, edges: Sequence[int]) -> tuple[int, int]:
    """(rank, nullity) of ``edges`` in the bicircular matroid of ``g``."""
    edges = list(edges)
    comps = _components(g, edges)
    nv = sum(len(vs) for vs, _ in comps)
    tc = sum(1 for vs, es in comps if len(es) == len(vs) - 1)
    rank = nv - tc
    return rank, len(edges) - rank


@dataclass(frozen=True)
class GainValue:
    g: int
    exponent_drop: int
    size: int


def gain_def(n: DualNet, segments: Sequence[Segment]) -> GainValue:
    """Total exponent drop caused by ``segments`` minus their number."""
    es = covered_edges(segments)
    drop = sum(n.exponents[v] - relative_exponent(n, es, v) for v in range(n.n_vertices))
    return GainValue(drop - len(segments), drop, len(segments))


def _vertices(g: GainGraph, subset: Iterable[int]) -> set[int]:
    return {v for i in subset for v in g.ends[i]}


def gain_formula(g: GainGraph, subset: Iterable[int]) -> int:
    """Closed form ``|Ŝ| - |V(S)| - tc(Ŝ)``."""
    s = sorted(set(subset))
    hat = g.hat(s)
    return len(hat) - len(_vertices(g, s)) - tree_components(g, hat)


def gain_corrected(g: GainGraph, subset: Iterable[int]) -> int:
    """``|Ŝ| - |V(S)|``, equal to :func:`gain_def` for every subset of B."""
    s = sorted(set(subset))
    return len(g.hat(s)) - len(_vertices(g, s))


def gain_of_subset(n: DualNet, g: GainGraph, subset: Iterable[int]) -> int:
    return gain_def(n, [g.segments[i] for i in sorted(set(subset))]).g


def max_gain_set(g: GainGraph) -> list[int]:
    """Prune leaf edges to a fixed point, then drop components that are cycles."""
    alive = set(g.all_edges())
    deg: dict[int, int] = defaultdict(int)
    inc: dict[int, list[int]] = defaultdict(list)
    for eid in alive:
        a, b = g.edge_ends(eid)
        deg[a] += 1
        deg[b] += 1
        inc[a].append(eid)
        if b != a:
            inc[b].append(eid)
    queue = deque(v for v in sorted(deg) if deg[v] == 1)
    while queue:
        v = queue.popleft()
        if deg[v] != 1:
            continue
        eid = next(e for e in inc[v] if e in alive)
        alive.discard(eid)
        a, b = g.edge_ends(eid)
        for w in (a, b):
            deg[w] -= 1
            if deg[w] == 1:
                queue.append(w)
    keep: list[int] = []
    for vs, es in _components(g, sorted(alive)):
        if len(es) == len(vs):  # no leaves, as many edges as vertices: a cycle
            continue
        keep.extend(es)
    return sorted(e for e in keep if e < g.n_b)


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------


@dataclass
class BipartiteResult:
    color: str
    seed: list[int]
    seed_segments: tuple[Segment, ...]
    gain: int
    gains: dict[str, int]
    cutset: tuple[Segment, ...]
    rect: Rectangulation


def bipartite_pipeline(n: DualNet, order: Optional[Sequence[int]] = None) -> BipartiteResult:
    check_bipartite(n)
    best = None
    gains = {}
    for color in ("blue", "red"):
        gg = build_gain_graph(n, color)
        a = max_gain_set(gg)
        segs = tuple(gg.segments[i] for i in a)
        val = gain_def(n, segs).g
        gains[color] = val
        if best is None or val > best[2]:
            best = (color, a, val, segs)
    color, a, val, segs = best
    cut = greedy_rectangulate(n, segs, order)
    rect = extract_rectangulation(n, cut)
    return BipartiteResult(color, a, segs, val, gains, cut, rect)


@dataclass
class SplitGain:
    total: int
    blue: int
    red: int
    blue_ext: int
    red_ext: int

    @property
    def raw_ok(self) -> bool:
        return self.blue + self.red >= self.total

    @property
    def extended_ok(self) -> bool:
        return self.blue_ext + self.red_ext >= self.total


def _extend(n: DualNet, segs: Sequence[Segment], color: str) -> list[Segment]:
    full = blue_segments(n, color)
    where = {e: i for i, s in enumerate(full) for e in s.edges}
    return [full[i] for i in sorted({where[s.edges[0]] for s in segs})]


def split_gain_check(n: DualNet, segments: Sequence[Segment]) -> SplitGain:
    """Gains of a cut-set, of its two color classes, and of the classes extended to full segments."""
    by_color: dict[str, list[Segment]] = {"blue": [], "red": []}
    for s in segments:
        by_color[n.edge_color[s.edges[0]]].append(s)
    return SplitGain(
        total=gain_def(n, segments).g,
        blue=gain_def(n, by_color["blue"]).g,
        red=gain_def(n, by_color["red"]).g,
        blue_ext=gain_def(n, _extend(n, by_color["blue"], "blue")).g,
        red_ext=gain_def(n, _extend(n, by_color["red"], "red")).g,
    )
