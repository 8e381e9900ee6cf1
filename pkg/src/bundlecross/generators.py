"""Instance generators.

Every generator is deterministic in its parameters and seed.  Circular
instances come from chords between points in convex position on the parabola
``y = x**2`` with integer abscissas; crossing orders along the chords are
computed exactly with rationals, so the produced crossing sequences are always
realizable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import itertools

from .arrangement import Arrangement, Crossing, InstanceError, StringCurve, arrangement_from_dict, build_planarization

FAMILIES = ("circular", "bilaminar", "grid", "toothed", "c4xc4", "ring", "loop", "lense")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    size: tuple[int, ...] = ()
    seed: int = 0
    options: dict = field(default_factory=dict, hash=False)


def generate(spec: GeneratorSpec) -> Arrangement:
    f = spec.family
    if f == "circular":
        return circular(spec.size[0], spec.seed, **spec.options)
    if f == "bilaminar":
        return polygon_instance(bilaminar_cells(spec.size[0], spec.seed))
    if f == "grid":
        return grid(*spec.size)
    if f == "toothed":
        return toothed(spec.size[0])
    if f == "c4xc4":
        return c4xc4()
    if f == "ring":
        return ring(spec.size[0])
    if f == "loop":
        return loop(spec.size[0])
    if f == "lense":
        return lense()
    raise ValueError(f"unknown family {f!r}")


def _build(strings: list[tuple[Optional[str], list[int]]], crossings: list[tuple[int, int, int]], closed=()) -> Arrangement:
    return Arrangement(
        tuple(
            StringCurve(i, tuple(seq), color, i in closed) for i, (color, seq) in enumerate(strings)
        ),
        tuple(Crossing(i, (a, b), sign) for i, (a, b, sign) in enumerate(crossings)),
    )


def grid(rows: int, cols: int) -> Arrangement:
    """``rows`` red strings (left to right) crossing ``cols`` blue strings (bottom to top)."""
    if rows < 1 or cols < 1:
        raise ValueError("grid sizes must be positive")
    strings: list[tuple[Optional[str], list[int]]] = []
    for r in range(rows):
        strings.append(("red", [r * cols + c for c in range(cols)]))
    for c in range(cols):
        strings.append(("blue", [r * cols + c for r in range(rows)]))
    crossings = [(r, rows + c, 1) for r in range(rows) for c in range(cols)]
    return _build(strings, crossings)


def c4xc4() -> Arrangement:
    """Crossed edges of the one-bundle drawing of the product of two 4-cycles.

    After deleting the uncrossed edges the drawing is four edges running
    through four others, i.e. the 4x4 grid of strings.
    """
    return grid(4, 4)


def toothed(k: int) -> Arrangement:
    """Two long red strings over ``k+1`` blue verticals with ``k`` blue teeth.

    Tooth ``i`` crosses the lower string between verticals ``i-1`` and ``i``
    and ends inside the four-sided face above it, so every such face is a
    toothed-face while the optimum stays at two bundles.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    n_v = k + 1
    strings: list[tuple[Optional[str], list[int]]] = [("red", []), ("red", [])]
    crossings: list[tuple[int, int, int]] = []
    v_ids = [2 + j for j in range(n_v)]
    t_ids = [2 + n_v + i for i in range(k)]
    for _ in range(n_v + k):
        strings.append(("blue", []))
    for j in range(n_v):
        if j > 0:
            cid = len(crossings)
            crossings.append((0, t_ids[j - 1], 1))
            strings[0][1].append(cid)
            strings[t_ids[j - 1]][1].append(cid)
        cid = len(crossings)
        crossings.append((0, v_ids[j], 1))
        strings[0][1].append(cid)
        strings[v_ids[j]][1].append(cid)
    for j in range(n_v):
        cid = len(crossings)
        crossings.append((1, v_ids[j], 1))
        strings[1][1].append(cid)
        strings[v_ids[j]][1].append(cid)
    return _build(strings, crossings)


def ring(m: int) -> Arrangement:
    """A closed red string crossed once by each of ``m`` blue radial strings."""
    if m < 2:
        raise ValueError("ring needs m >= 2")
    strings: list[tuple[Optional[str], list[int]]] = [("red", list(range(m)))]
    strings += [("blue", [i]) for i in range(m)]
    crossings = [(0, i + 1, -1) for i in range(m)]
    return _build(strings, crossings, closed={0})


def loop(m: int) -> Arrangement:
    """A string with one self-crossing whose loop is crossed by ``m`` radial strings."""
    if m < 1:
        raise ValueError("loop needs m >= 1")
    # crossing 0 is the self-crossing
    strings: list[tuple[Optional[str], list[int]]] = [("red", [0] + list(range(1, m + 1)) + [0])]
    strings += [("blue", [i + 1]) for i in range(m)]
    crossings = [(0, 0, -1)] + [(0, i + 1, -1) for i in range(m)]
    return _build(strings, crossings)


def lense() -> Arrangement:
    """Two strings crossing twice; the region between them is a degree-2 vertex-hole."""
    strings: list[tuple[Optional[str], list[int]]] = [("red", [0, 1]), ("blue", [0, 1])]
    crossings = [(0, 1, -1), (0, 1, 1)]
    return _build(strings, crossings)


def insert_lens(arr: Arrangement, rng: random.Random) -> Arrangement:
    """Two extra crossings between the strings of a random crossing, right after it."""
    c = rng.choice(sorted(arr.crossings, key=lambda c: c.id))
    x = max(k.id for k in arr.crossings) + 1
    a, b = c.strings
    for sx, sy in itertools.product((1, -1), repeat=2):
        d = arr.to_dict()
        for s in d["strings"]:
            if s["id"] in (a, b):
                i = s["crossings"].index(c.id)
                s["crossings"][i + 1 : i + 1] = [x, x + 1]
        d["crossings"] += [
            {"id": x, "strings": [a, b], "sign": sx},
            {"id": x + 1, "strings": [a, b], "sign": sy},
        ]
        out = arrangement_from_dict(d)
        try:
            build_planarization(out)
        except InstanceError:
            continue
        return out
    raise RuntimeError("no consistent lens signs")  # not reached for sphere drawings


def insert_kink(arr: Arrangement, rng: random.Random) -> Arrangement:
    """A small self-crossing loop on a random string."""
    d = arr.to_dict()
    s = rng.choice(d["strings"])
    x = max(k.id for k in arr.crossings) + 1
    i = rng.randrange(len(s["crossings"]) + 1)
    s["crossings"][i:i] = [x, x]
    d["crossings"].append({"id": x, "strings": [s["id"], s["id"]], "sign": 1})
    return arrangement_from_dict(d)


# ---------------------------------------------------------------------------
# Circular drawings
# ---------------------------------------------------------------------------


def _cross(ax, ay, bx, by) -> Fraction:
    return ax * by - ay * bx


def _chords_arrangement(xs: list[int], chords: list[tuple[int, int]], colors=None) -> Optional[Arrangement]:
    pts = [(Fraction(x), Fraction(x * x)) for x in xs]
    n = len(chords)
    hits: dict[int, list[tuple[Fraction, int]]] = {i: [] for i in range(n)}
    crossings: list[tuple[int, int, int]] = []
    where: set[tuple[Fraction, Fraction]] = set()
    for i in range(n):
        p, q = chords[i]
        for j in range(i + 1, n):
            r, s = chords[j]
            if not ((p < r < q < s) or (r < p < s < q)):
                continue
            (px, py), (qx, qy) = pts[p], pts[q]
            (rx, ry), (sx, sy) = pts[r], pts[s]
            dx, dy = qx - px, qy - py
            ex, ey = sx - rx, sy - ry
            den = _cross(dx, dy, ex, ey)
            t = _cross(rx - px, ry - py, ex, ey) / den
            u = _cross(rx - px, ry - py, dx, dy) / den
            point = (px + t * dx, py + t * dy)
            if point in where:
                return None  # triple point
            where.add(point)
            cid = len(crossings)
            crossings.append((i, j, 1 if den > 0 else -1))
            hits[i].append((t, cid))
            hits[j].append((u, cid))
    strings = []
    for i in range(n):
        color = colors[i] if colors else None
        strings.append((color, [cid for _, cid in sorted(hits[i])]))
    return _build(strings, crossings)


def _connected_and_crossed(arr: Arrangement) -> bool:
    if any(not s.crossings for s in arr.strings):
        return False
    adj: dict[int, set[int]] = {s.id: set() for s in arr.strings}
    for c in arr.crossings:
        a, b = c.strings
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def _two_coloring(arr: Arrangement) -> Optional[list[str]]:
    color: dict[int, int] = {}
    adj: dict[int, list[int]] = {s.id: [] for s in arr.strings}
    for c in arr.crossings:
        a, b = c.strings
        adj[a].append(b)
        adj[b].append(a)
    for root in sorted(adj):
        if root in color:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    return ["blue" if color[i] == 0 else "red" for i in sorted(adj)]


def circular(n: int, seed: int = 0, bipartite: bool = False, max_tries: int = 10000) -> Arrangement:
    """``n`` chords with distinct ends on a convex curve, connected and all crossed.

    With ``bipartite=True`` only instances whose intersection graph is
    bipartite are accepted; they come 2-colored (blue first).
    """
    if n < 2:
        raise ValueError("circular needs at least two chords")
    rng = random.Random(seed)
    for _ in range(max_tries):
        xs = sorted(rng.sample(range(-8 * n, 8 * n + 1), 2 * n))
        order = list(range(2 * n))
        rng.shuffle(order)
        chords = sorted(tuple(sorted(order[2 * i : 2 * i + 2])) for i in range(n))
        arr = _chords_arrangement(xs, chords)
        if arr is None or not _connected_and_crossed(arr):
            continue
        if bipartite:
            colors = _two_coloring(arr)
            if colors is None:
                continue
            arr = _chords_arrangement(xs, chords, colors)
        return arr
    raise RuntimeError("could not generate a circular instance")


# ---------------------------------------------------------------------------
# Orthogonal polygons and bi-laminar instances
# ---------------------------------------------------------------------------

Cell = tuple[int, int]


def staircase_polygon(rng: random.Random, max_cells: int) -> frozenset[Cell]:
    """Random parallelogram polyomino (region between two monotone paths)."""
    while True:
        width = rng.randint(1, max(1, min(8, max_cells)))
        cells: set[Cell] = set()
        lo, hi = 0, rng.randint(1, 4)
        for x in range(width):
            if x > 0:
                new_lo = rng.randint(lo, hi - 1)
                new_hi = rng.randint(max(hi, new_lo + 1), hi + 3)
                lo, hi = new_lo, new_hi
            cells.update((x, y) for y in range(lo, hi))
        if len(cells) <= max_cells:
            return frozenset(cells)


def is_simply_connected(cells: frozenset[Cell] | set[Cell]) -> bool:
    if not cells:
        return False
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    start = (x0, y0)
    seen = {start}
    stack = [start]
    while stack:
        x, y = stack.pop()
        for nx, ny in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if x0 <= nx <= x1 and y0 <= ny <= y1 and (nx, ny) not in cells and (nx, ny) not in seen:
                seen.add((nx, ny))
                stack.append((nx, ny))
    outside = (x1 - x0 + 1) * (y1 - y0 + 1) - len(cells)
    if len(seen) != outside:
        return False
    # cells connected through edges
    c0 = next(iter(cells))
    seen_c = {c0}
    stack = [c0]
    while stack:
        x, y = stack.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in cells and nb not in seen_c:
                seen_c.add(nb)
                stack.append(nb)
    return len(seen_c) == len(cells)


def random_polyomino(rng: random.Random, n_cells: int) -> frozenset[Cell]:
    """Simply connected polyomino grown cell by cell."""
    cells: set[Cell] = {(0, 0)}
    while len(cells) < n_cells:
        frontier = sorted(
            {
                nb
                for x, y in cells
                for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1))
                if nb not in cells
            }
        )
        nb = rng.choice(frontier)
        cells.add(nb)
        if not is_simply_connected(cells):
            cells.remove(nb)
    return frozenset(cells)


def bilaminar_cells(n_cells: int, seed: int = 0) -> frozenset[Cell]:
    if n_cells < 1:
        raise ValueError("bilaminar needs at least one cell")
    return random_polyomino(random.Random(seed), n_cells)


def polygon_instance(cells: frozenset[Cell]) -> Arrangement:
    """Bi-laminar instance of a polyomino: one red chord per row run, one blue per column run.

    Crossing ids follow the sorted cell order, so crossing ``i`` sits in cell
    ``sorted(cells)[i]``.
    """
    order = sorted(cells)
    cid = {c: i for i, c in enumerate(order)}
    strings: list[tuple[Optional[str], list[int]]] = []
    row_of: dict[Cell, int] = {}
    col_of: dict[Cell, int] = {}
    for y in sorted({y for _, y in cells}):
        xs = sorted(x for x, yy in cells if yy == y)
        run: list[int] = []
        for x in xs:
            if run and x != run[-1] + 1:
                strings.append(("red", [cid[(xx, y)] for xx in run]))
                run = []
            run.append(x)
        strings.append(("red", [cid[(xx, y)] for xx in run]))
    for sid, (_, seq) in enumerate(strings):
        for c in seq:
            row_of[order[c]] = sid
    for x in sorted({x for x, _ in cells}):
        ys = sorted(y for xx, y in cells if xx == x)
        run = []
        for y in ys:
            if run and y != run[-1] + 1:
                strings.append(("blue", [cid[(x, yy)] for yy in run]))
                run = []
            run.append(y)
        strings.append(("blue", [cid[(x, yy)] for yy in run]))
    for sid, (color, seq) in enumerate(strings):
        if color == "blue":
            for c in seq:
                col_of[order[c]] = sid
    crossings = [(row_of[c], col_of[c], 1) for c in order]
    return _build(strings, crossings)
