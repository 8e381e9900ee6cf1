"""SVG output.  Cosmetic only: no check depends on coordinates.

Vertices of the planarization are placed by a barycentric (Tutte) layout with
the largest face pinned to a circle.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .arrangement import Planarization

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2")
COLORS = {"blue": "#1f5fd6", "red": "#d62728", None: "#444444"}
SIZE = 600.0


def tutte_layout(p: Planarization) -> np.ndarray:
    nv = p.n_vertices
    outer = max(range(p.n_faces), key=lambda f: (len(p.faces[f]), -f))
    ring: list[int] = []
    for d in p.faces[outer]:
        v = p.origin(d)
        if v not in ring:
            ring.append(v)
    pos = np.zeros((nv, 2))
    for i, v in enumerate(ring):
        a = 2 * math.pi * i / len(ring)
        pos[v] = (math.cos(a), math.sin(a))
    fixed = set(ring)
    free = [v for v in range(nv) if v not in fixed]
    if free:
        idx = {v: i for i, v in enumerate(free)}
        A = np.zeros((len(free), len(free)))
        b = np.zeros((len(free), 2))
        for v in free:
            i = idx[v]
            nbrs = [p.head(d) for d in p.rotation[v]]
            A[i, i] = len(nbrs)
            for w in nbrs:
                if w in idx:
                    A[i, idx[w]] -= 1
                else:
                    b[i] += pos[w]
        sol = np.linalg.lstsq(A, b, rcond=None)[0]
        for v in free:
            pos[v] = sol[idx[v]]
    # pull degree-1 vertices off their neighbour
    for v in free:
        if len(p.rotation[v]) == 1:
            w = p.head(p.rotation[v][0])
            pos[v] = pos[w] + 0.06 * (pos[w] / (np.linalg.norm(pos[w]) + 1e-9))
    return pos


def _xy(pt) -> tuple[float, float]:
    return (SIZE / 2 + pt[0] * SIZE * 0.45, SIZE / 2 - pt[1] * SIZE * 0.45)


def render_svg(
    p: Planarization,
    bundles: Optional[Sequence[Sequence[int]]] = None,
    segments: Optional[Sequence[Sequence[int]]] = None,
    cell_of_dart: Optional[Sequence[int]] = None,
    cells: Optional[Sequence[Sequence[int]]] = None,
    title: str = "",
) -> str:
    """SVG document for a drawing, optionally with bundles and net segments.

    ``segments`` are lists of net darts; ``cells`` and ``cell_of_dart`` locate
    net vertices (cell centroids) so segments can be drawn as arrows.
    """
    pos = tutte_layout(p)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE:.0f}" height="{SIZE:.0f}" '
        f'viewBox="0 0 {SIZE:.0f} {SIZE:.0f}">',
        '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" '
        'markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#222"/></marker></defs>',
    ]
    if title:
        out.append(f'<title>{escape(title)}</title>')
    arr = p.arrangement
    if bundles:
        for i, b in enumerate(bundles):
            color = PALETTE[i % len(PALETTE)]
            out.append(f'<g class="bundle" data-bundle="{i}">')
            for cid in b:
                x, y = _xy(pos[p.crossing_vertex[cid]])
                out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="9" fill="{color}" fill-opacity="0.35"/>')
            out.append("</g>")
    for s in arr.strings:
        arcs = p.string_arcs[s.id]
        pts = [p.arc_tail[arcs[0]]] + [p.arc_head[k] for k in arcs]
        coords = " ".join("{:.2f},{:.2f}".format(*_xy(pos[v])) for v in pts)
        out.append(
            f'<polyline class="string" data-string="{s.id}" points="{coords}" fill="none" '
            f'stroke="{COLORS.get(s.color, "#444444")}" stroke-width="2"/>'
        )
    if segments and cells is not None and cell_of_dart is not None:
        centre = [np.mean([pos[p.origin(d)] for d in c], axis=0) for c in cells]
        for seg in segments:
            vs = [cell_of_dart[seg[0]]] + [cell_of_dart[d ^ 1] for d in seg]
            coords = " ".join("{:.2f},{:.2f}".format(*_xy(centre[v])) for v in vs)
            out.append(
                f'<polyline class="segment" points="{coords}" fill="none" stroke="#222" '
                f'stroke-width="1.5" stroke-dasharray="4 2" marker-end="url(#arrow)"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
