"""Schematic SVG pictures of the five flats.

Each flat is drawn in simple-root coordinates mapped to the plane so that
the six singular directions are 60 degrees apart.  Cells come from
:func:`a2flats.triples.sector_descriptions` clipped to the grid box; the
picture is affine, not metrically faithful to the building.
"""
from __future__ import annotations

import math
import os
from typing import Dict, List, Sequence, Tuple

from .modelflat import FlatVector
from .projplane import FlagTriple
from .triples import FLAT_IDS, Cell, default_margin, sector_descriptions, special_coords

SCALE = 40.0
PAD = 60.0
COLORS = ("#f4d6a0", "#b9d7ea", "#c8e6c9", "#f3c1c6", "#d9c8f0")

# boundary labels of each marked flat: directions e1, e2, e3 and -e1, -e2, -e3
DIRECTION_LABELS = {
    "Ap": ("p1", "p2", "p3", "p2p3", "p1p3", "p1p2"),
    "AD": ("D1∩D2", "D1∩D3", "D2∩D3", "D3", "D2", "D1"),
}
for _i, _j in ((1, 2), (2, 3), (3, 1)):
    DIRECTION_LABELS[f"A{_i}{_j}"] = (
        f"p{_j}", f"p{_i}{_j}", f"p{_i}", f"D{_i}", f"p{_i}p{_j}", f"D{_j}",
    )


def _plane(a1: float, a2: float) -> Tuple[float, float]:
    """Simple-root coordinates to the plane, with roots at 120 degrees."""
    v = FlatVector.from_src(a1, a2).coords
    x = (float(v[0]) - float(v[1])) / math.sqrt(2)
    y = (float(v[0]) + float(v[1]) - 2 * float(v[2])) / math.sqrt(6)
    return x, y


def _clip(poly: List[Tuple[float, float]], k: int, op: str, bound: float) -> List[Tuple[float, float]]:
    """Sutherland-Hodgman clipping of a polygon in (α1, α2) by one root half-plane."""

    def value(p):
        a = (p[0], p[1], -p[0] - p[1])[k - 1]
        return a - bound if op == ">=" else bound - a

    out = []
    for i, cur in enumerate(poly):
        prev = poly[i - 1]
        vc, vp = value(cur), value(prev)
        if vc >= 0:
            if vp < 0:
                s = vp / (vp - vc)
                out.append((prev[0] + s * (cur[0] - prev[0]), prev[1] + s * (cur[1] - prev[1])))
            out.append(cur)
        elif vp >= 0:
            s = vp / (vp - vc)
            out.append((prev[0] + s * (cur[0] - prev[0]), prev[1] + s * (cur[1] - prev[1])))
    return out


def cell_polygon(cell: Cell, box: Sequence[float]) -> List[Tuple[float, float]]:
    lo1, hi1, lo2, hi2 = box
    poly = [(lo1, lo2), (hi1, lo2), (hi1, hi2), (lo1, hi2)]
    for q in cell.inequalities:
        if q.op == "==":
            continue
        poly = _clip(poly, q.root, q.op, float(q.bound))
        if not poly:
            break
    return poly


def _point_cell(cell: Cell):
    eqs = {q.root: float(q.bound) for q in cell.inequalities if q.op == "=="}
    if 1 in eqs and 2 in eqs:
        return eqs[1], eqs[2]
    return None


def flat_svg(T: FlagTriple, flat_id: str, margin=None) -> str:
    margin = float(default_margin(T) if margin is None else margin)
    specials = {k: (float(v.root(1)), float(v.root(2))) for k, v in special_coords(T, flat_id).items()}
    pts = list(specials.values()) or [(0.0, 0.0)]
    box = (
        min(p[0] for p in pts) - margin, max(p[0] for p in pts) + margin,
        min(p[1] for p in pts) - margin, max(p[1] for p in pts) + margin,
    )
    corners = [_plane(a, b) for a in box[:2] for b in box[2:]]
    xmin = min(c[0] for c in corners)
    ymax = max(c[1] for c in corners)
    width = (max(c[0] for c in corners) - xmin) * SCALE + 2 * PAD
    height = (ymax - min(c[1] for c in corners)) * SCALE + 2 * PAD

    def screen(a1, a2):
        x, y = _plane(a1, a2)
        return PAD + (x - xmin) * SCALE, PAD + (ymax - y) * SCALE

    parts: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}" font-family="sans-serif" font-size="12">',
        f"<title>{flat_id}</title>",
    ]
    cells = sector_descriptions(T, flat_id)
    for color, cell in zip(COLORS, cells):
        poly = cell_polygon(cell, box)
        if len(poly) >= 3:
            path = " ".join(f"{x:.2f},{y:.2f}" for x, y in (screen(*p) for p in poly))
            parts.append(f'<polygon points="{path}" fill="{color}" stroke="#555" stroke-width="1"/>')
            cx = sum(p[0] for p in poly) / len(poly)
            cy = sum(p[1] for p in poly) / len(poly)
            sx, sy = screen(cx, cy)
            parts.append(f'<text x="{sx:.2f}" y="{sy:.2f}" text-anchor="middle">{_cell_label(flat_id, cell)}</text>')
        else:
            at = _point_cell(cell)
            if at is not None:
                sx, sy = screen(*at)
                parts.append(f'<circle cx="{sx:.2f}" cy="{sy:.2f}" r="5" fill="none" stroke="#a33"/>')
    parts.extend(_root_frame(flat_id, box, screen))
    for name, (a1, a2) in sorted(specials.items()):
        sx, sy = screen(a1, a2)
        parts.append(f'<circle cx="{sx:.2f}" cy="{sy:.2f}" r="3" fill="#000"/>')
        parts.append(f'<text x="{sx + 5:.2f}" y="{sy - 5:.2f}">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cell_label(flat_id: str, cell: Cell) -> str:
    if cell.flat is None:
        return cell.label
    return f"{cell.label} = {flat_id}∩{cell.flat}" if cell.label != cell.flat else f"∩{cell.flat}"


def _root_frame(flat_id: str, box, screen) -> List[str]:
    """Six singular directions at the lower-left corner, labelled by the ideal points and lines."""
    labels = DIRECTION_LABELS[flat_id]
    base = (box[0] + 1.0, box[2] + 1.0)
    ox, oy = screen(*base)
    out = []
    dirs = [FlatVector.basis_class(k) for k in (1, 2, 3)]
    dirs += [-d for d in dirs]
    for d, label in zip(dirs, labels):
        a1, a2 = (float(c) for c in d.src())
        ex, ey = screen(base[0] + 0.9 * a1, base[1] + 0.9 * a2)
        out.append(f'<line x1="{ox:.2f}" y1="{oy:.2f}" x2="{ex:.2f}" y2="{ey:.2f}" stroke="#333"/>')
        out.append(f'<text x="{ex:.2f}" y="{ey:.2f}" font-size="10">{label}</text>')
    return out


def write_figures(T: FlagTriple, out_dir: str, flat_ids: Sequence[str] = FLAT_IDS, margin=None) -> Dict[str, str]:
    """Write one SVG per flat; returns ``{flat_id: path}``."""
    os.makedirs(out_dir, exist_ok=True)
    written = {}
    for fid in flat_ids:
        path = os.path.join(out_dir, f"{fid}.svg")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(flat_svg(T, fid, margin))
        written[fid] = path
    return written
