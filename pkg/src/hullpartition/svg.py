"""SVG rendering of instances and solutions: gray input polygons with
one colored hull outline per component."""

from __future__ import annotations

from typing import Optional

from .engine import Partition
from .instances import InstanceFile

# Stroke colors cycled over components.
PALETTE = (
    "#2e7d32",
    "#1565c0",
    "#c62828",
    "#6a1b9a",
    "#ef6c00",
    "#00838f",
    "#4e342e",
    "#37474f",
)


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def render_svg(instance: InstanceFile, partition: Optional[Partition] = None) -> bytes:
    """Deterministic SVG: one gray path per input polygon and one
    colored outline per component hull.  The viewBox is the joint
    bounding box plus a 5% margin; y grows upward as in the plane."""
    all_points = [v.as_floats() for p in instance.polygons for v in p.vertices]
    if partition is not None:
        all_points += [v.as_floats() for h in partition.hulls for v in h.vertices]
    xs = [p[0] for p in all_points]
    ys = [p[1] for p in all_points]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    margin = 0.05 * max(x1 - x0, y1 - y0, 1e-9)

    # SVG y runs downward; flip about the box midline to draw plane-style.
    flip = y0 + y1

    def path(polygon) -> str:
        cmds = []
        for i, v in enumerate(polygon.vertices):
            px, py = v.as_floats()
            cmds.append(f"{'M' if i == 0 else 'L'} {_fmt(px)} {_fmt(flip - py)}")
        return " ".join(cmds) + " Z"

    view = (
        f"{_fmt(x0 - margin)} {_fmt(y0 - margin)} "
        f"{_fmt((x1 - x0) + 2 * margin)} {_fmt((y1 - y0) + 2 * margin)}"
    )
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{view}">',
    ]
    for polygon in instance.polygons:
        lines.append(
            f'  <path d="{path(polygon)}" fill="#bdbdbd" stroke="#757575" '
            'stroke-width="0.5%" />'
        )
    if partition is not None:
        for ci, hull in enumerate(partition.hulls):
            color = PALETTE[ci % len(PALETTE)]
            lines.append(
                f'  <path d="{path(hull)}" fill="none" stroke="{color}" '
                'stroke-width="1%" />'
            )
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
