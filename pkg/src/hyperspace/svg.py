"""Flat SVG rendering of 2D frames.

Every frame of a path animation is drawn into the same viewBox (the union
of all frame bounding boxes) so the images line up when flipped through.
Boxes are stroked outlines, points are small dots, and each frame carries
its t value as a text label.  The y axis is flipped so math coordinates
point up.
"""

from __future__ import annotations

import math

from .geometry import AxisBox, CompactSet, FiniteSet, GeometryError, Segment

PX_WIDTH = 640
DOT_PX = 2.0
STROKE_PX = 1.5
MARGIN = 0.05


def shared_viewbox(frames) -> tuple:
    """(x, y, w, h) covering every frame, with a margin, y flipped."""
    boxes = [frame.bounding_box() for frame in frames]
    x0 = min(b.lo[0] for b in boxes)
    x1 = max(b.hi[0] for b in boxes)
    y0 = min(b.lo[1] for b in boxes)
    y1 = max(b.hi[1] for b in boxes)
    pad = MARGIN * max(x1 - x0, y1 - y0, 1.0)
    return (x0 - pad, -y1 - pad, (x1 - x0) + 2 * pad, (y1 - y0) + 2 * pad)


def render_frame(A: CompactSet, t: float, viewbox: tuple) -> str:
    """One frame as a standalone SVG document string."""
    if A.dim != 2:
        raise GeometryError(f"svg rendering needs dimension 2, got {A.dim}")
    x, y, w, h = viewbox
    unit = w / PX_WIDTH  # user units per pixel
    px_height = max(1, math.ceil(h / unit))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{PX_WIDTH}" '
        f'height="{px_height}" viewBox="{x:g} {y:g} {w:g} {h:g}">',
        f'<text x="{x + 8 * unit:g}" y="{y + 18 * unit:g}" '
        f'font-size="{14 * unit:g}" font-family="sans-serif">t = {t:g}</text>',
    ]
    for prim in A.primitives():
        parts.extend(_render_primitive(prim, unit))
    parts.append("</svg>")
    return "\n".join(parts)


def _render_primitive(prim: CompactSet, unit: float):
    stroke = f'stroke="black" stroke-width="{STROKE_PX * unit:g}"'
    dot = DOT_PX * unit
    if isinstance(prim, FiniteSet):
        return [f'<circle cx="{p[0]:g}" cy="{-p[1]:g}" r="{dot:g}"/>'
                for p in prim.points]
    if isinstance(prim, Segment):
        return [f'<line x1="{prim.p[0]:g}" y1="{-prim.p[1]:g}" '
                f'x2="{prim.q[0]:g}" y2="{-prim.q[1]:g}" {stroke}/>']
    if isinstance(prim, AxisBox):
        (x0, y0), (x1, y1) = prim.lo, prim.hi
        if x0 == x1 and y0 == y1:
            return [f'<circle cx="{x0:g}" cy="{-y0:g}" r="{dot:g}"/>']
        if x0 == x1 or y0 == y1:
            return [f'<line x1="{x0:g}" y1="{-y0:g}" '
                    f'x2="{x1:g}" y2="{-y1:g}" {stroke}/>']
        return [f'<rect x="{x0:g}" y="{-y1:g}" width="{x1 - x0:g}" '
                f'height="{y1 - y0:g}" fill="none" {stroke}/>']
    raise GeometryError(f"cannot render {type(prim).__name__}")
