"""Deterministic SVG 1.1 rendering of planar instances and their greedy cover."""

from __future__ import annotations

from .density import Instance
from .geometry import Kind

UNIT_PX = 100.0
PAD = 0.10
POINT_PX = 3.0


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _extent(inst: Instance):
    xs, ys = [], []
    if inst.body.kind is Kind.POLYGON:
        vx = [v[0] for v in inst.body.vertices]
        vy = [v[1] for v in inst.body.vertices]
        ext = (min(vx), max(vx), min(vy), max(vy))
    else:
        ext = (-1.0, 1.0, -1.0, 1.0)
    for h in inst.red:
        (cx, cy), r = h.center, h.ratio
        xs += [cx + r * ext[0], cx + r * ext[1]]
        ys += [cy + r * ext[2], cy + r * ext[3]]
    for bx, by in inst.blue:
        xs.append(bx)
        ys.append(by)
    return min(xs), max(xs), min(ys), max(ys)


def render_svg(inst: Instance, selected=()) -> str:
    """Draw every red homothet, shade the ``selected`` ones, mark red and blue points.

    Red points are hollow circles, blue points filled.  Output is byte-for-byte
    reproducible: fixed 6-digit precision and input order throughout.
    """
    if inst.dim != 2:
        raise ValueError("SVG rendering needs a planar instance (dim 2)")
    x0, x1, y0, y1 = _extent(inst)
    w, h = x1 - x0, y1 - y0
    px, py = PAD * (w or 1.0), PAD * (h or 1.0)
    x0, x1, y0, y1 = x0 - px, x1 + px, y0 - py, y1 + py
    width, height = (x1 - x0) * UNIT_PX, (y1 - y0) * UNIT_PX

    def X(x):
        return _fmt((x - x0) * UNIT_PX)

    def Y(y):
        return _fmt((y1 - y) * UNIT_PX)

    chosen = set(selected)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>',
    ]
    # unselected first so shaded members sit on top
    order = [i for i in range(len(inst.red)) if i not in chosen] + [i for i in range(len(inst.red)) if i in chosen]
    for i in order:
        hm = inst.red[i]
        style = ('fill="#9ecae1" fill-opacity="0.45" stroke="#08519c" stroke-width="1.5"' if i in chosen
                 else 'fill="none" stroke="#969696" stroke-width="1"')
        (cx, cy), r = hm.center, hm.ratio
        if inst.body.kind is Kind.EUCLIDEAN:
            lines.append(f'<circle id="K{i}" cx="{X(cx)}" cy="{Y(cy)}" r="{_fmt(r * UNIT_PX)}" {style}/>')
        elif inst.body.kind is Kind.LINF:
            lines.append(f'<rect id="K{i}" x="{X(cx - r)}" y="{Y(cy + r)}" width="{_fmt(2 * r * UNIT_PX)}" '
                         f'height="{_fmt(2 * r * UNIT_PX)}" {style}/>')
        else:
            pts = " ".join(f"{X(cx + r * vx)},{Y(cy + r * vy)}" for vx, vy in inst.body.vertices)
            lines.append(f'<polygon id="K{i}" points="{pts}" {style}/>')
    for i, hm in enumerate(inst.red):
        cx, cy = hm.center
        lines.append(f'<circle id="r{i}" cx="{X(cx)}" cy="{Y(cy)}" r="{_fmt(POINT_PX)}" '
                     f'fill="white" stroke="#cb181d" stroke-width="1.2"/>')
    for j, (bx, by) in enumerate(inst.blue):
        lines.append(f'<circle id="b{j}" cx="{X(bx)}" cy="{Y(by)}" r="{_fmt(POINT_PX)}" fill="#2171b5"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
