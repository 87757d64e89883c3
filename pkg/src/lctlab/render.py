"""Deterministic SVG rendering of 2D Newton regions and staircase traces.

Output is plain string assembly with fixed number formatting, so identical
inputs produce byte-identical documents.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedOperationError
from .newton import PolyhedralRegion

_W, _H, _PAD = 420, 420, 40


def _fmt(x: float) -> str:
    return f"{x:.6f}".rstrip("0").rstrip(".")


class _Frame:
    def __init__(self, xmax: float, ymax: float):
        self.sx = (_W - 2 * _PAD) / xmax
        self.sy = (_H - 2 * _PAD) / ymax

    def pt(self, x, y) -> str:
        px = _PAD + float(x) * self.sx
        py = _H - _PAD - float(y) * self.sy
        return f"{_fmt(px)},{_fmt(py)}"


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f"<title>{title}</title>",
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]


def render_region_svg(region: PolyhedralRegion, ray_through=None,
                      entry_param: Fraction | None = None) -> str:
    """Newton polygon with lattice points; optionally the ray through
    u + (1,1) and its boundary-entry point."""
    if region.nvars != 2:
        raise UnsupportedOperationError("SVG rendering is two-dimensional only")
    verts = sorted(region.vertices)
    xmax = max([float(v[0]) for v in verts] + [2.0]) * 1.5
    ymax = max([float(v[1]) for v in verts] + [2.0]) * 1.5
    if ray_through is not None and entry_param is not None:
        px, py = (float(entry_param) * (ray_through[0] + 1),
                  float(entry_param) * (ray_through[1] + 1))
        xmax, ymax = max(xmax, 1.4 * px), max(ymax, 1.4 * py)
    fr = _Frame(xmax, ymax)
    out = _header("newton region")
    out.append(f'<line x1="{_PAD}" y1="{_H-_PAD}" x2="{_W-_PAD}" y2="{_H-_PAD}" '
               f'stroke="black"/>')
    out.append(f'<line x1="{_PAD}" y1="{_H-_PAD}" x2="{_PAD}" y2="{_PAD}" '
               f'stroke="black"/>')
    # boundary polyline: descend the staircase, then run along both recession
    # directions to the frame edge
    chain = sorted(verts, key=lambda v: (v[0], -v[1]))
    pts = [fr.pt(chain[0][0], ymax)] + [fr.pt(*v) for v in chain] + \
          [fr.pt(xmax, chain[-1][1])]
    out.append(f'<polyline points="{" ".join(pts)}" fill="none" stroke="steelblue" '
               f'stroke-width="2"/>')
    for v in verts:
        out.append(f'<circle cx="{fr.pt(*v).split(",")[0]}" '
                   f'cy="{fr.pt(*v).split(",")[1]}" r="4" fill="steelblue"/>')
    for i in range(int(xmax) + 1):
        for j in range(int(ymax) + 1):
            fill = "black" if region.contains((i, j)) else "lightgray"
            cx, cy = fr.pt(i, j).split(",")
            out.append(f'<circle cx="{cx}" cy="{cy}" r="1.5" fill="{fill}"/>')
    if ray_through is not None and entry_param is not None:
        u = ray_through
        tip = (float(entry_param) * (u[0] + 1) * 1.35, float(entry_param) * (u[1] + 1) * 1.35)
        out.append(f'<line x1="{fr.pt(0, 0).split(",")[0]}" y1="{fr.pt(0, 0).split(",")[1]}" '
                   f'x2="{fr.pt(*tip).split(",")[0]}" y2="{fr.pt(*tip).split(",")[1]}" '
                   f'stroke="firebrick" stroke-dasharray="4 3"/>')
        bx = entry_param * (u[0] + 1)
        by = entry_param * (u[1] + 1)
        cx, cy = fr.pt(bx, by).split(",")
        out.append(f'<circle cx="{cx}" cy="{cy}" r="5" fill="none" '
                   f'stroke="firebrick" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_steps_svg(pairs, title: str = "trace") -> str:
    """Step plot of (level, value) pairs; an empty list gives an empty frame."""
    out = _header(title)
    if pairs:
        xs = [float(p[0]) for p in pairs]
        ys = [float(p[1]) for p in pairs]
        xmax = max(xs + [1.0]) * 1.1
        ymax = max(ys + [1e-9]) * 1.2
        fr = _Frame(xmax, ymax)
        path = []
        for k, (x, y) in enumerate(zip(xs, ys)):
            if k:
                path.append(fr.pt(x, ys[k - 1]))
            path.append(fr.pt(x, y))
        out.append(f'<polyline points="{" ".join(path)}" fill="none" '
                   f'stroke="darkorange" stroke-width="2"/>')
        for x, y in zip(xs, ys):
            cx, cy = fr.pt(x, y).split(",")
            out.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="darkorange"/>')
    out.append(f'<line x1="{_PAD}" y1="{_H-_PAD}" x2="{_W-_PAD}" y2="{_H-_PAD}" '
               f'stroke="black"/>')
    out.append(f'<line x1="{_PAD}" y1="{_H-_PAD}" x2="{_PAD}" y2="{_PAD}" '
               f'stroke="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
