"""Pictures of patches: a hand-written SVG and a matplotlib PNG.

Euclidean patches are drawn with straight segments.  Fuchsian patches are
drawn in the Poincare disc with each edge an arc of the circle orthogonal to
the unit circle.
"""

from __future__ import annotations

import colorsys
import math

from .voltage import PeriodicGraph, build_patch

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)
MONO = "#333333"
SIZE = 600


def colour_hex(c: int) -> str:
    if c < len(PALETTE):
        return PALETTE[c]
    h = (c * 0.618033988749895) % 1.0
    r, g, b = colorsys.hls_to_rgb(h, 0.5, 0.65)
    return "#%02x%02x%02x" % (round(r * 255), round(g * 255), round(b * 255))


def orthogonal_arc(p: complex, q: complex):
    """Centre and radius of the circle through p, q orthogonal to the unit circle.

    Returns None when p, q and the origin are collinear (the geodesic is a
    diameter segment).
    """
    cross = p.real * q.imag - p.imag * q.real
    if abs(cross) < 1e-12:
        return None
    # 2 Re(c conj(p)) = |p|^2 + 1 and the same for q
    a1, b1, r1 = 2 * p.real, 2 * p.imag, abs(p) ** 2 + 1
    a2, b2, r2 = 2 * q.real, 2 * q.imag, abs(q) ** 2 + 1
    det = a1 * b2 - a2 * b1
    c = complex((r1 * b2 - r2 * b1) / det, (a1 * r2 - a2 * r1) / det)
    return c, math.sqrt(max(abs(c) ** 2 - 1, 0.0))


def _layout(pg: PeriodicGraph, pc, r: int):
    patch = build_patch(pg, None, r)
    pts = [complex(*p) for p in patch.positions()]
    if pc is None:
        fills = [MONO] * len(pts)
        colours = [None] * len(pts)
    else:
        colours = [pc.colour_of(v) for v in patch.vertices]
        fills = [colour_hex(c) for c in colours]
    return patch, pts, colours, fills


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def render_svg(pg: PeriodicGraph, pc=None, r: int = 3, mode: str | None = None) -> str:
    """Deterministic SVG of the radius-``r`` patch, coloured if ``pc`` is given."""
    mode = mode or ("poincare" if pg.is_fuchsian else "euclidean")
    if mode not in ("euclidean", "poincare"):
        raise ValueError("mode must be euclidean or poincare")
    patch, pts, _, fills = _layout(pg, pc, r)
    half = SIZE / 2
    if mode == "poincare":
        scale, centre = half * 0.95, 0j
    else:
        xs = [p.real for p in pts]
        ys = [p.imag for p in pts]
        span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        scale = (SIZE * 0.9) / span
        centre = complex((max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2)

    def screen(z: complex):
        w = (z - centre) * scale
        return half + w.real, half - w.imag

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if mode == "poincare":
        lines.append(f'<circle cx="{_fmt(half)}" cy="{_fmt(half)}" r="{_fmt(scale)}" fill="none" stroke="black" stroke-width="1"/>')
    lines.append('<g stroke="#888888" stroke-width="1" fill="none">')
    for i, j in patch.edges:
        (x1, y1), (x2, y2) = screen(pts[i]), screen(pts[j])
        arc = orthogonal_arc(pts[i], pts[j]) if mode == "poincare" else None
        if arc is None:
            lines.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
        else:
            c, rad = arc
            cx, cy = screen(c)
            cross = (x1 - cx) * (y2 - cy) - (y1 - cy) * (x2 - cx)
            sweep = 1 if cross > 0 else 0
            rr = _fmt(rad * scale)
            lines.append(f'<path d="M {_fmt(x1)} {_fmt(y1)} A {rr} {rr} 0 0 {sweep} {_fmt(x2)} {_fmt(y2)}"/>')
    lines.append("</g>")
    dot = 6 if mode == "euclidean" else 4
    lines.append('<g stroke="black" stroke-width="0.5">')
    for z, fill in zip(pts, fills):
        x, y = screen(z)
        rad = dot if mode == "euclidean" else max(1.0, dot * (1 - abs(z) ** 2))
        lines.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(rad)}" fill="{fill}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_figure(pg: PeriodicGraph, path: str, pc=None, r: int = 3, title: str | None = None) -> None:
    """Write a PNG of the same patch with matplotlib."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Arc, Circle

    poincare = pg.is_fuchsian
    patch, pts, _, fills = _layout(pg, pc, r)
    fig, ax = plt.subplots(figsize=(6, 6), dpi=100)
    if poincare:
        ax.add_patch(Circle((0, 0), 1.0, fill=False, color="black", lw=1))
    for i, j in patch.edges:
        p, q = pts[i], pts[j]
        arc = orthogonal_arc(p, q) if poincare else None
        if arc is None:
            ax.plot([p.real, q.real], [p.imag, q.imag], color="#888888", lw=0.8, zorder=1)
            continue
        c, rad = arc
        a1 = math.degrees(math.atan2(p.imag - c.imag, p.real - c.real))
        a2 = math.degrees(math.atan2(q.imag - c.imag, q.real - c.real))
        lo, hi = sorted((a1, a2))
        if hi - lo > 180:
            lo, hi = hi, lo + 360
        ax.add_patch(Arc((c.real, c.imag), 2 * rad, 2 * rad, theta1=lo, theta2=hi, color="#888888", lw=0.8, zorder=1))
    size = [18 if not poincare else max(2.0, 24 * (1 - abs(z) ** 2)) for z in pts]
    ax.scatter([z.real for z in pts], [z.imag for z in pts], s=size, c=fills, edgecolors="black", linewidths=0.3, zorder=2)
    ax.set_aspect("equal")
    ax.set_axis_off()
    if poincare:
        ax.set_xlim(-1.05, 1.05)
        ax.set_ylim(-1.05, 1.05)
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(path, format="png", metadata={"Software": None})
    plt.close(fig)
