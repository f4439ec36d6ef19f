"""Static SVG drawing of a curve inside its fundamental parallelogram."""
from __future__ import annotations

from fractions import Fraction
from math import floor
from xml.sax.saxutils import escape

from .curve import MarkedCurve, ParamCurve
from .torus import matvec

SIZE = 480
MARGIN = 30


def _pieces(c: ParamCurve, i: int) -> list[tuple[tuple, tuple]]:
    """Pieces of edge i cut by the parallelogram sides, translated into it (lattice coords)."""
    e = c.edges[i]
    a = c.positions[e.tail].coords
    step = c.torus.to_lattice_coords(e.displacement)
    b = (a[0] + step[0], a[1] + step[1])
    cuts = {Fraction(0), Fraction(1)}
    for j in range(2):
        if step[j]:
            lo, hi = sorted((a[j], b[j]))
            for n in range(floor(lo), floor(hi) + 1):
                tau = (n - a[j]) / step[j]
                if 0 < tau < 1:
                    cuts.add(tau)
    taus = sorted(cuts)
    out = []
    for t0, t1 in zip(taus, taus[1:]):
        mid = (a[0] + (t0 + t1) / 2 * step[0], a[1] + (t0 + t1) / 2 * step[1])
        k = (floor(mid[0]), floor(mid[1]))
        p0 = (a[0] + t0 * step[0] - k[0], a[1] + t0 * step[1] - k[1])
        p1 = (a[0] + t1 * step[0] - k[0], a[1] + t1 * step[1] - k[1])
        out.append((p0, p1))
    return out


def render_svg(c: ParamCurve | MarkedCurve) -> str:
    mc = c if isinstance(c, MarkedCurve) else None
    curve = mc.curve if mc else c
    S = curve.torus.period
    corners = [matvec(S, p) for p in ((0, 0), (1, 0), (1, 1), (0, 1))]
    xs = [float(p[0]) for p in corners]
    ys = [float(p[1]) for p in corners]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (SIZE - 2 * MARGIN) / span
    x0, y1 = min(xs), max(ys)

    def xy(lam) -> str:
        p = matvec(S, lam)
        return f"{MARGIN + (float(p[0]) - x0) * scale:.3f} {MARGIN + (y1 - float(p[1])) * scale:.3f}"

    def pt(lam) -> tuple[float, float]:
        a, b = xy(lam).split()
        return float(a), float(b)

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
             f'viewBox="0 0 {SIZE} {SIZE}">',
             '<rect width="100%" height="100%" fill="white"/>',
             '<polygon class="domain" points="' +
             " ".join(xy(p).replace(" ", ",") for p in ((0, 0), (1, 0), (1, 1), (0, 1))) +
             '" fill="none" stroke="black" stroke-width="3"/>']
    for i, e in enumerate(curve.edges):
        pieces = _pieces(curve, i)
        lines.append(f'<g class="edge" data-edge="{i}" data-weight="{e.weight}">')
        for p0, p1 in pieces:
            (ax, ay), (bx, by) = pt(p0), pt(p1)
            lines.append(f'<line x1="{ax:.3f}" y1="{ay:.3f}" x2="{bx:.3f}" y2="{by:.3f}" '
                         f'stroke="#1f4e9c" stroke-width="{1.5 + 0.7 * (e.weight - 1):.1f}"/>')
        if e.weight > 1 and pieces:
            p0, p1 = max(pieces, key=lambda p: (float(p[1][0] - p[0][0]) ** 2
                                                + float(p[1][1] - p[0][1]) ** 2))
            (ax, ay), (bx, by) = pt(p0), pt(p1)
            lines.append(f'<text class="weight" x="{(ax + bx) / 2 + 4:.3f}" y="{(ay + by) / 2 - 4:.3f}" '
                         f'font-size="14">{e.weight}</text>')
        lines.append('</g>')
    for v, p in enumerate(curve.positions):
        x, y = pt(p.coords)
        lines.append(f'<circle class="vertex" data-vertex="{v}" cx="{x:.3f}" cy="{y:.3f}" r="3" fill="black"/>')
    if mc is not None:
        from .curve import mark_position
        for k, (e, t) in enumerate(mc.marks):
            x, y = pt(mark_position(curve, e, t).coords)
            glyph = "×" if k % 2 == 0 else "+"
            lines.append(f'<text class="mark" data-mark="{k}" x="{x:.3f}" y="{y:.3f}" font-size="18" '
                         f'text-anchor="middle" dominant-baseline="central" fill="#b00">{escape(glyph)}</text>')
    lines.append('</svg>')
    return "\n".join(lines) + "\n"
