"""Deterministic SVG drawing of a planar cell.

Everything is sampled from exact data and rounded to three decimals at
the last moment, so two runs with the same n produce identical bytes.
"""

from __future__ import annotations

from fractions import Fraction

from . import planar

FRAME = 1.05
SIZE = 600
MARGIN = 20
ARC_SAMPLES = 256
GRID = 160


def _px(x: float, y: float) -> tuple:
    scale = (SIZE - 2 * MARGIN) / FRAME
    return MARGIN + x * scale, SIZE - MARGIN - y * scale


def _fmt(v: float) -> str:
    text = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _path(points) -> str:
    coords = [_px(x, y) for x, y in points]
    head, *rest = coords
    return f"M{_fmt(head[0])},{_fmt(head[1])}" + "".join(f"L{_fmt(a)},{_fmt(b)}" for a, b in rest)


def _arc_points(k: int, lo: Fraction, hi: Fraction) -> list:
    curve = planar.residue_curve(k)
    out = []
    for i in range(ARC_SAMPLES):
        t = lo + (hi - lo) * Fraction(i, ARC_SAMPLES - 1)
        x, y = curve.point(t)
        out.append((float(x), float(y)))
    return out


def _clip_line(point, direction):
    """Portion of the line point + s * direction inside [0, FRAME]^2."""
    lo, hi = float("-inf"), float("inf")
    for p, d in zip(point, direction):
        if d == 0:
            if not 0 <= p <= FRAME:
                return None
            continue
        a, b = (0 - p) / d, (FRAME - p) / d
        lo, hi = max(lo, min(a, b)), min(hi, max(a, b))
    if lo >= hi:
        return None
    return [(point[0] + s * direction[0], point[1] + s * direction[1]) for s in (lo, hi)]


def _float_poly(poly):
    terms = [(float(c), exp) for exp, c in poly.sorted_terms()]

    def f(x, y):
        return sum(c * x ** ex * y ** ey for c, (ex, ey) in terms)
    return f


def _contour(poly) -> list:
    """Marching-squares segments of the zero set of poly on a GRID x GRID mesh."""
    f = _float_poly(poly)
    h = FRAME / GRID
    values = [[f(i * h, j * h) for j in range(GRID + 1)] for i in range(GRID + 1)]
    segments = []
    for i in range(GRID):
        for j in range(GRID):
            corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
            crossings = []
            for (a, b), (c, d) in zip(corners, corners[1:] + corners[:1]):
                va, vc = values[a][b], values[c][d]
                if (va < 0) != (vc < 0):
                    s = va / (va - vc)
                    crossings.append(((a + s * (c - a)) * h, (b + s * (d - b)) * h))
            for k in range(0, len(crossings) - 1, 2):
                segments.append((crossings[k], crossings[k + 1]))
    return segments


def cell_svg(n: int) -> str:
    """Boundary arcs, cusps, chords to (1, 1), cuspidal tangents and the
    zero set of the canonical form's numerator for the n-point cell."""
    if n < 3:
        raise ValueError("n must be at least 3")
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    (x0, y0), (x1, y1) = _px(0, 0), _px(FRAME, FRAME)
    lines.append(f'<rect class="frame" x="{_fmt(x0)}" y="{_fmt(y1)}" width="{_fmt(x1 - x0)}" '
                 f'height="{_fmt(y0 - y1)}" fill="none" stroke="#999" stroke-width="0.5"/>')

    segments = _contour(planar.canonical_form(n).combined.numerator)
    if segments:
        d = "".join(_path(seg) for seg in segments)
        lines.append(f'<path class="adjoint" d="{d}" stroke="#2a9d8f" stroke-width="0.8" fill="none"/>')

    for k in range(3, n):
        c = tuple(float(v) for v in planar.cusp(k))
        lines.append(f'<path class="chord" d="{_path([c, (1.0, 1.0)])}" stroke="#555" '
                     f'stroke-dasharray="4 3" fill="none"/>')
        curve = planar.param_curve(k)
        t_star = planar.cusp_parameter(k)
        direction = (float(curve.x_of_t.derivative().derivative()(t_star)),
                     float(curve.y_of_t.derivative().derivative()(t_star)))
        clipped = _clip_line(c, direction)
        if clipped:
            lines.append(f'<path class="tangent" d="{_path(clipped)}" stroke="#e76f51" '
                         f'stroke-dasharray="2 2" fill="none"/>')

    for k in range(2, n + 1):
        lo, hi = planar.boundary_arc(n, k)
        lines.append(f'<path class="boundary" data-curve="b_{k}" d="{_path(_arc_points(k, lo, hi))}" '
                     f'stroke="black" stroke-width="1.5" fill="none"/>')

    for k in range(3, n + 1):
        cx, cy = _px(*(float(v) for v in planar.cusp(k)))
        lines.append(f'<circle class="cusp" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3" fill="#264653"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
