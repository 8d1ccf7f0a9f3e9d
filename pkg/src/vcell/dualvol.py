"""Canonical functions of convex polygons as polar-dual areas.

For a convex polygon P and an interior point x, the canonical function is
the normalized area (twice the Euclidean area) of the polar dual
(P - x)^dual = {y : <y, v - x> >= -1 for every vertex v}.  Exterior values
come from signed differences over a subdivision; approximating sequences
and the truncations of the limiting planar cell are reported from here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple, Sequence

from .exact import MultiPoly, exact_sum, rat
from .forms import XY, RationalTwoForm, combine, xy_gens
from . import planar


class InvalidScaffold(ValueError):
    pass


class NonConvexConfiguration(ValueError):
    pass


def _pt(p):
    return (rat(p[0]), rat(p[1]))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


class Polygon:
    """Exact polygon with counterclockwise vertices (reversed on input if needed)."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Sequence):
        verts = [_pt(v) for v in vertices]
        if len(verts) < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        if len(set(verts)) != len(verts):
            raise ValueError("repeated vertex")
        if _area2(verts) < 0:
            verts.reverse()
        if _area2(verts) == 0:
            raise ValueError("degenerate polygon")
        self.vertices = tuple(verts)

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, Polygon) or len(other) != len(self):
            return False
        n = len(self)
        start = other.vertices.index(self.vertices[0]) if self.vertices[0] in other.vertices else None
        if start is None:
            return False
        return all(self.vertices[i] == other.vertices[(start + i) % n] for i in range(n))

    def __hash__(self):
        return hash(frozenset(self.vertices))

    def edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def area2(self) -> Fraction:
        return _area2(self.vertices)

    def is_strictly_convex(self) -> bool:
        n = len(self.vertices)
        return all(_cross(self.vertices[i], self.vertices[(i + 1) % n], self.vertices[(i + 2) % n]) > 0
                   for i in range(n))

    def side(self, x) -> int:
        """1 strictly inside, 0 on the boundary, -1 outside (convex polygons)."""
        x = _pt(x)
        signs = [_cross(a, b, x) for a, b in self.edges()]
        if all(s > 0 for s in signs):
            return 1
        if all(s >= 0 for s in signs):
            return 0
        return -1

    def translated(self, v) -> "Polygon":
        v = _pt(v)
        return Polygon([(a + v[0], b + v[1]) for a, b in self.vertices])

    def scaled(self, lam) -> "Polygon":
        lam = rat(lam)
        return Polygon([(a * lam, b * lam) for a, b in self.vertices])

    def to_json(self) -> dict:
        from .exact import rat_str
        return {"vertices": [[rat_str(a), rat_str(b)] for a, b in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> "Polygon":
        return cls([(rat(a), rat(b)) for a, b in data["vertices"]])

    def __repr__(self):
        return f"Polygon({[(str(a), str(b)) for a, b in self.vertices]})"


def _area2(verts) -> Fraction:
    n = len(verts)
    return sum((verts[i][0] * verts[(i + 1) % n][1] - verts[(i + 1) % n][0] * verts[i][1]
                for i in range(n)), Fraction(0))


def convex_hull(points) -> Polygon:
    """Monotone-chain hull, dropping collinear boundary points."""
    pts = sorted(set(_pt(p) for p in points))
    if len(pts) < 3:
        raise ValueError("hull of fewer than 3 points")
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return Polygon(lower[:-1] + upper[:-1])


class DualVolumeValue(NamedTuple):
    value: Fraction
    bounded: bool


def dual_vertices(P: Polygon, x) -> list:
    """Vertices of (P - x)^dual, one per edge of P, in counterclockwise order."""
    x = _pt(x)
    ws = [(a - x[0], b - x[1]) for a, b in P.vertices]
    out = []
    for i in range(len(ws)):
        (a, b), (c, d) = ws[i], ws[(i + 1) % len(ws)]
        det = a * d - b * c
        out.append(((b - d) / det, (c - a) / det))
    return out


def dual_volume(P: Polygon, x) -> DualVolumeValue:
    """Normalized area of the polar dual of P about x (standard triangle -> 1)."""
    x = _pt(x)
    if P.side(x) != 1:
        return DualVolumeValue(None, False)
    ys = dual_vertices(P, x)
    n = len(ys)
    total = exact_sum(ys[i][0] * ys[(i + 1) % n][1] - ys[(i + 1) % n][0] * ys[i][1]
                      for i in range(n))
    return DualVolumeValue(total, True)


def dual_volume_float(P: Polygon, x) -> float:
    """Same quantity in floating point, for very large polygons in reports."""
    x = (float(x[0]), float(x[1]))
    ws = [(float(a) - x[0], float(b) - x[1]) for a, b in P.vertices]
    ys = []
    for i in range(len(ws)):
        (a, b), (c, d) = ws[i], ws[(i + 1) % len(ws)]
        det = a * d - b * c
        ys.append(((b - d) / det, (c - a) / det))
    n = len(ys)
    return math.fsum(ys[i][0] * ys[(i + 1) % n][1] - ys[(i + 1) % n][0] * ys[i][1] for i in range(n))


def polar_dual_polygon(P: Polygon, x=(0, 0)) -> Polygon:
    return Polygon(dual_vertices(P, x))


# ---------------------------------------------------------------------------
# canonical forms of polygons


def triangle_form(a, b, c) -> RationalTwoForm:
    """<abc>^2 / (<xbc><axc><abx>) dx^dy, positive inside the triangle."""
    a, b, c = _pt(a), _pt(b), _pt(c)
    x, y = xy_gens()
    p = (x, y)

    def bracket(u, v, w):
        # determinant of rows (1, u), (1, v), (1, w) where entries may be polynomials
        return ((v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0]))

    area = _cross(a, b, c)
    if not area:
        raise ValueError("degenerate triangle")
    num = MultiPoly.const(XY, area * area)
    return RationalTwoForm(num, [(bracket(p, b, c), 1), (bracket(a, p, c), 1), (bracket(a, b, p), 1)])


def polygon_form(P: Polygon) -> RationalTwoForm:
    """Canonical form of a convex polygon, as a fan of triangles."""
    v = P.vertices
    return combine([triangle_form(v[0], v[i], v[i + 1]) for i in range(1, len(v) - 1)])[0]


# ---------------------------------------------------------------------------
# exterior values through a subdivision


def _union_polygon(pieces):
    """Union of interior-disjoint convex pieces if it is convex, else None."""
    hull = convex_hull([v for p in pieces for v in p.vertices])
    if hull.area2() != sum((p.area2() for p in pieces), Fraction(0)):
        return None
    return hull


def canonical_value_exterior(P: Polygon, x, scaffold: Sequence[Polygon]) -> Fraction:
    """Value at x of the canonical function of ``P`` (continued outside P).

    ``scaffold`` is a subdivision containing ``P`` as a piece and some piece
    with x in its interior.  With U a convex union of pieces containing
    that piece but not P, such that U and P together are convex again,
    omega_P(x) = vol(U + P) - vol(U), both duals taken about an interior x.
    """
    x = _pt(x)
    scaffold = list(scaffold)
    if P.side(x) == 1:
        return dual_volume(P, x).value
    try:
        target = scaffold.index(P)
    except ValueError:
        raise InvalidScaffold("P must be one of the scaffold pieces")
    homes = [i for i, piece in enumerate(scaffold) if piece.side(x) == 1]
    if not homes:
        raise InvalidScaffold("x is interior to no piece")
    home = homes[0]
    others = [i for i in range(len(scaffold)) if i not in (home, target)]
    for size in range(len(others) + 1):
        for extra in combinations(others, size):
            base = [scaffold[home]] + [scaffold[i] for i in extra]
            union = _union_polygon(base)
            if union is None:
                continue
            grown = _union_polygon(base + [P])
            if grown is None:
                continue
            return dual_volume(grown, x).value - dual_volume(union, x).value
    raise InvalidScaffold("no convex chain reaches P")


# ---------------------------------------------------------------------------
# approximating sequences


def approximate_region(vertex_stream: Sequence, j: int):
    """(P_j, U_j): U_j is the hull of the first j + 2 stream points and P_j
    the piece added at step j (the first triangle when j = 1).  Every new
    point must lie strictly outside U_{j-1} with all earlier points
    remaining extreme."""
    if j < 1:
        raise ValueError("j must be at least 1")
    pts = [_pt(p) for p in vertex_stream[: j + 2]]
    if len(pts) < j + 2:
        raise ValueError("vertex stream too short")
    union = Polygon(pts[:3])
    if not union.is_strictly_convex():
        raise NonConvexConfiguration("first three points are collinear")
    piece = union
    for p in pts[3:]:
        if union.side(p) != -1:
            raise NonConvexConfiguration(f"point {p} is not outside the current hull")
        visible = set()
        for a, b in union.edges():
            if _cross(a, b, p) < 0:
                visible.update((a, b))
        piece = convex_hull(list(visible) + [p])
        grown = convex_hull(list(union.vertices) + [p])
        if len(grown) != len(union) + 1:
            raise NonConvexConfiguration(f"adding {p} removes earlier vertices")
        union = grown
    return piece, union


def circle_point(k: int, count: int, precision: int = 2000):
    """Rational point on the unit circle near angle 2 pi k / count.

    The base angle is folded into [0, pi/4]; tan(angle/2) is rounded to a
    fraction with denominator at most ``precision``, and the octant
    symmetries are applied exactly.
    """
    k %= count
    octant, rest = divmod(8 * k, count)
    angle = 2 * math.pi * rest / (8 * count)
    if octant % 2:
        angle = math.pi / 4 - angle
    u = Fraction(math.tan(angle / 2)).limit_denominator(precision)
    a, b = (1 - u * u) / (1 + u * u), 2 * u / (1 + u * u)
    if octant % 2:
        a, b = b, a
    # rotate by octant // 2 quarter turns
    for _ in range(octant // 2):
        a, b = -b, a
    return (a, b)


def disk_stream(levels: int) -> list:
    """Points on the unit circle, refined level by level: 4 points for level
    2, then the midpoints (in angle) of every previous arc."""
    pts = [circle_point(k, 4) for k in range(4)]
    for level in range(3, levels + 1):
        count = 2**level
        pts += [circle_point(k, count) for k in range(1, count, 2)]
    return pts


def inscribed_disk_polygon(level: int) -> Polygon:
    count = 2**level
    return Polygon([circle_point(k, count) for k in range(count)])


class SequenceReport(NamedTuple):
    values: list
    deltas: list
    monotone: bool
    monotone_magnitude: bool


def sequence_report(values) -> SequenceReport:
    floats = [float(v) for v in values]
    deltas = [b - a for a, b in zip(floats, floats[1:])]
    exact_deltas = [b - a for a, b in zip(values, values[1:])]
    monotone = all(d <= 0 for d in exact_deltas) or all(d >= 0 for d in exact_deltas)
    mags = [abs(d) for d in exact_deltas]
    monotone_mag = all(b <= a for a, b in zip(mags, mags[1:]))
    return SequenceReport(values, deltas, monotone, monotone_mag)


def disk_convergence(levels: int = 12, x=(0, Fraction(1, 2))) -> SequenceReport:
    """Dual volumes at x of the inscribed 2^j-gons, j = 2..levels."""
    values = [dual_volume(inscribed_disk_polygon(j), x).value for j in range(2, levels + 1)]
    return sequence_report(values)


# ---------------------------------------------------------------------------
# limiting planar cell


@lru_cache(maxsize=None)
def hull_polygon(n: int) -> Polygon:
    """conv{(1/k, 1/k^2) : k = 1..n}; these points are in convex position."""
    return convex_hull([planar.vertex(k) for k in range(1, n + 1)])


@dataclass(frozen=True)
class LimitRow:
    n: int
    value: Fraction
    hull_value: Fraction
    complement_value: Fraction
    delta: Fraction

    @property
    def cross_check(self) -> bool:
        return self.hull_value - self.complement_value == self.value


@dataclass(frozen=True)
class LimitReport:
    point: tuple
    rows: tuple
    monotone_magnitude: bool
    converged: bool
    tolerance: float


def limiting_canonical(x, N: int, tolerance: float = 1e-9) -> LimitReport:
    """Ω_n(x) for n = 3..N with the hull cross-check
    dual_volume(hull_n, x) - sum of complement-piece values == Ω_n(x)."""
    x = _pt(x)
    if N < 3:
        raise ValueError("N must be at least 3")
    if planar.membership(3, x) != planar.INSIDE:
        raise ValueError("x must lie strictly inside the three-point cell")
    rows = []
    previous = None
    for n in range(3, N + 1):
        value = planar.canonical_value(n, x)
        hull = dual_volume(hull_polygon(n), x).value
        comp = sum((piece.form.value(x) for piece in planar.complement_pieces(n)), Fraction(0))
        delta = None if previous is None else value - previous
        rows.append(LimitRow(n, value, hull, comp, delta))
        previous = value
    mags = [abs(r.delta) for r in rows if r.delta is not None]
    monotone = all(b <= a for a, b in zip(mags, mags[1:]))
    converged = bool(mags) and float(mags[-1]) < tolerance
    return LimitReport(x, tuple(rows), monotone, converged, tolerance)
