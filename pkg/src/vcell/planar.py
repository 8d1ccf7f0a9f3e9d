"""Planar cells: the curves b_k, cusps, chords, the canonical-form recursion
and sign-condition membership for the image of the simplex under
x -> (p_2(x), p_3(x)).

Conventions used throughout:

* ``vertex(k) = (1/k, 1/k^2)`` is the image of the uniform point on k
  coordinates; ``vertex(1) = (1, 1)``.  For k >= 3 it is also the cusp of b_k.
* b_k is parametrized by t -> (x(t), y(t)) with the coordinate ``t``
  repeated once and ``(1 - t)/(k - 1)`` repeated k - 1 times.  t = 0 gives
  vertex(k - 1), t = 1/k the cusp and t = 1 the point (1, 1).
* The cell for n points is bounded by the segment of b_2 from vertex(2) to
  (1, 1), the arcs t in [0, 1/k] of b_3, ..., b_n, and the arc t in [1/n, 1]
  of b_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import MultiPoly, UniRat, det, rat, rational_roots, u_divmod, u_gcd, u_mul
from .fixtures import bk_coefficients, resultant_matrix
from .forms import (XY, OneFormT, ParamCurve, RationalTwoForm, combine, line_curve,
                    pullback_poly, residue, segment_form, xy_gens)

INSIDE = "Inside"
ON_BOUNDARY = "OnBoundary"
OUTSIDE = "Outside"

ONE_ONE = (Fraction(1), Fraction(1))


def _check_k(k, least):
    if not isinstance(k, int) or k < least:
        raise ValueError(f"index must be an integer >= {least}, got {k!r}")


@lru_cache(maxsize=None)
def boundary_poly(k: int) -> MultiPoly:
    """The curve b_k, with constant term -1."""
    _check_k(k, 2)
    return MultiPoly(XY, bk_coefficients(k))


@lru_cache(maxsize=None)
def reduced_b2() -> MultiPoly:
    """Linear factor 2y - 3x + 1 of b_2 = -(2y - 3x + 1)^2."""
    x, y = xy_gens()
    return 2 * y - 3 * x + 1


def resultant_boundary(n: int) -> MultiPoly:
    """Determinant of the 5x5 presenting matrix at n (a multiple of b_n)."""
    _check_k(n, 3)
    return det(resultant_matrix(n))


def scalar_multiple(p: MultiPoly, q: MultiPoly):
    """lambda with p == lambda * q, or None."""
    if q.is_zero() or p.is_zero():
        return None
    exp, coeff = q.leading_term()
    lam = p.terms.get(exp, Fraction(0)) / coeff
    return lam if lam and p == q * lam else None


def boundary_factor(k: int) -> MultiPoly:
    """Denominator factor contributed by b_k (reduced line for k = 2)."""
    return reduced_b2() if k == 2 else boundary_poly(k).normalized()[1]


def param_polys(k: int):
    """Numerators (P_x, P_y) and common denominator Q of b_k's parametrization."""
    _check_k(k, 2)
    m = Fraction(k - 1)
    one_minus = [Fraction(1), Fraction(-1)]
    px = [c * m for c in u_mul(one_minus, one_minus)]
    px = [a + b for a, b in zip(px, [0, 0, m * m])]
    py = u_mul(u_mul(one_minus, one_minus), one_minus)
    py = [a + b for a, b in zip(py, [0, 0, 0, m * m])]
    return px, py, [m * m]


@lru_cache(maxsize=None)
def param_curve(k: int) -> ParamCurve:
    """Rational parametrization of b_k (implicit equation kept unreduced)."""
    px, py, q = param_polys(k)
    implicit = reduced_b2() if k == 2 else boundary_poly(k)
    return ParamCurve(implicit, UniRat(px, q), UniRat(py, q), (Fraction(0), Fraction(1)), f"b_{k}")


@lru_cache(maxsize=None)
def residue_curve(k: int) -> ParamCurve:
    """Curve used for residues along b_k.  For k = 2 the line is
    parametrized by x = s so the boundary segment is s in [1/2, 1]."""
    if k == 2:
        return line_curve(reduced_b2(), "b_2'")
    return param_curve(k)


@dataclass(frozen=True)
class BoundaryCurve:
    k: int
    poly: MultiPoly
    param: ParamCurve


def boundary_curve(k: int) -> BoundaryCurve:
    return BoundaryCurve(k, boundary_poly(k), param_curve(k))


def vertex(k: int):
    _check_k(k, 1)
    return (Fraction(1, k), Fraction(1, k * k))


def cusp(k: int):
    """Singular point (1/k, 1/k^2) of b_k, checked exactly."""
    _check_k(k, 3)
    point = vertex(k)
    b = boundary_poly(k)
    if b(point) or b.diff("x")(point) or b.diff("y")(point):
        raise ArithmeticError(f"b_{k} is not singular at {point}")
    return point


def cusp_parameter(k: int) -> Fraction:
    return Fraction(1, k)


def preimages(k: int, point) -> list:
    """Parameters t with param_k(t) = point (rational roots of the gcd of
    P_x - x Q and P_y - y Q)."""
    px, py, q = param_polys(k)
    cx, cy = (rat(v) for v in point)
    ax = [a - b for a, b in zip(px, [q[0] * cx] + [0] * (len(px) - 1))]
    ay = [a - b for a, b in zip(py, [q[0] * cy] + [0] * (len(py) - 1))]
    return rational_roots(u_gcd(ax, ay))


def root_multiplicity(r: UniRat, t0) -> int:
    """Order of vanishing of r at t0 (numerator only; r must be finite there)."""
    t0 = rat(t0)
    num = list(r.num)
    if not num:
        raise ValueError("zero function")
    k = 0
    lin = [-t0, Fraction(1)]
    while True:
        q, rem = u_divmod(num, lin)
        if rem:
            return k
        num, k = q, k + 1


def line_through(a, b) -> MultiPoly:
    """Normalized line through two distinct points."""
    ax, ay = (rat(v) for v in a)
    bx, by = (rat(v) for v in b)
    if (ax, ay) == (bx, by):
        raise ValueError("points coincide")
    x, y = xy_gens()
    line = x * (ay - by) + y * (bx - ax) + (ax * by - ay * bx)
    return line.normalized()[1]


def chord_to_top(k: int) -> MultiPoly:
    """l(vertex(k), (1, 1))."""
    return line_through(vertex(k), ONE_ONE)


@lru_cache(maxsize=None)
def cuspidal_tangent(k: int) -> MultiPoly:
    """Line through the cusp of b_k with contact order exactly 3.

    Writing L = a (x - c_x) + b (y - c_y), the pullback vanishes to order
    2 automatically (x' = y' = 0 at the cusp); order 3 forces
    a x''(t*) + b y''(t*) = 0.
    """
    cx, cy = cusp(k)
    curve = param_curve(k)
    t_star = cusp_parameter(k)
    xpp = curve.x_of_t.derivative().derivative()(t_star)
    ypp = curve.y_of_t.derivative().derivative()(t_star)
    if not xpp and not ypp:
        raise ArithmeticError("degenerate second derivatives at the cusp")
    x, y = xy_gens()
    line = (x - cx) * ypp - (y - cy) * xpp
    line = line.normalized()[1]
    if root_multiplicity(pullback_poly(line, curve), t_star) != 3:
        raise ArithmeticError(f"cuspidal tangent of b_{k} does not have contact 3")
    return line


def cuspidal_tangent_oriented(k: int) -> MultiPoly:
    """Cuspidal tangent signed as y''(t*) (x - c_x) - x''(t*) (y - c_y); the
    shell between b_k and b_{k+1} lies where this is <= 0."""
    line = cuspidal_tangent(k)
    # x'' > 0 at the cusp, so the y-coefficient of the oriented form is negative
    return -line


# ---------------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class Region:
    label: str
    conditions: tuple      # (poly, sign): sign * poly >= 0 on the closed region
    witness: tuple

    def contains(self, point, strict: bool = True) -> bool:
        for poly, sign in self.conditions:
            v = sign * poly(point)
            if v < 0 or (strict and v == 0):
                return False
        return True


def _right_of_top():
    x, _ = xy_gens()
    return 1 - x


def base_conditions():
    return ((reduced_b2(), 1), (boundary_poly(3), 1), (_right_of_top(), 1))


def shell_conditions(k: int):
    """Closed sign conditions of the shell cell(k+1) minus cell(k)."""
    return ((boundary_poly(k + 1), 1), (boundary_poly(k), -1),
            (cuspidal_tangent_oriented(k), -1), (_right_of_top(), 1))


def _closed_pieces(n):
    pieces = [base_conditions()]
    pieces += [shell_conditions(k) for k in range(3, n)]
    return pieces


def _satisfies(conditions, point, strict):
    for poly, sign in conditions:
        v = sign * poly(point)
        if v < 0 or (strict and v == 0):
            return False
    return True


def membership(n: int, point) -> str:
    """Inside / OnBoundary / Outside for the planar cell with n points.

    A point is Inside when it satisfies the base or some shell conditions
    strictly, OnBoundary when it only satisfies them with equality in some
    polynomial, Outside otherwise.  Points on internal walls (a shell's
    cuspidal-tangent side or an upper arc of b_k with k < n) are also
    reported OnBoundary.
    """
    _check_k(n, 3)
    point = tuple(rat(v) for v in point)
    pieces = _closed_pieces(n)
    if any(_satisfies(c, point, True) for c in pieces):
        return INSIDE
    if any(_satisfies(c, point, False) for c in pieces):
        return ON_BOUNDARY
    return OUTSIDE


# ---------------------------------------------------------------------------
# subdivision


def _witness(conditions, n):
    """Deterministic strict interior point: midpoints between points on
    b_n..b_3 arcs and the line b_2', then a coarse grid as a fallback."""
    anchors = []
    for k in range(3, n + 1):
        curve = param_curve(k)
        anchors += [curve.point(Fraction(i, 24)) for i in range(25)]
    anchors += [(Fraction(1, 2) + Fraction(i, 48), (3 * (Fraction(1, 2) + Fraction(i, 48)) - 1) / 2)
                for i in range(25)]
    for i, a in enumerate(anchors):
        for b in anchors[i + 1:]:
            for w in (Fraction(1, 2), Fraction(1, 5), Fraction(4, 5), Fraction(1, 20), Fraction(19, 20)):
                p = (a[0] * w + b[0] * (1 - w), a[1] * w + b[1] * (1 - w))
                if _satisfies(conditions, p, True):
                    return p
    for den in (64, 256, 1024):
        for i in range(den + 1):
            for j in range(i + 1):
                p = (Fraction(i, den), Fraction(j, den))
                if _satisfies(conditions, p, True):
                    return p
    raise ArithmeticError("no interior witness found")


def subdivision(n: int) -> list:
    """Base piece plus, for each 3 <= k < n, the shell between cell(k) and
    cell(k+1) split by the chord l(c_k, (1, 1))."""
    _check_k(n, 3)
    regions = [Region("AII", base_conditions(), (Fraction(7, 18), Fraction(1, 6)))]
    for k in range(3, n):
        chord = chord_to_top(k)
        for side in (1, -1):
            conds = shell_conditions(k) + ((chord, side),)
            regions.append(Region("CellPiece", conds, _witness(conds, n)))
    return regions


# ---------------------------------------------------------------------------
# canonical forms


def _segment_curve(a, b, name="") -> ParamCurve:
    """Line through a (s = 0) and b (s = 1)."""
    ax, ay = (rat(v) for v in a)
    bx, by = (rat(v) for v in b)
    return ParamCurve(line_through(a, b), UniRat([ax, bx - ax]), UniRat([ay, by - ay]),
                      (Fraction(0), Fraction(1)), name)


def _fit(form: RationalTwoForm, curve: ParamCurve, target: OneFormT) -> RationalTwoForm:
    """Rescale ``form`` so that its residue along ``curve`` equals ``target``."""
    res = residue(form, curve).coeff
    ratio = target.coeff / res
    if len(ratio.num) != 1 or len(ratio.den) != 1:
        raise ArithmeticError("residue is not proportional to the target segment form")
    return form.scaled(ratio.num[0] / ratio.den[0])


def _orient(form: RationalTwoForm, witness) -> RationalTwoForm:
    value = form.value(witness)
    if value == 0:
        raise ArithmeticError("witness lies on the adjoint curve")
    return form if value > 0 else -form


def _mid(a, b, w=Fraction(1, 2)):
    return (a[0] * w + b[0] * (1 - w), a[1] * w + b[1] * (1 - w))


BASE_WITNESS = (Fraction(7, 18), Fraction(1, 6))


@lru_cache(maxsize=None)
def base_form() -> RationalTwoForm:
    """Canonical form for three points: l(c_3,(1,1)) / (b_2' b_3), scaled
    so its residue on b_2' is the segment form of x in [1/2, 1]."""
    raw = RationalTwoForm(chord_to_top(3), [(reduced_b2(), 1), (boundary_poly(3), 1)])
    fitted = _fit(raw, residue_curve(2), segment_form(Fraction(1, 2), 1))
    return _orient(fitted, BASE_WITNESS)


@dataclass(frozen=True)
class ComplementPiece:
    """Region between a straight chord and an arc of b_k, outside the cell
    but inside its convex hull."""

    k: int
    arc: tuple           # parameter interval on b_k
    chord: tuple         # chord endpoints
    form: RationalTwoForm
    witness: tuple


@lru_cache(maxsize=None)
def complement_piece(k: int, upper: bool) -> ComplementPiece:
    """Lower arc t in [0, 1/k] (chord from vertex(k-1) to the cusp) or upper
    arc t in [1/k, 1] (chord from the cusp to (1, 1)) of b_k.  The adjoint
    is the cuspidal tangent; scale from the chord residue, sign from an
    interior witness."""
    _check_k(k, 3)
    curve = param_curve(k)
    if upper:
        a, b = vertex(k), ONE_ONE
        arc = (Fraction(1, k), Fraction(1))
    else:
        a, b = vertex(k - 1), vertex(k)
        arc = (Fraction(0), Fraction(1, k))
    chord_curve = _segment_curve(a, b)
    raw = RationalTwoForm(cuspidal_tangent(k), [(chord_curve.implicit, 1), (boundary_poly(k), 1)])
    fitted = _fit(raw, chord_curve, segment_form(0, 1))
    witness = _mid(_mid(a, b), curve.point((arc[0] + arc[1]) / 2))
    return ComplementPiece(k, arc, (a, b), _orient(fitted, witness), witness)


def complement_pieces(n: int) -> list:
    """All pieces of hull minus cell: lower arcs of b_3..b_n and the upper arc of b_n."""
    _check_k(n, 3)
    return [complement_piece(k, False) for k in range(3, n + 1)] + [complement_piece(n, True)]


def upper_adjoint(n: int) -> MultiPoly:
    """4n x - n^2 y - 3: the line through the cusp of b_n and the third
    intersection of l(c_{n-1}, (1, 1)) with b_n."""
    x, y = xy_gens()
    return (4 * n * x - n * n * y - 3).normalized()[1]


@lru_cache(maxsize=None)
def recursion_terms(n: int):
    """(ω_lower, ω_upper) added when passing from n - 1 to n points."""
    _check_k(n, 4)
    chord = chord_to_top(n - 1)
    lower = complement_piece(n - 1, True).form
    raw = RationalTwoForm(upper_adjoint(n), [(chord, 1), (boundary_poly(n), 1)])
    upper = _fit(raw, param_curve(n), segment_form(0, 1))
    chord_curve = _segment_curve(vertex(n - 1), ONE_ONE)
    total = residue(lower, chord_curve) + residue(upper, chord_curve)
    if not total.coeff.is_zero():
        upper = -upper
        total = residue(lower, chord_curve) + residue(upper, chord_curve)
        if not total.coeff.is_zero():
            raise ArithmeticError(f"chord residues do not cancel at n = {n}")
    return lower, upper


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    summands: tuple
    combined: RationalTwoForm
    cancelled: tuple       # spurious factors removed when combining

    def value(self, point) -> Fraction:
        return self.combined.value(point)

    def summand_value(self, point) -> Fraction:
        return sum((s.value(point) for s in self.summands), Fraction(0))


def canonical_summands(n: int) -> list:
    _check_k(n, 3)
    out = [base_form()]
    for m in range(4, n + 1):
        out.extend(recursion_terms(m))
    return out


@lru_cache(maxsize=None)
def canonical_form(n: int) -> CanonicalForm:
    """Canonical form of the planar cell with n points, as summands and combined."""
    summands = canonical_summands(n)
    combined, cancelled = combine(summands)
    return CanonicalForm(n, tuple(summands), combined, tuple(cancelled))


def canonical_value(n: int, point) -> Fraction:
    """Ω_n at a point, from the summands (cheap for large n)."""
    point = tuple(rat(v) for v in point)
    return sum((s.value(point) for s in canonical_summands(n)), Fraction(0))


def boundary_arc(n: int, k: int):
    """Parameter interval of the cell's boundary on b_k (on x for k = 2)."""
    _check_k(n, 3)
    if k == 2:
        return (Fraction(1, 2), Fraction(1))
    if k < n:
        return (Fraction(0), Fraction(1, k))
    if k == n:
        return (Fraction(0), Fraction(1))
    raise ValueError("b_k is not a boundary curve of this cell")


def boundary_curves(n: int) -> list:
    return [residue_curve(k) for k in range(2, n + 1)]
