"""Rational top-forms f / prod(F_i^m_i) dx^dy on the plane and their residues.

A form is stored as a numerator, a multiset of normalized denominator
factors and an orientation sign.  Residues along a factor are pulled back
to a rational parametrization of that factor and returned as
``r(t) dt``; pole orders of ``r`` decide whether the form is logarithmic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .exact import MultiPoly, NotDivisible, UniRat, pole_orders, rat, u_mul

XY = ("x", "y")


class NotSimplePole(ValueError):
    pass


class FactorAbsent(KeyError):
    pass


class OrientationMismatch(ValueError):
    pass


class UnmatchedFactor(ValueError):
    pass


class ChartDegeneracy(ValueError):
    pass


def xy_gens():
    return MultiPoly.gens(*XY)


def _factor_key(p: MultiPoly):
    return (p.degree(), tuple((e, c.numerator, c.denominator) for e, c in p.sorted_terms()))


def normalize_factor(p: MultiPoly):
    """(scalar, normalized) for a denominator factor."""
    return p.normalized()


class RationalTwoForm:
    """orientation * numerator / prod(factor^mult) dx^dy in variables (x, y)."""

    __slots__ = ("numerator", "factors", "orientation")

    def __init__(self, numerator: MultiPoly, factors=(), orientation: int = 1):
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if isinstance(factors, dict):
            factors = list(factors.items())
        num = numerator
        merged = {}
        for poly, mult in factors:
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult == 0:
                continue
            if poly.is_zero():
                raise ZeroDivisionError("zero denominator factor")
            if poly.is_constant():
                num = num * (1 / poly.constant_value() ** mult)
                continue
            scalar, norm = normalize_factor(poly)
            num = num * (1 / scalar**mult)
            merged[norm] = merged.get(norm, 0) + mult
        if num.is_zero():
            merged = {}
        else:
            for poly in list(merged):
                while merged[poly]:
                    try:
                        num = num.exact_div(poly)
                    except NotDivisible:
                        break
                    merged[poly] -= 1
                if not merged[poly]:
                    del merged[poly]
        self.numerator = num
        self.factors = tuple(sorted(merged.items(), key=lambda kv: _factor_key(kv[0])))
        self.orientation = orientation

    # -- queries -------------------------------------------------------

    @property
    def vars(self):
        return self.numerator.vars

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def multiplicity(self, poly: MultiPoly) -> int:
        if poly.is_constant():
            return 0
        _, norm = normalize_factor(poly)
        return dict(self.factors).get(norm, 0)

    def denominator(self) -> MultiPoly:
        out = MultiPoly.const(self.vars, 1)
        for poly, mult in self.factors:
            out = out * poly**mult
        return out

    def signed_numerator(self) -> MultiPoly:
        return self.numerator * self.orientation

    def value(self, point) -> Fraction:
        """Coefficient function at a point; ZeroDivisionError on a pole."""
        point = [rat(v) for v in point]
        den = Fraction(1)
        for poly, mult in self.factors:
            den *= poly(point) ** mult
        if not den:
            raise ZeroDivisionError(f"pole at {tuple(point)}")
        return self.orientation * self.numerator(point) / den

    __call__ = value

    # -- algebra -------------------------------------------------------

    def __neg__(self):
        return RationalTwoForm(-self.numerator, self.factors, self.orientation)

    def flipped(self):
        """Same coefficient data with the orientation flag reversed."""
        return RationalTwoForm(self.numerator, self.factors, -self.orientation)

    def scaled(self, c) -> "RationalTwoForm":
        return RationalTwoForm(self.numerator * rat(c), self.factors, self.orientation)

    def oriented(self) -> "RationalTwoForm":
        """Fold the orientation flag into the numerator (orientation +1)."""
        return RationalTwoForm(self.signed_numerator(), self.factors, 1)

    def __add__(self, other):
        return form_add(self, other)

    def __sub__(self, other):
        return form_add(self, -other)

    def __eq__(self, other):
        """Equality as rational functions (orientation included)."""
        if not isinstance(other, RationalTwoForm):
            return NotImplemented
        if self.vars != other.vars:
            return False
        return (self.signed_numerator() * other.denominator()
                == other.signed_numerator() * self.denominator())

    def __hash__(self):
        return hash((self.numerator, self.factors, self.orientation))

    def equals_up_to_sign(self, other) -> bool:
        return self == other or self == -other

    def same_structure(self, other) -> bool:
        return (self.numerator == other.numerator and self.factors == other.factors
                and self.orientation == other.orientation)

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {
            "numerator": self.numerator.to_json(),
            "denominator_factors": [{"poly": p.to_json(), "mult": m} for p, m in self.factors],
            "orientation": self.orientation,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalTwoForm":
        return cls(
            MultiPoly.from_json(data["numerator"]),
            [(MultiPoly.from_json(f["poly"]), int(f["mult"])) for f in data["denominator_factors"]],
            int(data.get("orientation", 1)),
        )

    def __repr__(self):
        den = " * ".join(f"({p})" + (f"^{m}" if m > 1 else "") for p, m in self.factors) or "1"
        sign = "-" if self.orientation < 0 else ""
        return f"{sign}({self.numerator}) / ({den}) dx^dy"


def combine(forms: Sequence[RationalTwoForm]):
    """Sum several forms over their least common denominator.

    Returns ``(form, cancelled)`` where ``cancelled`` lists the factors of
    the common denominator that divided the summed numerator and were
    removed (spurious poles).
    """
    forms = list(forms)
    if not forms:
        raise ValueError("nothing to combine")
    orientation = forms[0].orientation
    if any(f.orientation != orientation for f in forms):
        raise OrientationMismatch("cannot add forms with different orientations")
    vars = forms[0].vars
    common = {}
    for f in forms:
        if f.vars != vars:
            raise ValueError("forms live in different variables")
        for poly, mult in f.factors:
            common[poly] = max(common.get(poly, 0), mult)
    num = MultiPoly.const(vars, 0)
    for f in forms:
        own = dict(f.factors)
        term = f.numerator
        for poly, mult in common.items():
            extra = mult - own.get(poly, 0)
            if extra:
                term = term * poly**extra
        num = num + term
    result = RationalTwoForm(num, list(common.items()), orientation)
    kept = dict(result.factors)
    cancelled = []
    for poly, mult in common.items():
        gone = mult - kept.get(poly, 0)
        if gone > 0 and not result.is_zero():
            cancelled.append((poly, gone))
    return result, cancelled


def form_add(a: RationalTwoForm, b: RationalTwoForm) -> RationalTwoForm:
    return combine([a, b])[0]


# ---------------------------------------------------------------------------
# curves and one-forms


@dataclass(frozen=True)
class ParamCurve:
    """A plane curve F = 0 with a rational parametrization t -> (x(t), y(t))."""

    implicit: MultiPoly
    x_of_t: UniRat
    y_of_t: UniRat
    domain: tuple = None
    name: str = ""

    def point(self, t):
        return (self.x_of_t(t), self.y_of_t(t))

    def check(self) -> bool:
        return pullback_poly(self.implicit, self).is_zero()

    def normalized_implicit(self) -> MultiPoly:
        return normalize_factor(self.implicit)[1]


def line_curve(line: MultiPoly, name: str = "") -> ParamCurve:
    """Obvious parametrization of a line a x + b y + c = 0: x = t when b != 0."""
    if line.degree() != 1:
        raise ValueError("not a line")
    a = line.terms.get((1, 0), Fraction(0))
    b = line.terms.get((0, 1), Fraction(0))
    c = line.terms.get((0, 0), Fraction(0))
    t = UniRat.t()
    if b:
        return ParamCurve(line, t, t * (-a / b) + (-c / b), name=name or str(line))
    return ParamCurve(line, UniRat(-c / a), t, name=name or str(line))


def pullback_poly(p: MultiPoly, curve: ParamCurve) -> UniRat:
    """p(x(t), y(t)) as a reduced univariate rational function.

    Uses one common denominator x_den^dx * y_den^dy so that only a single
    gcd reduction happens at the end.
    """
    if p.vars != XY:
        p = p.with_vars(XY)
    xn, xd = list(curve.x_of_t.num), list(curve.x_of_t.den)
    yn, yd = list(curve.y_of_t.num), list(curve.y_of_t.den)
    dx = max(p.degree_in("x"), 0)
    dy = max(p.degree_in("y"), 0)

    def powers(base, k):
        out = [[Fraction(1)]]
        for _ in range(k):
            out.append(u_mul(out[-1], base))
        return out

    pxn, pxd, pyn, pyd = powers(xn, dx), powers(xd, dx), powers(yn, dy), powers(yd, dy)
    num = []
    for (i, j), c in p.terms.items():
        term = u_mul(u_mul(pxn[i], pxd[dx - i]), u_mul(pyn[j], pyd[dy - j]))
        if len(term) > len(num):
            num.extend([Fraction(0)] * (len(term) - len(num)))
        for k, v in enumerate(term):
            num[k] += c * v
    den = u_mul(pxd[dx], pyd[dy])
    return UniRat(num, den, curve.x_of_t.var)


@dataclass(frozen=True)
class OneFormT:
    """coeff(t) dt."""

    coeff: UniRat

    def __eq__(self, other):
        return isinstance(other, OneFormT) and self.coeff == other.coeff

    def __hash__(self):
        return hash(self.coeff)

    def __neg__(self):
        return OneFormT(-self.coeff)

    def __add__(self, other):
        return OneFormT(self.coeff + other.coeff)

    def scaled(self, c):
        return OneFormT(self.coeff * rat(c))

    def equals_up_to_sign(self, other) -> bool:
        return self == other or self == -other

    def sign_relative_to(self, other):
        """+1 or -1 if self = ±other, None otherwise."""
        if self == other:
            return 1
        if self == -other:
            return -1
        return None

    def poles(self):
        return pole_orders(self.coeff)

    def to_json(self) -> dict:
        return {"coeff": self.coeff.to_json()}

    def __repr__(self):
        return f"OneFormT({self.coeff.numerator_poly()} / ({self.coeff.denominator_poly()}) dt)"


def segment_form(a, b) -> OneFormT:
    """Canonical form (b - a) / ((t - a)(t - b)) dt of the interval [a, b]."""
    a, b = rat(a), rat(b)
    if a == b:
        raise ValueError("degenerate segment")
    return OneFormT(UniRat([b - a], [a * b, -(a + b), Fraction(1)]))


def residue(form: RationalTwoForm, along: ParamCurve, other_factors_check: bool = True) -> OneFormT:
    """Residue of ``form`` along ``along.implicit``, pulled back to ``t``.

    With form = f / (F G) dx^dy and the convention form = dF/F ^ eta,
    eta = f / (G F_x) dy = -f / (G F_y) dx on F = 0.  The dx branch is
    used unless F_y vanishes identically on the curve.
    """
    _, F = normalize_factor(along.implicit)
    mult = form.multiplicity(F)
    if mult == 0:
        raise FactorAbsent(f"{F} is not a denominator factor")
    if mult > 1:
        raise NotSimplePole(f"{F} has multiplicity {mult}")
    G = MultiPoly.const(form.vars, 1)
    for poly, m in form.factors:
        if poly != F:
            G = G * poly**m
    f_t = pullback_poly(form.signed_numerator(), along)
    g_t = pullback_poly(G, along)
    if other_factors_check and g_t.is_zero():
        raise ValueError("another denominator factor vanishes on the whole curve")
    fy_t = pullback_poly(F.diff("y"), along)
    if not fy_t.is_zero():
        coeff = -(f_t / (g_t * fy_t)) * along.x_of_t.derivative()
    else:
        fx_t = pullback_poly(F.diff("x"), along)
        coeff = (f_t / (g_t * fx_t)) * along.y_of_t.derivative()
    return OneFormT(coeff)


class CurveReport(NamedTuple):
    curve: str
    multiplicity: int
    roots: list
    residual: list
    infinity: int
    offenders: list


class LogReport(NamedTuple):
    logarithmic: bool
    curves: list

    @property
    def offenders(self):
        return [o for c in self.curves for o in c.offenders]

    def to_json(self) -> dict:
        return {
            "logarithmic": self.logarithmic,
            "curves": [
                {
                    "curve": c.curve,
                    "multiplicity": c.multiplicity,
                    "poles": [[str(r), k] for r, k in c.roots],
                    "irrational_poles": [[deg, m] for deg, m in c.residual],
                    "order_at_infinity": c.infinity,
                    "offenders": [[name, None if r is None else str(r), k] for name, r, k in c.offenders],
                }
                for c in self.curves
            ],
        }


def is_logarithmic(form: RationalTwoForm, curves: Sequence[ParamCurve]) -> LogReport:
    """Decide logarithmicity: simple denominator factors and only simple
    poles on every residue pullback (including t = infinity)."""
    by_poly = {c.normalized_implicit(): c for c in curves}
    reports = []
    for poly, mult in form.factors:
        curve = by_poly.get(poly)
        if curve is None:
            raise UnmatchedFactor(f"no parametrized curve for factor {poly}")
        name = curve.name or str(poly)
        if mult > 1:
            reports.append(CurveReport(name, mult, [], [], 0, [(name, None, mult)]))
            continue
        orders = residue(form, curve).poles()
        offenders = [(name, r, k) for r, k in orders.roots if k > 1]
        offenders += [(name, None, m) for _, m in orders.residual if m > 1]
        if orders.infinity > 1:
            offenders.append((name, "inf", orders.infinity))
        reports.append(CurveReport(name, 1, orders.roots, orders.residual, orders.infinity, offenders))
    ok = all(not r.offenders for r in reports)
    return LogReport(ok, reports)


# ---------------------------------------------------------------------------
# projective-linear changes of coordinates


def _mat_det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def mat_inverse3(m):
    m = [[rat(v) for v in row] for row in m]
    d = _mat_det3(m)
    if not d:
        raise ValueError("singular matrix")
    cof = [[(m[(j + 1) % 3][(i + 1) % 3] * m[(j + 2) % 3][(i + 2) % 3]
             - m[(j + 1) % 3][(i + 2) % 3] * m[(j + 2) % 3][(i + 1) % 3]) / d
            for j in range(3)] for i in range(3)]
    return cof


def mat_mul3(a, b):
    return [[sum(rat(a[i][k]) * rat(b[k][j]) for k in range(3)) for j in range(3)] for i in range(3)]


def _homog_compose(p: MultiPoly, X, Y, W) -> MultiPoly:
    """p^h(X, Y, W) for linear forms X, Y, W in (x, y)."""
    D = p.degree()
    out = MultiPoly.const(XY, 0)
    for (i, j), c in p.terms.items():
        out = out + X**i * Y**j * W ** (D - i - j) * c
    return out


def pullback_chart(form: RationalTwoForm, M) -> RationalTwoForm:
    """Pull ``form`` back along (x, y) -> (X/W, Y/W) with (X, Y, W) = M (x, y, 1)."""
    M = [[rat(v) for v in row] for row in M]
    d = _mat_det3(M)
    if not d:
        raise ValueError("singular matrix")
    x, y = xy_gens()
    X, Y, W = (row[0] * x + row[1] * y + row[2] for row in M)
    num = _homog_compose(form.numerator, X, Y, W) * d
    factors = []
    excess = -form.numerator.degree() - 3
    for poly, mult in form.factors:
        image = _homog_compose(poly, X, Y, W)
        if image.is_constant():
            raise ChartDegeneracy(f"factor {poly} is sent to the line at infinity")
        factors.append((image, mult))
        excess += poly.degree() * mult
    if W.is_constant():
        num = num * W.constant_value() ** excess
    elif excess > 0:
        num = num * W**excess
    elif excess < 0:
        factors.append((W, -excess))
    return RationalTwoForm(num, factors, form.orientation)


def pullback_linear(form: RationalTwoForm, M) -> RationalTwoForm:
    """Transport ``form`` along the projective map M: the result lives on the
    image plane, so its poles lie on the images M(C) of the original pole
    curves.  Equivalently, the pullback of ``form`` along M^{-1}.
    Transporting by M1 and then M2 equals transporting by M2 * M1."""
    return pullback_chart(form, mat_inverse3(M))


# ---------------------------------------------------------------------------
# embedded forms


def _poly(text_terms):
    return MultiPoly(XY, text_terms)


def fixture_forms() -> dict:
    """Reference forms with positive orientation where noted.

    ``A_I``: region bounded by the cusp cubic y^2 = x^3 and the line x = 1.
    ``A_II``: cubic arc t in [-1/2, 1] and the line 2y - 3x + 1 = 0.
    ``A_III``: x^{3/2} < y < x, stored positively oriented.
    ``S1``: cubic arc over 0 < x < 1 above y = 0, up to x = 1.
    ``triangle``: (0,0), (1,0), (1,1).  ``simplex2d``: x, y >= 0, x + y <= 1.
    """
    x, y = xy_gens()
    cubic = y**2 - x**3
    return {
        "A_I": RationalTwoForm(-2 * x, [(x - 1, 1), (cubic, 1)]),
        "A_II": a_ii_form(Fraction(3, 2)),
        "A_III": RationalTwoForm(-y, [(y - x, 1), (cubic, 1)]),
        "S1": s1_form(1, 0),
        "triangle": RationalTwoForm(MultiPoly.const(XY, 1), [(y, 1), (x - 1, 1), (y - x, 1)]),
        "simplex2d": RationalTwoForm(MultiPoly.const(XY, 1), [(1 - x - y, 1), (x, 1), (y, 1)]),
    }


def a_ii_form(scale) -> RationalTwoForm:
    """scale * (y - x) / ((y - 3x/2 + 1/2)(y^2 - x^3)) dx^dy.

    Only ``scale = 3/2`` makes both residues equal segment forms; 3/4 gives
    exactly half of them.
    """
    x, y = xy_gens()
    return RationalTwoForm((y - x) * rat(scale),
                           [(y - x * Fraction(3, 2) + Fraction(1, 2), 1), (y**2 - x**3, 1)])


def s1_form(c, e) -> RationalTwoForm:
    """Candidate (x^2 + c x y + e y) / (y (x - 1)(y^2 - x^3)) dx^dy."""
    x, y = xy_gens()
    return RationalTwoForm(x**2 + x * y * rat(c) + y * rat(e),
                           [(y, 1), (x - 1, 1), (y**2 - x**3, 1)])


def cusp_curve() -> ParamCurve:
    """y^2 = x^3 normalized by t -> (t^2, t^3)."""
    x, y = xy_gens()
    return ParamCurve(y**2 - x**3, UniRat([0, 0, 1]), UniRat([0, 0, 0, 1]), name="cusp cubic")


def fixture_curves() -> dict:
    x, y = xy_gens()
    return {
        "cubic": cusp_curve(),
        "x=1": line_curve(x - 1, "x = 1"),
        "y=0": line_curve(y, "y = 0"),
        "y=x": line_curve(y - x, "y = x"),
        "x=0": line_curve(x, "x = 0"),
        "x+y=1": line_curve(1 - x - y, "x + y = 1"),
        "A_II line": line_curve(y - x * Fraction(3, 2) + Fraction(1, 2), "2y - 3x + 1 = 0"),
    }
