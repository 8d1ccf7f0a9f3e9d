"""Embedded constants for the quartic cell and the planar resultant, with
the harness that checks them against parametrized boundary points."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import MultiPoly, PolyMatrix
from .vandermonde import (TYPE2, MultiplicityVector, boundary_patch, sample_patch_params,
                          sample_simplex, vandermonde_image)

Y = ("y1", "y2", "y3")

# Degree-6 generator for multiplicity (2,1,1), four points, coordinates
# (p_2, p_3, p_4).  Entries are (coefficient, (e1, e2, e3)) in print order.
P_PRINTED_TERMS = (
    (1, (6, 0, 0)), (-684, (5, 0, 0)), (1536, (4, 1, 0)), (-544, (3, 2, 0)),
    (-720, (4, 0, 1)), (1209, (4, 0, 0)), (-4168, (3, 1, 0)),
    (4224, (2, 2, 0)), (-576, (1, 3, 0)), (-192, (0, 4, 0)), (3096, (3, 0, 1)),
    (-6336, (2, 1, 1)), (1152, (1, 2, 1)),
    (2304, (2, 0, 2)), (-796, (3, 0, 0)), (3144, (2, 1, 0)), (-4512, (1, 2, 0)),
    (2496, (0, 3, 0)), (-2700, (2, 0, 1)),
    (8208, (1, 1, 1)), (-7200, (0, 2, 1)), (-3744, (1, 0, 2)), (6912, (0, 1, 2)),
    (-2304, (0, 0, 3)), (210, (2, 0, 0)),
    (-648, (1, 1, 0)), (544, (0, 2, 0)), (576, (1, 0, 1)), (-1008, (0, 1, 1)),
    (468, (0, 0, 2)), (-24, (1, 0, 0)), (40, (0, 1, 0)), (-36, (0, 0, 1)), (1, (0, 0, 0)),
)

# The printed leading coefficient of y1^6 is 1; the polynomial that actually
# vanishes on the patch has 72 there and agrees everywhere else.
P_LEADING_CORRECTION = ((6, 0, 0), 72)


def _from_terms(terms) -> MultiPoly:
    return MultiPoly(Y, {e: c for c, e in terms})


def p_printed() -> MultiPoly:
    return _from_terms(P_PRINTED_TERMS)


def p_fixture() -> MultiPoly:
    exp, coeff = P_LEADING_CORRECTION
    terms = {e: c for c, e in P_PRINTED_TERMS}
    terms[exp] = coeff
    return MultiPoly(Y, terms)


def q_fixture() -> MultiPoly:
    y1, y2, y3 = MultiPoly.gens(*Y)
    return 3 * y1**2 - 6 * y1 + 8 * y2 - 6 * y3 + 1


def bk_coefficients(k: int) -> dict:
    """Coefficients of b_k by monomial exponent (x, y)."""
    return {
        (3, 0): k**3 - 4 * k**2 + 4 * k,
        (0, 2): -(k**3) + k**2,
        (1, 1): 6 * k**2 - 6 * k,
        (2, 0): -3 * k**2 + 3 * k - 3,
        (1, 0): 3 * k,
        (0, 1): -4 * k + 4,
        (0, 0): -1,
    }


def resultant_matrix_template() -> PolyMatrix:
    """5x5 presenting matrix in (x, y, n), each row multiplied by (n-1)^2 so
    that every entry is a polynomial."""
    x, y, n = MultiPoly.gens("x", "y", "n")
    m = n - 1
    mm = m * m
    z = 0
    return PolyMatrix([
        [mm - 1, z, n * m, z, z],
        [3, mm - 1, -2 * m, n * m, z],
        [-3, 3, m - x * mm, -2 * m, n * m],
        [1 - y * mm, -3, z, m - x * mm, -2 * m],
        [z, 1 - y * mm, z, z, m - x * mm],
    ], ("x", "y", "n"))


def resultant_matrix(n: int) -> PolyMatrix:
    """Template instantiated at n with the row scaling undone, in (x, y)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    x, y = MultiPoly.gens("x", "y")
    scale = Fraction(1, (n - 1) ** 2)
    return resultant_matrix_template().map(
        lambda e: e.substitute({"x": x, "y": y, "n": MultiPoly.const(("x", "y"), n)}) * scale,
        ("x", "y"))


def fixture_digest(poly: MultiPoly) -> str:
    text = json.dumps(poly.to_json(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


@dataclass(frozen=True)
class FixtureSet:
    P: MultiPoly
    Q: MultiPoly
    resultant_matrix_template: PolyMatrix


def fixture_set() -> FixtureSet:
    return FixtureSet(p_fixture(), q_fixture(), resultant_matrix_template())


# ---------------------------------------------------------------------------
# verification harness


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks]}


MULT_211 = MultiplicityVector(TYPE2, (2, 1, 1))


def verify_quartic_boundaries(samples: int = 100, seed: int = 0) -> Report:
    """Q on images of generic three-point simplex samples, P on the
    (2,1,1) patch for four points, and one off-patch sanity point."""
    report = Report()
    P, Q = p_fixture(), q_fixture()
    q_hits = sum(1 for pt in sample_simplex(3, samples, seed) if Q(vandermonde_image(pt, 4)) == 0)
    report.add("Q vanishes on (1,1,1) images", q_hits == samples, f"{q_hits}/{samples}")
    patch = boundary_patch(MULT_211)
    params = sample_patch_params(MULT_211, samples, seed)
    p_hits = sum(1 for prm in params if P(patch(prm)) == 0)
    report.add("P vanishes on (2,1,1) patch", p_hits == samples, f"{p_hits}/{samples}")
    example = patch((Fraction(1, 10), Fraction(3, 10)))
    report.add("P vanishes at parameters (1/10, 3/10)", P(example) == 0, str(example))
    off = (Fraction(1, 2),) * 3
    report.add("P is nonzero off the patch", P(off) != 0, f"P(1/2,1/2,1/2) = {P(off)}")
    return report


def verify_same_hypersurface(n: int, m1: int, samples: int = 10, seed: int = 0) -> Report:
    """Patches (m1, 1, n-m1-1) and (n-m1-1, 1, m1) land on the same fixture
    hypersurface (only n = 4 has an embedded polynomial)."""
    if not 1 <= m1 <= n - 2:
        raise ValueError("need 1 <= m1 <= n - 2")
    if n != 4:
        raise ValueError("an embedded boundary polynomial exists only for n = 4")
    P = p_fixture()
    report = Report()
    for first in (m1, n - m1 - 1):
        mult = MultiplicityVector(TYPE2, (first, 1, n - first - 1))
        patch = boundary_patch(mult)
        hits = sum(1 for prm in sample_patch_params(mult, samples, seed) if P(patch(prm)) == 0)
        report.add(f"P vanishes on patch {mult.m}", hits == samples, f"{hits}/{samples}")
    return report


def symbolic_patch_check(poly: MultiPoly = None) -> bool:
    """P composed with the (2,1,1) parametrization is the zero polynomial.

    With free values a (twice) and b, the last value is 1 - 2a - b and
    y_j = 2 a^j + b^j + (1 - 2a - b)^j.
    """
    poly = p_fixture() if poly is None else poly
    a, b = MultiPoly.gens("a", "b")
    c = 1 - 2 * a - b
    images = {f"y{j - 1}": 2 * a**j + b**j + c**j for j in (2, 3, 4)}
    return poly.substitute(images).is_zero()


def verify_all(samples: int = 100, seed: int = 0, slow: bool = False) -> Report:
    report = verify_quartic_boundaries(samples, seed)
    same = verify_same_hypersurface(4, 1, samples=max(10, samples // 10), seed=seed)
    report.checks.extend(same.checks)
    report.add("P has total degree 6", p_fixture().degree() == 6)
    if slow:
        report.add("P composed with the (2,1,1) parametrization is zero", symbolic_patch_check())
    return report
