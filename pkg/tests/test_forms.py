from fractions import Fraction

import pytest

from vcell.exact import MultiPoly, UniRat
from vcell.forms import (XY, OneFormT, OrientationMismatch, RationalTwoForm, UnmatchedFactor,
                         a_ii_form, combine, cusp_curve, fixture_curves, fixture_forms,
                         is_logarithmic, line_curve, mat_mul3, pullback_chart, pullback_linear,
                         pullback_poly, residue, s1_form, segment_form, xy_gens)

x, y = xy_gens()
one = MultiPoly.const(XY, 1)
FORMS = fixture_forms()
CURVES = fixture_curves()


def test_constructor_normalizes_and_cancels():
    f = RationalTwoForm(2 * (x - y), [(2 * x - 2 * y, 1), (4 * x, 1)])
    # (x - y) cancels; 2 / (2 * 4x) = (1/4) / x
    assert f.factors == ((x, 1),)
    assert f.value((1, 5)) == Fraction(1, 4)


def test_equality_is_functional():
    f = RationalTwoForm(x + 1, [(x, 1)])
    g = RationalTwoForm((x + 1) * (y - 2), [(x, 1), (y - 2, 1)])
    assert f == g
    assert f.flipped() == -f
    assert f.equals_up_to_sign(-f)
    assert not f.same_structure(f.flipped())


def test_combine_reports_cancelled_factor():
    # 1/(x(x+y)) + 1/(y(x+y)) = 1/(xy)
    a = RationalTwoForm(one, [(x, 1), (x + y, 1)])
    b = RationalTwoForm(one, [(y, 1), (x + y, 1)])
    total, cancelled = combine([a, b])
    assert cancelled == [(x + y, 1)]
    assert total.same_structure(RationalTwoForm(one, [(x, 1), (y, 1)]))
    with pytest.raises(OrientationMismatch):
        combine([a, b.flipped()])


def test_json_round_trip():
    f = FORMS["A_II"]
    assert RationalTwoForm.from_json(f.to_json()).same_structure(f)


def test_param_curves_lie_on_their_equations():
    assert cusp_curve().check()
    for curve in CURVES.values():
        assert curve.check()


def test_pullback_poly_on_cusp():
    assert pullback_poly(y**2 - x**3, cusp_curve()).is_zero()
    assert pullback_poly(x, cusp_curve()) == UniRat([0, 0, 1])


def test_segment_form():
    t = UniRat.t()
    assert segment_form(0, 1).coeff == 1 / (t * (t - 1))
    assert segment_form(0, 1).coeff(Fraction(1, 2)) == -4
    assert segment_form(Fraction(1, 4), 1).coeff == Fraction(3, 4) / ((t - Fraction(1, 4)) * (t - 1))


def test_residue_a_i_along_cubic():
    t = UniRat.t()
    w = residue(FORMS["A_I"], cusp_curve())
    assert w.coeff == 2 / ((t + 1) * (t - 1))
    assert w == segment_form(-1, 1)


def test_residue_along_lines():
    w = residue(FORMS["triangle"], CURVES["y=0"])
    assert w.equals_up_to_sign(segment_form(0, 1))
    assert residue(FORMS["A_II"], CURVES["A_II line"]).equals_up_to_sign(segment_form(Fraction(1, 4), 1))
    half = residue(a_ii_form(Fraction(3, 4)), CURVES["A_II line"])
    assert half.equals_up_to_sign(segment_form(Fraction(1, 4), 1).scaled(Fraction(1, 2)))
    assert residue(FORMS["simplex2d"], CURVES["x=0"]).equals_up_to_sign(segment_form(0, 1))


def test_non_logarithmic_detected():
    t = UniRat.t()
    form = RationalTwoForm(one, [(y**2 - x**3, 1)])
    w = residue(form, cusp_curve())
    assert w.equals_up_to_sign(OneFormT(1 / (t * t)))
    report = is_logarithmic(form, [cusp_curve()])
    assert not report.logarithmic
    assert report.offenders == [("cusp cubic", 0, 2)]


def test_double_factor_is_not_logarithmic():
    form = RationalTwoForm(one, [(x, 2), (y, 1)])
    report = is_logarithmic(form, [CURVES["x=0"], CURVES["y=0"]])
    assert not report.logarithmic


def test_unmatched_factor_raises():
    with pytest.raises(UnmatchedFactor):
        is_logarithmic(FORMS["triangle"], [CURVES["y=0"]])


@pytest.mark.parametrize("name", sorted(FORMS))
def test_fixtures_are_logarithmic(name):
    form = FORMS[name]
    curves = [c for c in CURVES.values() if form.multiplicity(c.normalized_implicit())]
    assert is_logarithmic(form, curves).logarithmic


def test_s1_family():
    t = UniRat.t()
    w = residue(s1_form(1, 0), cusp_curve())
    assert w.equals_up_to_sign(segment_form(0, 1))
    bad = residue(s1_form(1, 2), cusp_curve())
    assert dict(bad.poles().roots)[0] == 2
    general = residue(s1_form(3, 0), cusp_curve())
    assert general.equals_up_to_sign(OneFormT((t + 3 * t * t) / (t * t * (t * t - 1))))


def test_triangle_identity():
    total = FORMS["S1"] + FORMS["A_III"]
    assert total == FORMS["triangle"]
    assert dict(total.factors) == {y: 1, x - 1: 1, (y - x).normalized()[1]: 1}


def test_fixture_values_and_orientation():
    assert FORMS["simplex2d"].value((Fraction(1, 3), Fraction(1, 3))) == 27
    assert FORMS["A_II"].value((Fraction(1, 2), Fraction(3, 10))) != 0
    # positively oriented on their regions
    assert FORMS["A_III"].value((Fraction(1, 2), Fraction(2, 5))) > 0
    assert FORMS["S1"].value((Fraction(1, 2), Fraction(1, 5))) > 0
    assert FORMS["triangle"].value((Fraction(2, 3), Fraction(1, 3))) > 0


def test_linear_pullback_round_trip_and_composition():
    form = FORMS["triangle"]
    M1 = [[2, 1, 0], [0, 1, 1], [0, 0, 1]]
    M2 = [[1, 0, 0], [1, 1, 0], [1, 0, 3]]
    there = pullback_linear(form, M1)
    inverse = [[Fraction(1, 2), Fraction(-1, 2), Fraction(1, 2)], [0, 1, -1], [0, 0, 1]]
    assert pullback_linear(there, inverse) == form
    assert pullback_linear(pullback_linear(form, M1), M2) == pullback_linear(form, mat_mul3(M2, M1))
    assert pullback_chart(form, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == form


def test_transported_simplex_keeps_value_at_image_point():
    # an affine map sends the simplex centroid to the image centroid, and the
    # value scales by 1/|det|
    form = FORMS["simplex2d"]
    M = [[2, 0, 1], [0, 3, 0], [0, 0, 1]]
    image = pullback_linear(form, M)
    c = (Fraction(1, 3), Fraction(1, 3))
    assert image.value((2 * c[0] + 1, 3 * c[1])) == form.value(c) / 6


def test_line_curve_parametrizations():
    c = line_curve(x - 1)
    assert c.point(Fraction(1, 3)) == (1, Fraction(1, 3))
    c = line_curve(y - 2 * x)
    assert c.point(2) == (2, 4)
