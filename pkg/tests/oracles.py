"""Independent reference computations used by the tests.

Nothing here calls the code under test except the polynomial container,
which is exercised on its own in test_exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations

from vcell.exact import MultiPoly

X, Y = MultiPoly.gens("x", "y")


def _leibniz_det(rows):
    """Determinant by the permutation expansion (slow, obviously correct)."""
    n = len(rows)
    total = MultiPoly.const(("x", "y"), 0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = MultiPoly.const(("x", "y"), -1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total + term
    return total


def sylvester_resultant(k: int) -> MultiPoly:
    """Res_t(P_x(t) - x Q, P_y(t) - y Q) for the parametrization of b_k,
    through the 5x5 Sylvester matrix (quadratic against cubic in t)."""
    m = Fraction(k - 1)
    q = m * m
    # coefficients lowest degree first, as polynomials in x, y
    fx = [m - X * q, -2 * m, m + q]                 # (1-t)^2 m + t^2 m^2 - x m^2
    fy = [1 - Y * q, -3, 3, q - 1]                  # (1-t)^3 + t^3 m^2 - y m^2
    zero = MultiPoly.const(("x", "y"), 0)

    def row(coeffs, shift, width):
        high_first = [c if isinstance(c, MultiPoly) else MultiPoly.const(("x", "y"), c)
                      for c in reversed(coeffs)]
        return [zero] * shift + high_first + [zero] * (width - shift - len(coeffs))

    rows = [row(fx, s, 5) for s in range(3)] + [row(fy, s, 5) for s in range(2)]
    return _leibniz_det(rows)


def brute_partitions(a: int, b: int, largest: int = None) -> int:
    largest = a if largest is None else largest
    if b == 0:
        return 1 if a == 0 else 0
    return sum(brute_partitions(a - f, b - 1, f) for f in range(min(a, largest), 0, -1))


# ---------------------------------------------------------------------------
# floating-point envelope of the planar cell


def _param(k, t):
    m = k - 1
    return (((1 - t) ** 2 * m + t * t * m * m) / (m * m),
            ((1 - t) ** 3 + t ** 3 * m * m) / (m * m))


def _solve(k, x, lo, hi):
    f_lo = _param(k, lo)[0] - x
    for _ in range(100):
        mid = (lo + hi) / 2
        f_mid = _param(k, mid)[0] - x
        if (f_mid <= 0) == (f_lo <= 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return (lo + hi) / 2


def vertical_section(n: int, x: float):
    """(lowest, highest) y of the n-point cell above x, or None.

    The top is the upper arc of b_n; the bottom is the line 2y = 3x - 1 for
    x >= 1/2 and the lower arc of b_k with 1/k <= x <= 1/(k-1) otherwise.
    """
    if x < 1 / n or x > 1:
        return None
    top = _param(n, _solve(n, x, 1 / n, 1))[1]
    if x >= 0.5:
        bottom = (3 * x - 1) / 2
    else:
        k = max(3, math.ceil(1 / x - 1e-15))
        bottom = _param(k, _solve(k, x, 0, 1 / k))[1]
    return bottom, top


def float_classify(n: int, x: float, y: float, margin: float):
    """"outside" or "inside" when (x, y) is at least ``margin`` away
    (vertically, or in x) from the cell's boundary, else None."""
    if x < 1 / n - margin or x > 1 + margin:
        return "outside"
    if x < 1 / n + margin or x > 1 - margin:
        return None
    lo, hi = vertical_section(n, x)
    if y < lo - margin or y > hi + margin:
        return "outside"
    if lo + margin < y < hi - margin:
        return "inside"
    return None


def float_outside(n: int, x: float, y: float, margin: float) -> bool:
    return float_classify(n, x, y, margin) == "outside"


def rigorously_outside(n: int, x: Fraction, y: Fraction) -> bool:
    """Necessary conditions for images of the simplex with n coordinates:
    1/n <= p2 <= 1, p2^2 <= p3 (Cauchy-Schwarz) and p3 <= p2."""
    return x < Fraction(1, n) or x > 1 or y < x * x or y > x


def triangle_canonical(a, b, c, p) -> Fraction:
    """<abc>^2 / (<pbc><apc><abp>) with <uvw> the doubled signed area."""
    def area(u, v, w):
        return (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0])
    return area(a, b, c) ** 2 / (area(p, b, c) * area(a, p, c) * area(a, b, p))
