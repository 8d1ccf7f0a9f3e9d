"""Exact rational arithmetic: sparse multivariate polynomials, univariate
rational functions, polynomial matrices and pole-order analysis.

Everything here works over ``fractions.Fraction``; no floating point is
ever introduced.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, NamedTuple, Sequence

Rational = Fraction


class NotDivisible(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class ParseError(ValueError):
    pass


def rat(value) -> Fraction:
    """Parse ``"a/b"``, an int, or a Fraction into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {value!r}") from exc
    raise ParseError(f"not a rational: {value!r}")


def rat_str(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def exact_sum(values: Iterable[Fraction]) -> Fraction:
    """Sum many fractions without a gcd at every step.

    Pairwise (tree) summation of unreduced numerator/denominator pairs,
    with one reduction at the end.  Much faster than ``sum`` when the
    denominators are large and mostly coprime.
    """
    pairs = [(v.numerator, v.denominator) for v in map(Fraction, values)]
    if not pairs:
        return Fraction(0)
    while len(pairs) > 1:
        merged = []
        for i in range(0, len(pairs) - 1, 2):
            (a, b), (c, d) = pairs[i], pairs[i + 1]
            merged.append((a * d + c * b, b * d))
        if len(pairs) % 2:
            merged.append(pairs[-1])
        pairs = merged
    return Fraction(*pairs[0])


def _grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """Sparse polynomial with rational coefficients in named variables.

    ``terms`` maps exponent tuples (aligned with ``vars``) to nonzero
    Fractions.  Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms=None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names: {self.vars}")
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(self.vars):
                raise ValueError("exponent length does not match variables")
            if any(e < 0 for e in exp):
                raise ValueError("negative exponent")
            clean[exp] = clean.get(exp, 0) + rat(coeff)
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, vars, terms):
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, vars, value) -> "MultiPoly":
        value = rat(value)
        return cls._raw(tuple(vars), {(0,) * len(vars): value} if value else {})

    @classmethod
    def var(cls, vars, name) -> "MultiPoly":
        vars = tuple(vars)
        exp = tuple(1 if v == name else 0 for v in vars)
        if sum(exp) != 1:
            raise ValueError(f"unknown variable {name!r}")
        return cls._raw(vars, {exp: Fraction(1)})

    @classmethod
    def gens(cls, *names) -> tuple:
        return tuple(cls.var(names, n) for n in names)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, var: str = "t") -> "MultiPoly":
        """Univariate polynomial from coefficients, lowest degree first."""
        return cls._raw((var,), {(i,): Fraction(c) for i, c in enumerate(coeffs) if c})

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    # -- coercion ------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly.const(self.vars, other)
        return NotImplemented

    def with_vars(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over a superset (or reordering) of the variables."""
        vars = tuple(vars)
        index = [vars.index(v) if v in vars else None for v in self.vars]
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * len(vars)
            for i, e in zip(index, exp):
                if e:
                    if i is None:
                        raise ValueError("variable dropped while still in use")
                    new[i] = e
            terms[tuple(new)] = c
        return MultiPoly._raw(vars, terms)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly._raw(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Fraction(other)
            if not other:
                return MultiPoly._raw(self.vars, {})
            return MultiPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.vars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative int")
        result = MultiPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation and calculus ---------------------------------------

    def evaluate(self, values, zero=None):
        """Evaluate at ``values`` (a sequence aligned with ``vars`` or a
        mapping by name).  Values may be any ring elements supporting
        ``+``, ``*`` and multiplication by Fractions."""
        if isinstance(values, dict):
            values = [values[v] for v in self.vars]
        values = [rat(v) if isinstance(v, (int, str)) else v for v in values]
        if len(values) != len(self.vars):
            raise ValueError("wrong number of values")
        powers = [{0: None, 1: v} for v in values]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e // 2) * power(i, e - e // 2)
            return cache[e]

        total = None
        for exp, coeff in self.terms.items():
            term = None
            for i, e in enumerate(exp):
                if e:
                    p = power(i, e)
                    term = p if term is None else term * p
            term = coeff if term is None else term * coeff
            total = term if total is None else total + term
        if total is None:
            return Fraction(0) if zero is None else zero
        if zero is not None and isinstance(total, Fraction):
            total = zero + total
        return total

    __call__ = evaluate

    def substitute(self, mapping: dict) -> "MultiPoly":
        """Substitute polynomials for some variables; the result lives in
        the variables of the substituted values (all must agree)."""
        targets = [m for m in mapping.values() if isinstance(m, MultiPoly)]
        out_vars = targets[0].vars if targets else self.vars
        values = []
        for v in self.vars:
            if v in mapping:
                val = mapping[v]
                values.append(val if isinstance(val, MultiPoly) else MultiPoly.const(out_vars, val))
            else:
                values.append(MultiPoly.var(out_vars, v))
        return self.evaluate(values, zero=MultiPoly.const(out_vars, 0))

    def diff(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        terms = {}
        for exp, c in self.terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                terms[tuple(e)] = c * exp[i]
        return MultiPoly._raw(self.vars, terms)

    # -- division ------------------------------------------------------

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Quotient of an exact division; raises NotDivisible otherwise."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lead_e, lead_c = divisor.leading_term()
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem, key=_grlex_key)
            if any(a < b for a, b in zip(e, lead_e)):
                raise NotDivisible("remainder is nonzero")
            qe = tuple(a - b for a, b in zip(e, lead_e))
            qc = rem[e] / lead_c
            quot[qe] = qc
            for de, dc in divisor.terms.items():
                te = tuple(a + b for a, b in zip(qe, de))
                v = rem.get(te, 0) - qc * dc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return MultiPoly._raw(self.vars, quot)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_div(self)
            return True
        except NotDivisible:
            return False

    # -- normalization -------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        g = reduce(math.gcd, nums)
        l = reduce(lambda a, b: a * b // math.gcd(a, b), dens)
        return Fraction(abs(g), l)

    def primitive(self) -> "MultiPoly":
        c = self.content()
        return self if c == 1 or not c else self * (1 / c)

    def sign_key_coefficient(self) -> Fraction:
        """Coefficient that decides the sign convention: the largest
        exponent compared with the last variable most significant."""
        exp = max(self.terms, key=lambda e: tuple(reversed(e)))
        return self.terms[exp]

    def normalized(self):
        """Return ``(scalar, poly)`` with ``self == scalar * poly``, ``poly``
        primitive with integer coefficients and a positive sign-key
        coefficient.  For a line in (x, y) this orders (y, x, 1)."""
        if not self.terms:
            raise ValueError("cannot normalize the zero polynomial")
        c = self.content()
        if self.sign_key_coefficient() < 0:
            c = -c
        return c, self * (1 / c)

    # -- formatting and serialization ------------------------------------

    def __repr__(self):
        return f"MultiPoly({self.vars!r}, {str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, exp) if e
            )
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if not mono:
                body = rat_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{rat_str(mag)}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MultiPoly":
        try:
            vars = data["vars"]
            terms = {}
            for t in data["terms"]:
                e = tuple(t["exp"])
                terms[e] = terms.get(e, 0) + Fraction(int(t["num"]), int(t["den"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed polynomial JSON: {exc}") from exc
        return cls(vars, terms)


def poly_product(factors: Iterable[MultiPoly], vars) -> MultiPoly:
    result = MultiPoly.const(vars, 1)
    for f in factors:
        result = result * f
    return result


# ---------------------------------------------------------------------------
# Univariate helpers on coefficient lists (lowest degree first)


def _trim(c):
    c = [Fraction(v) for v in c]
    while c and not c[-1]:
        c.pop()
    return c


def u_coeffs(p: MultiPoly) -> list:
    if len(p.vars) != 1:
        raise ValueError("expected a univariate polynomial")
    deg = p.degree()
    out = [Fraction(0)] * (deg + 1)
    for (e,), c in p.terms.items():
        out[e] = c
    return out


def u_divmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, bc in enumerate(b):
            r[shift + i] -= f * bc
        r = _trim(r)
    return _trim(q), r


def u_monic(a):
    a = _trim(a)
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def u_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, u_divmod(a, b)[1]
    return u_monic(a)


def u_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def u_deriv(a):
    return _trim([c * i for i, c in enumerate(a)][1:])


def u_eval(a, t):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * t + c
    return acc


def squarefree_decomposition(a):
    """Yun's algorithm: list of (monic squarefree factor, multiplicity)."""
    a = u_monic(a)
    if len(a) <= 1:
        return []
    out = []
    da = u_deriv(a)
    g = u_gcd(a, da)
    b = u_divmod(a, g)[0]
    c = u_divmod(da, g)[0]
    d = _trim([ci - di for ci, di in zip_longest0(c, u_deriv(b))])
    i = 1
    while len(b) > 1:
        h = u_gcd(b, d)
        b = u_divmod(b, h)[0]
        c = u_divmod(d, h)[0]
        if len(h) > 1:
            out.append((h, i))
        d = _trim([ci - di for ci, di in zip_longest0(c, u_deriv(b))])
        i += 1
    return out


def zip_longest0(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def factorize(n: int) -> dict:
    """Prime factorization of |n| as {prime: exponent}."""
    n = abs(n)
    out = {}
    for p in range(2, 1000):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        if n == 1:
            return out
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend([d, m // d])
    return out


def divisors(n: int) -> list:
    divs = [1]
    for p, k in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(k + 1)]
    return sorted(divs)


_CANDIDATE_LIMIT = 2_000_000


def rational_roots(a) -> list:
    """Distinct rational roots of a univariate polynomial (coefficient list),
    by the rational root theorem on its primitive integer form."""
    a = _trim(a)
    roots = []
    if len(a) <= 1:
        return roots
    k = 0
    while not a[k]:
        k += 1
    if k:
        roots.append(Fraction(0))
        a = a[k:]
    if len(a) <= 1:
        return roots
    # the squarefree part has the same roots and usually smaller coefficients
    sqf = u_divmod(a, u_gcd(a, u_deriv(a)))[0]
    lcm = reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in sqf))
    ints = [int(c * lcm) for c in sqf]
    g = reduce(math.gcd, ints)
    ints = [i // g for i in ints]
    lows, highs = divisors(ints[0]), divisors(ints[-1])
    if len(lows) * len(highs) > _CANDIDATE_LIMIT:
        raise ArithmeticError("too many rational-root candidates")
    for q in highs:
        for p in lows:
            if math.gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if u_eval(sqf, cand) == 0:
                    roots.append(cand)
    return sorted(set(roots))


class UniRat:
    """Univariate rational function num/den in lowest terms, den monic."""

    __slots__ = ("num", "den", "var")

    def __init__(self, num, den=None, var: str = "t", _reduced=False):
        if isinstance(num, MultiPoly):
            var = num.vars[0]
            num = u_coeffs(num)
        elif isinstance(num, (int, Fraction)):
            num = [Fraction(num)]
        if den is None:
            den = [Fraction(1)]
        elif isinstance(den, MultiPoly):
            den = u_coeffs(den)
        elif isinstance(den, (int, Fraction)):
            den = [Fraction(den)]
        num, den = _trim(num), _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            g = u_gcd(num, den) if num else [Fraction(1)]
            if len(g) > 1:
                num = u_divmod(num, g)[0]
                den = u_divmod(den, g)[0]
            lead = den[-1]
            num = [c / lead for c in num]
            den = [c / lead for c in den]
            if not num:
                den = [Fraction(1)]
        self.num = tuple(num)
        self.den = tuple(den)
        self.var = var

    @classmethod
    def t(cls, var="t"):
        return cls([0, 1], var=var)

    def numerator_poly(self) -> MultiPoly:
        return MultiPoly.from_coeffs(self.num, self.var)

    def denominator_poly(self) -> MultiPoly:
        return MultiPoly.from_coeffs(self.den, self.var)

    def is_zero(self):
        return not self.num

    def _coerce(self, other):
        if isinstance(other, UniRat):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return UniRat(other, var=self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            num = [a + b for a, b in zip_longest0(self.num, other.num)]
            return UniRat(num, self.den, self.var)
        num = [a + b for a, b in zip_longest0(u_mul(list(self.num), list(other.den)),
                                                u_mul(list(other.num), list(self.den)))]
        return UniRat(num, u_mul(list(self.den), list(other.den)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniRat([-c for c in self.num], self.den, self.var, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Fraction(other)
            return UniRat([c * other for c in self.num], self.den, self.var, _reduced=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return UniRat(u_mul(list(self.num), list(other.num)),
                      u_mul(list(self.den), list(other.den)), self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return UniRat(u_mul(list(self.num), list(other.den)),
                      u_mul(list(self.den), list(other.num)), self.var)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return UniRat(1, var=self.var) / (self ** (-k))
        out = UniRat(1, var=self.var)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, UniRat) else other
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self) -> "UniRat":
        n, d = list(self.num), list(self.den)
        top = [a - b for a, b in zip_longest0(u_mul(u_deriv(n), d), u_mul(n, u_deriv(d)))]
        return UniRat(top, u_mul(d, d), self.var)

    def __call__(self, t):
        t = rat(t)
        d = u_eval(self.den, t)
        if not d:
            raise ZeroDivisionError(f"pole at {t}")
        return u_eval(self.num, t) / d

    def __repr__(self):
        return f"UniRat(({self.numerator_poly()}) / ({self.denominator_poly()}))"

    __str__ = __repr__

    def to_json(self) -> dict:
        return {"numerator": self.numerator_poly().to_json(),
                "denominator": self.denominator_poly().to_json()}


class PoleOrders(NamedTuple):
    roots: list        # (rational root, order), sorted by root
    residual: list     # (degree of irreducible-over-Q part, multiplicity)
    infinity: int      # pole order at t = ∞ of r(t) dt

    @property
    def is_simple(self) -> bool:
        return (all(k <= 1 for _, k in self.roots)
                and all(m <= 1 for _, m in self.residual)
                and self.infinity <= 1)


def pole_orders(r: UniRat) -> PoleOrders:
    """Pole orders of the one-form ``r(t) dt``: rational poles with their
    orders, the squarefree decomposition of the remaining denominator, and
    the order at infinity (``deg num - deg den + 2`` when positive)."""
    den = list(r.den)
    roots = []
    for root in rational_roots(den):
        k = 0
        lin = [-root, Fraction(1)]
        while True:
            q, rem = u_divmod(den, lin)
            if rem:
                break
            den = q
            k += 1
        roots.append((root, k))
    residual = [(len(f) - 1, m) for f, m in squarefree_decomposition(den)]
    inf = 0
    if r.num:
        inf = max(0, (len(r.num) - 1) - (len(r.den) - 1) + 2)
    return PoleOrders(roots, residual, inf)


# ---------------------------------------------------------------------------
# Polynomial matrices


class PolyMatrix:
    """Square matrix of MultiPoly entries over a shared variable tuple."""

    def __init__(self, rows, vars):
        self.vars = tuple(vars)
        self.rows = tuple(
            tuple(e if isinstance(e, MultiPoly) else MultiPoly.const(self.vars, e) for e in row)
            for row in rows
        )
        n = len(self.rows)
        if any(len(row) != n for row in self.rows):
            raise ValueError("matrix must be square")

    @property
    def dim(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def map(self, fn, vars=None) -> "PolyMatrix":
        return PolyMatrix([[fn(e) for e in row] for row in self.rows],
                          self.vars if vars is None else vars)

    def scale_row(self, i, factor) -> "PolyMatrix":
        rows = [list(r) for r in self.rows]
        rows[i] = [e * factor for e in rows[i]]
        return PolyMatrix(rows, self.vars)


def det(matrix: PolyMatrix, method: str = "bareiss") -> MultiPoly:
    """Determinant by fraction-free Bareiss elimination, or cofactor
    expansion when ``method="cofactor"``.  Zero pivots are handled by row
    swaps; a singular matrix returns the zero polynomial."""
    if method == "cofactor":
        return _cofactor_det([list(r) for r in matrix.rows], matrix.vars)
    if method != "bareiss":
        raise ValueError(f"unknown method {method!r}")
    n = matrix.dim
    zero = MultiPoly.const(matrix.vars, 0)
    if n == 0:
        return MultiPoly.const(matrix.vars, 1)
    a = [list(r) for r in matrix.rows]
    sign = 1
    prev = MultiPoly.const(matrix.vars, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return zero
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def _cofactor_det(rows, vars):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = MultiPoly.const(vars, 0)
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = entry * _cofactor_det(minor, vars)
        total = total + term if j % 2 == 0 else total - term
    return total
