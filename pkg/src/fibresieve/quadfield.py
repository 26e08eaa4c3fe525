"""Exact arithmetic in real or imaginary quadratic fields Q(sqrt(d)).

Used for descriptor-level data: quadratic cusps, special fibres, and the
rationality tests of classify_special_points.  d is a squarefree integer,
elements are a + b*sqrt(d) with exact rational a, b.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exact import FieldOps, UsageError


def squarefree_int(n: int) -> bool:
    if n == 0:
        return False
    n = abs(n)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        while n % f == 0:
            n //= f
        f += 1
    return True


class QuadElem:
    """a + b*sqrt(d) with Fraction coordinates."""

    __slots__ = ("d", "a", "b")

    def __init__(self, d: int, a, b):
        self.d = d
        self.a = Fraction(a)
        self.b = Fraction(b)

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise UsageError("mixed quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.d, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElem(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElem(self.d, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElem(
            self.d, self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return QuadElem(self.d, -self.a, -self.b)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadElem(self.d, 1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt(d))")
        return QuadElem(self.d, self.a / n, -self.b / n)

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.d, self.a, self.b))

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a}+{self.b}*sqrt({self.d}))"


class QuadField(FieldOps):
    """Q(sqrt(d)) for squarefree d != 0, 1."""

    def __init__(self, d: int):
        if d in (0, 1) or not squarefree_int(d):
            raise UsageError(f"d must be squarefree and not 0 or 1, got {d}")
        self.d = d

    def zero(self) -> QuadElem:
        return QuadElem(self.d, 0, 0)

    def one(self) -> QuadElem:
        return QuadElem(self.d, 1, 0)

    def of_int(self, n: int) -> QuadElem:
        return QuadElem(self.d, n, 0)

    def of_rat(self, q) -> QuadElem:
        return QuadElem(self.d, q, 0)

    def sqrt_d(self) -> QuadElem:
        return QuadElem(self.d, 0, 1)

    def inv(self, a: QuadElem) -> QuadElem:
        return a.inverse()

    def characteristic(self) -> int:
        return 0

    def __eq__(self, other):
        return isinstance(other, QuadField) and other.d == self.d

    def __hash__(self):
        return hash(("QuadField", self.d))

    def __repr__(self):
        return f"Q(sqrt({self.d}))"


def rational_sqrt(q: Fraction):
    """Exact square root of a rational if it is a perfect square, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn = math.isqrt(n)
    rd = math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def rational_cbrt(q: Fraction):
    """Exact cube root of a rational if it is a perfect cube, else None."""
    q = Fraction(q)
    sign = 1
    if q < 0:
        sign = -1
        q = -q
    n, d = q.numerator, q.denominator
    rn = round(n ** (1 / 3)) if n < 2**40 else _icbrt(n)
    rd = round(d ** (1 / 3)) if d < 2**40 else _icbrt(d)
    for cn in (rn - 1, rn, rn + 1):
        for cd in (rd - 1, rd, rd + 1):
            if cn >= 0 and cd >= 1 and cn**3 == n and cd**3 == d:
                return sign * Fraction(cn, cd)
    return None


def _icbrt(n: int) -> int:
    lo, hi = 0, 1 << ((n.bit_length() + 2) // 3 + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**3 <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def sqrt_in_quadfield(a: QuadElem):
    """Square root of a in Q(sqrt(d)) if one exists there, else None."""
    d = a.d
    if a.b == 0:
        r = rational_sqrt(a.a)
        if r is not None:
            return QuadElem(d, r, 0)
        # maybe a = d * square: sqrt = sqrt(a/d) * sqrt(d)
        r = rational_sqrt(a.a / d) if a.a != 0 else None
        if r is not None:
            return QuadElem(d, 0, r)
        return None
    # (u + v sqrt(d))^2 = u^2 + v^2 d + 2uv sqrt(d)
    # so u^2 + d v^2 = a.a and 2uv = a.b; substitute v = a.b/(2u):
    # 4u^4 - 4 a.a u^2 + d a.b^2 = 0 -> u^2 = (a.a +- sqrt(a.a^2 - d a.b^2))/2
    n = a.norm()
    rn = rational_sqrt(n)
    if rn is None:
        return None
    for sgn in (1, -1):
        u2 = (a.a + sgn * rn) / 2
        u = rational_sqrt(u2)
        if u is not None and u != 0:
            v = a.b / (2 * u)
            cand = QuadElem(d, u, v)
            if cand * cand == a:
                return cand
    return None


def cbrt_in_quadfield(a: QuadElem):
    """Cube root of a in Q(sqrt(d)) if one exists there, else None."""
    d = a.d
    if a.b == 0:
        r = rational_cbrt(a.a)
        return QuadElem(d, r, 0) if r is not None else None
    # (u + v sqrt d)^3 = u(u^2+3v^2 d) + v(3u^2+v^2 d) sqrt d
    # with v != 0: let w = u/v; a.a/a.b = w(w^2+3d)/(3w^2+d)
    # -> a.b w^3 - 3 a.a w^2 + 3 d a.b w - d a.a = 0, rational roots by norm
    coeffs = [-d * a.a, 3 * d * a.b, -3 * a.a, a.b]
    for w in _rational_roots(coeffs):
        den = 3 * w * w + d
        if den == 0:
            continue
        v3 = a.b / den
        v = rational_cbrt(v3)
        if v is None or v == 0:
            continue
        cand = QuadElem(d, w * v, v)
        if cand * cand * cand == a:
            return cand
    return None


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """Rational roots of a polynomial with rational coefficients
    (lowest degree first)."""
    from math import gcd

    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return []
    lcm = 1
    for c in cs:
        lcm = lcm * c.denominator // gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in cs]
    shift = 0
    while ints[shift] == 0:
        shift += 1
    ints = ints[shift:]
    a0, an = abs(ints[0]), abs(ints[-1])
    roots = set()
    if shift:
        roots.add(Fraction(0))
    for pn in _divisors(a0):
        for qd in _divisors(an):
            for cand in (Fraction(pn, qd), Fraction(-pn, qd)):
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.add(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [1]
    out = []
    f = 1
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            if f != n // f:
                out.append(n // f)
        f += 1
    return sorted(out)
