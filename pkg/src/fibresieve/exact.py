"""Exact arithmetic foundation: rationals, dense univariate polynomials and
truncated Laurent series over an arbitrary coefficient field.

Every object here is immutable after construction and every operation is a
pure function, so values can be shared freely between workers.

The coefficient field is duck-typed: anything with +, -, *, /, ==, and a
zero/one obtainable from ``field.zero()`` / ``field.one()`` works.  Two
built-in field wrappers are provided: ``QQ`` (fractions.Fraction) and the
finite fields from :mod:`fibresieve.ff`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction  # exact rationals; always stored in lowest terms by Fraction


def rat_from_string(text: str) -> Rat:
    """Parse "p/q" or "p" into an exact rational."""
    return Fraction(text.strip())


def rat_to_string(value: Rat) -> str:
    """Canonical lowest-terms text form, "p" or "p/q" with q > 0."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class FieldOps:
    """Field protocol used by Poly/TruncSeries; see QQField for the model."""

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def of_int(self, n: int):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def characteristic(self) -> int:
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b


class QQField(FieldOps):
    """The rational field, backed by fractions.Fraction."""

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def of_int(self, n: int) -> Fraction:
        return Fraction(n)

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in QQ")
        return 1 / Fraction(a)

    def characteristic(self) -> int:
        return 0

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, QQField)

    def __hash__(self) -> int:
        return hash("QQField")


QQ = QQField()


class UsageError(ValueError):
    """Caller violated a documented precondition."""


class GeometryError(ValueError):
    """Geometric precondition failed (singular point, bad reduction, ...)."""


class Poly:
    """Dense univariate polynomial over a field.

    Coefficients are stored lowest degree first with no trailing zeros; the
    zero polynomial has an empty coefficient list and degree() returns None
    as the distinguished sentinel.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldOps, coeffs: Iterable):
        cs = list(coeffs)
        zero = field.zero()
        while cs and cs[-1] == zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors -----------------------------------------------------
    @staticmethod
    def zero(field: FieldOps) -> "Poly":
        return Poly(field, [])

    @staticmethod
    def one(field: FieldOps) -> "Poly":
        return Poly(field, [field.one()])

    @staticmethod
    def x(field: FieldOps) -> "Poly":
        return Poly(field, [field.zero(), field.one()])

    @staticmethod
    def const(field: FieldOps, c) -> "Poly":
        return Poly(field, [c])

    @staticmethod
    def from_ints(field: FieldOps, ints: Sequence[int]) -> "Poly":
        return Poly(field, [field.of_int(n) for n in ints])

    # -- basic structure --------------------------------------------------
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self):
        if not self.coeffs:
            raise UsageError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == self.field.zero():
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"({c})*x")
            else:
                terms.append(f"({c})*x^{i}")
        return "Poly(" + " + ".join(terms) + ")"

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Poly") -> None:
        if self.field != other.field:
            raise UsageError("mixed coefficient fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    def __neg__(self) -> "Poly":
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        zero = self.field.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    def scale(self, c) -> "Poly":
        return Poly(self.field, [c * a for a in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise UsageError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly"):
        """Exact polynomial division with remainder."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        field = self.field
        inv_lead = field.inv(other.lead())
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(field), self
        quot = [field.zero()] * (dq + 1)
        ob = other.coeffs
        for k in range(dq, -1, -1):
            c = rem[k + len(ob) - 1] * inv_lead
            quot[k] = c
            if c != field.zero():
                for j, b in enumerate(ob):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(field, quot), Poly(field, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead()))

    def derivative(self) -> "Poly":
        f = self.field
        return Poly(f, [f.of_int(i) * c for i, c in enumerate(self.coeffs) if i >= 1])

    def eval(self, x0):
        """Horner evaluation at a field element."""
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.const(self.field, c)
        return acc

    def shift(self, x0) -> "Poly":
        """Taylor shift: returns p(x + x0)."""
        return self.compose(Poly(self.field, [x0, self.field.one()]))

    def reverse(self, degree: int | None = None) -> "Poly":
        """Coefficient reversal x^d * p(1/x) padded to the given degree."""
        d = self.degree()
        if d is None:
            return self
        if degree is None:
            degree = d
        if degree < d:
            raise UsageError("reversal degree below polynomial degree")
        zero = self.field.zero()
        padded = list(self.coeffs) + [zero] * (degree - d)
        return Poly(self.field, list(reversed(padded)))

    def root_multiplicity(self, x0) -> int:
        """Multiplicity of x0 as a root (0 if not a root)."""
        if self.is_zero():
            raise UsageError("every point is a root of the zero polynomial")
        shifted = self.shift(x0)
        zero = self.field.zero()
        m = 0
        while shifted.coeffs[m] == zero:
            m += 1
        return m


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    if a.field != b.field:
        raise UsageError("mixed coefficient fields")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun decomposition: pairwise-coprime squarefree factors with
    multiplicities, product of factor^mult = monic(f).

    Requires characteristic 0 or p > deg f, refused otherwise.
    """
    if f.is_zero():
        raise UsageError("squarefree decomposition of the zero polynomial")
    p = f.field.characteristic()
    deg = f.degree()
    if p != 0 and p <= deg:
        raise UsageError(f"characteristic {p} too small for degree {deg}")
    f = f.monic()
    out: list[tuple[Poly, int]] = []
    if deg == 0:
        return out
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f // a
    c = df // a
    i = 1
    while b.degree() is not None and b.degree() > 0:
        d = c - b.derivative()
        g = poly_gcd(b, d)
        if g.degree() and g.degree() > 0:
            out.append((g, i))
        b, c = b // g, d // g
        i += 1
    return out


def squarefree_part(f: Poly) -> Poly:
    """Product of the distinct irreducible factors (multiplicity one each)."""
    prod = Poly.one(f.field)
    for g, _ in squarefree_decomposition(f):
        prod = prod * g
    return prod


class TruncSeries:
    """Truncated Laurent series sum(c[i] * t^(val+i)) + O(t^prec).

    Precision is tracked pessimistically through all arithmetic.  The
    valuation of a series that is zero up to its precision is reported as
    None, meaning ">= prec", never as a number.
    """

    __slots__ = ("field", "val", "prec", "coeffs")

    def __init__(self, field: FieldOps, val: int, prec: int, coeffs: Iterable):
        if prec <= val:
            # Nothing is known below the precision: normalized empty form.
            self.field = field
            self.val = prec
            self.prec = prec
            self.coeffs = ()
            return
        cs = list(coeffs)
        need = prec - val
        if len(cs) < need:
            cs = cs + [field.zero()] * (need - len(cs))
        cs = cs[:need]
        zero = field.zero()
        # normalize: drop leading known zeros into the valuation
        shift = 0
        while shift < len(cs) and cs[shift] == zero:
            shift += 1
        self.field = field
        self.val = val + shift
        self.prec = prec
        self.coeffs = tuple(cs[shift:])

    # -- constructors -----------------------------------------------------
    @staticmethod
    def zero_to(field: FieldOps, prec: int) -> "TruncSeries":
        return TruncSeries(field, prec, prec, [])

    @staticmethod
    def const(field: FieldOps, c, prec: int) -> "TruncSeries":
        return TruncSeries(field, 0, prec, [c])

    @staticmethod
    def t_power(field: FieldOps, n: int, prec: int) -> "TruncSeries":
        return TruncSeries(field, n, prec, [field.one()])

    @staticmethod
    def from_poly(poly: Poly, prec: int) -> "TruncSeries":
        return TruncSeries(poly.field, 0, prec, list(poly.coeffs))

    # -- structure --------------------------------------------------------
    def valuation(self):
        """Exact valuation, or None when zero up to precision."""
        return self.val if self.coeffs else None

    def coeff(self, n: int):
        """Coefficient of t^n; n must be below the precision."""
        if n >= self.prec:
            raise UsageError(f"coefficient t^{n} beyond precision O(t^{self.prec})")
        if n < self.val:
            return self.field.zero()
        return self.coeffs[n - self.val]

    def leading(self):
        if not self.coeffs:
            raise UsageError("series is zero to precision; no leading coefficient")
        return self.val, self.coeffs[0]

    def is_zero_to_prec(self) -> bool:
        return not self.coeffs

    def __repr__(self) -> str:
        parts = [
            f"({c})*t^{self.val + i}" for i, c in enumerate(self.coeffs) if i < 6
        ]
        if len(self.coeffs) > 6:
            parts.append("...")
        body = " + ".join(parts) if parts else "0"
        return f"Series({body} + O(t^{self.prec}))"

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "TruncSeries") -> None:
        if self.field != other.field:
            raise UsageError("mixed coefficient fields")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        prec = min(self.prec, other.prec)
        val = min(self.val, other.val)
        zero = self.field.zero()
        out = [zero] * (prec - val)
        for i, c in enumerate(self.coeffs):
            n = self.val + i
            if n < prec:
                out[n - val] = out[n - val] + c
        for i, c in enumerate(other.coeffs):
            n = other.val + i
            if n < prec:
                out[n - val] = out[n - val] + c
        return TruncSeries(self.field, val, prec, out)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.field, self.val, self.prec, [-c for c in self.coeffs])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        # O(t^p1)*val2 and O(t^p2)*val1 floors
        prec = min(self.prec + other.val, other.prec + self.val)
        if not self.coeffs or not other.coeffs:
            return TruncSeries.zero_to(self.field, prec)
        val = self.val + other.val
        zero = self.field.zero()
        out = [zero] * (prec - val)
        for i, a in enumerate(self.coeffs):
            if a == zero:
                continue
            for j, b in enumerate(other.coeffs):
                n = i + j
                if n < len(out):
                    out[n] = out[n] + a * b
                else:
                    break
        return TruncSeries(self.field, val, prec, out)

    def scale(self, c) -> "TruncSeries":
        return TruncSeries(self.field, self.val, self.prec, [c * a for a in self.coeffs])

    def shift_t(self, n: int) -> "TruncSeries":
        """Multiply by t^n."""
        return TruncSeries(self.field, self.val + n, self.prec + n, list(self.coeffs))

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; requires a known nonzero leading term."""
        if not self.coeffs:
            raise UsageError("cannot invert a series that is zero to precision")
        field = self.field
        v = self.val
        n = self.prec - v  # number of known coefficients
        a0inv = field.inv(self.coeffs[0])
        out = [field.zero()] * n
        out[0] = a0inv
        for k in range(1, n):
            acc = field.zero()
            for j in range(1, k + 1):
                aj = self.coeffs[j] if j < len(self.coeffs) else field.zero()
                acc = acc + aj * out[k - j]
            out[k] = -a0inv * acc
        return TruncSeries(field, -v, n - v, out)

    def __truediv__(self, other: "TruncSeries") -> "TruncSeries":
        return self * other.inverse()

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return TruncSeries.const(self.field, self.field.one(), self.prec)
        out: TruncSeries | None = None
        base = self
        while n:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def truncate(self, prec: int) -> "TruncSeries":
        return TruncSeries(self.field, self.val, min(self.prec, prec), list(self.coeffs))


def poly_on_series(poly: Poly, s: TruncSeries) -> TruncSeries:
    """Evaluate a polynomial on a (possibly Laurent) series argument."""
    field = poly.field
    d = poly.degree()
    if d is None:
        return TruncSeries.zero_to(field, s.prec)
    # Horner from the top; start precision generous enough for Laurent input.
    start_prec = s.prec if s.val >= 0 else s.prec - s.val * d
    acc = TruncSeries.const(field, poly.coeffs[-1], start_prec)
    for c in reversed(poly.coeffs[:-1]):
        acc = acc * s + TruncSeries.const(field, c, acc.prec)
    return acc


def poly_on_laurent(poly: Poly, s: TruncSeries) -> TruncSeries:
    return poly_on_series(poly, s)


class CurveEquation:
    """Bivariate polynomial F(x, y) with y-degree <= 2, as y-coefficient
    polynomials in x.  Covers long Weierstrass and quartic genus-1 models.
    """

    __slots__ = ("field", "ycoeffs")

    def __init__(self, field: FieldOps, ycoeffs: Sequence[Poly]):
        if len(ycoeffs) > 3:
            raise UsageError("curve equations here have y-degree <= 2")
        self.field = field
        self.ycoeffs = tuple(ycoeffs)

    def eval_point(self, x0, y0):
        acc = self.field.zero()
        ypow = self.field.one()
        for c in self.ycoeffs:
            acc = acc + c.eval(x0) * ypow
            ypow = ypow * y0
        return acc

    def eval_series(self, xs: TruncSeries, ys: TruncSeries) -> TruncSeries:
        prec = min(xs.prec, ys.prec)
        acc = TruncSeries.zero_to(self.field, prec)
        ypow = TruncSeries.const(self.field, self.field.one(), prec)
        for c in self.ycoeffs:
            acc = acc + poly_on_laurent(c, xs) * ypow
            ypow = ypow * ys
        return acc

    def dF_dy_point(self, x0, y0):
        acc = self.field.zero()
        for j, c in enumerate(self.ycoeffs):
            if j == 0:
                continue
            term = self.field.of_int(j) * c.eval(x0)
            for _ in range(j - 1):
                term = term * y0
            acc = acc + term
        return acc

    def dF_dx_point(self, x0, y0):
        acc = self.field.zero()
        for j, c in enumerate(self.ycoeffs):
            term = c.derivative().eval(x0)
            for _ in range(j):
                term = term * y0
            acc = acc + term
        return acc


def solve_y_branch(eq: CurveEquation, x_series: TruncSeries, y0, prec: int) -> TruncSeries:
    """Newton iteration for y(t) with F(x(t), y(t)) = 0, y(0) = y0.

    Requires dF/dy != 0 at the base point (smooth, non-critical for the
    chosen parameter).
    """
    field = eq.field
    x0 = x_series.coeff(0) if x_series.val >= 0 else None
    if x0 is None:
        raise UsageError("x-series must be regular at t = 0")
    dy = eq.dF_dy_point(x0, y0)
    if dy == field.zero():
        raise GeometryError("dF/dy vanishes; wrong uniformizer for this point")
    y = TruncSeries.const(field, y0, 1)
    cur_prec = 1
    while cur_prec < prec:
        cur_prec = min(2 * cur_prec, prec)
        y = TruncSeries(field, y.val, cur_prec, list(y.coeffs))
        xs = x_series.truncate(cur_prec)
        # one Newton step at doubled precision
        f_val = eq.eval_series(xs, y)
        dfy = _dF_dy_series(eq, xs, y)
        y = y - f_val * dfy.inverse()
        y = y.truncate(cur_prec)
    return y.truncate(prec)


def _dF_dy_series(eq: CurveEquation, xs: TruncSeries, ys: TruncSeries) -> TruncSeries:
    field = eq.field
    prec = min(xs.prec, ys.prec)
    acc = TruncSeries.zero_to(field, prec)
    for j, c in enumerate(eq.ycoeffs):
        if j == 0:
            continue
        term = poly_on_laurent(c, xs).scale(field.of_int(j))
        for _ in range(j - 1):
            term = term * ys
        acc = acc + term
    return acc


def solve_x_branch(eq: CurveEquation, y_series: TruncSeries, x0, prec: int) -> TruncSeries:
    """Newton iteration for x(t) with F(x(t), y(t)) = 0, x(0) = x0.

    Requires dF/dx != 0 at the base point.
    """
    field = eq.field
    y0 = y_series.coeff(0)
    dx = eq.dF_dx_point(x0, y0)
    if dx == field.zero():
        raise GeometryError("dF/dx vanishes; wrong uniformizer for this point")
    x = TruncSeries.const(field, x0, 1)
    cur_prec = 1
    while cur_prec < prec:
        cur_prec = min(2 * cur_prec, prec)
        x = TruncSeries(field, x.val, cur_prec, list(x.coeffs))
        ys = y_series.truncate(cur_prec)
        f_val = _eval_xy(eq, x, ys)
        dfx = _dF_dx_series(eq, x, ys)
        x = x - f_val * dfx.inverse()
        x = x.truncate(cur_prec)
    return x.truncate(prec)


def _eval_xy(eq: CurveEquation, xs: TruncSeries, ys: TruncSeries) -> TruncSeries:
    return eq.eval_series(xs, ys)


def _dF_dx_series(eq: CurveEquation, xs: TruncSeries, ys: TruncSeries) -> TruncSeries:
    field = eq.field
    prec = min(xs.prec, ys.prec)
    acc = TruncSeries.zero_to(field, prec)
    for j, c in enumerate(eq.ycoeffs):
        term = poly_on_laurent(c.derivative(), xs)
        for _ in range(j):
            term = term * ys
        acc = acc + term
    return acc
