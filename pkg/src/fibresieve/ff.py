"""Finite fields F_p and small extensions F_{p^k}, k <= 4.

Elements are immutable coordinate vectors over F_p; fields cache root
tables for fast square/d-th root extraction below 2^16 elements and fall
back to exponentiation-based methods above.  Defining polynomials are found
by a deterministic search (smallest integer encoding c0 + c1*p + ... of an
irreducible monic polynomial), so fields are reproducible across runs.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .exact import FieldOps, UsageError

_ELEMENT_GUARD = 10**8
_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 2^31."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FFElem:
    """Element of a finite field, stored as a coordinate vector over F_p."""

    __slots__ = ("field", "vec")

    def __init__(self, field: "FiniteField", vec: tuple[int, ...]):
        self.field = field
        self.vec = vec

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.field is not self.field and other.field != self.field:
                raise UsageError("elements of different fields never mix implicitly")
            return other
        if isinstance(other, int):
            return self.field.of_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.field.add(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.field.sub(self, o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.field.sub(o, self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.field.mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.field.mul(self, self.field.inv(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.field.mul(o, self.field.inv(self))

    def __neg__(self):
        return self.field.neg(self)

    def __pow__(self, n: int):
        return self.field.pow(self, n)

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.field == other.field and self.vec == other.vec
        if isinstance(other, int):
            return self.vec == self.field.of_int(other).vec
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.vec))

    def __repr__(self):
        if self.field.k == 1:
            return f"{self.vec[0]}"
        return f"FF({self.vec} over GF({self.field.p}^{self.field.k}))"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.vec)


class FiniteField(FieldOps):
    """F_{p^k} with arithmetic in F_p[x]/(defining polynomial)."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p) or p >= 2**31:
            raise UsageError(f"characteristic must be a prime < 2^31, got {p}")
        if not 1 <= k <= 4:
            raise UsageError(f"extension degree must be 1..4, got {k}")
        self.p = p
        self.k = k
        self.order = p**k
        if k == 1:
            self.modulus: tuple[int, ...] | None = None
        else:
            self.modulus = _find_defining_poly(p, k)
        self._zero = FFElem(self, (0,) * k)
        self._one = FFElem(self, (1,) + (0,) * (k - 1))
        self._sqrt_table: dict[tuple[int, ...], tuple[int, ...]] | None = None
        self._dth_tables: dict[int, dict] = {}

    # -- FieldOps protocol --------------------------------------------------
    def zero(self) -> FFElem:
        return self._zero

    def one(self) -> FFElem:
        return self._one

    def of_int(self, n: int) -> FFElem:
        return FFElem(self, (n % self.p,) + (0,) * (self.k - 1))

    def characteristic(self) -> int:
        return self.p

    def of_vec(self, vec) -> FFElem:
        v = tuple(c % self.p for c in vec)
        if len(v) != self.k:
            v = v + (0,) * (self.k - len(v))
        return FFElem(self, v)

    # -- raw vector arithmetic ------------------------------------------------
    def add(self, a: FFElem, b: FFElem) -> FFElem:
        p = self.p
        return FFElem(self, tuple((x + y) % p for x, y in zip(a.vec, b.vec)))

    def sub(self, a: FFElem, b: FFElem) -> FFElem:
        p = self.p
        return FFElem(self, tuple((x - y) % p for x, y in zip(a.vec, b.vec)))

    def neg(self, a: FFElem) -> FFElem:
        p = self.p
        return FFElem(self, tuple((-x) % p for x in a.vec))

    def mul(self, a: FFElem, b: FFElem) -> FFElem:
        p = self.p
        if self.k == 1:
            return FFElem(self, ((a.vec[0] * b.vec[0]) % p,))
        if self.k == 2:
            a0, a1 = a.vec
            b0, b1 = b.vec
            m1, m0 = self.modulus[1], self.modulus[0]
            t = a1 * b1
            return FFElem(
                self, ((a0 * b0 - t * m0) % p, (a0 * b1 + a1 * b0 - t * m1) % p)
            )
        return FFElem(self, _polymulmod(a.vec, b.vec, self.modulus, p, self.k))

    def inv(self, a: FFElem) -> FFElem:
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.k == 1:
            return FFElem(self, (pow(a.vec[0], self.p - 2, self.p),))
        return self.pow(a, self.order - 2)

    def pow(self, a: FFElem, n: int) -> FFElem:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self._one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteField)
            and other.p == self.p
            and other.k == self.k
        )

    def __hash__(self) -> int:
        return hash(("FiniteField", self.p, self.k))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    # -- structure ------------------------------------------------------------
    def embed(self, a: FFElem) -> FFElem:
        """Embed an element of the prime subfield into this field."""
        if a.field.k != 1 or a.field.p != self.p:
            raise UsageError("only prime-subfield embeddings are supported")
        return self.of_int(a.vec[0])

    def in_prime_field(self, a: FFElem):
        """Return the F_p representative if a lies in the prime subfield."""
        if all(c == 0 for c in a.vec[1:]):
            return a.vec[0]
        return None


def _polymulmod(a, b, modulus, p, k):
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    # reduce by monic modulus of degree k
    for i in range(2 * k - 2, k - 1, -1):
        c = prod[i] % p
        if c:
            for j in range(k):
                prod[i - k + j] -= c * modulus[j]
        prod[i] = 0
    return tuple(c % p for c in prod[:k])


def _poly_powmod_xq(modulus: tuple[int, ...], p: int, k: int, q: int) -> tuple[int, ...]:
    """x^q mod (modulus) over F_p, with modulus monic of degree k."""
    result = [1] + [0] * (k - 1)
    base = [0, 1] + [0] * (k - 2) if k > 1 else [0]
    if k == 1:
        return (0,)
    result_t = tuple(result)
    base_t = tuple(base)
    n = q
    while n:
        if n & 1:
            result_t = _polymulmod(result_t, base_t, modulus, p, k)
        base_t = _polymulmod(base_t, base_t, modulus, p, k)
        n >>= 1
    return result_t


def _is_irreducible(coeffs: tuple[int, ...], p: int, k: int) -> bool:
    """Irreducibility for monic degree-k polynomials over F_p, k <= 4,
    by root and quadratic-factor exclusion."""
    # linear factor check: roots in F_p (coeffs excludes the monic lead term)
    for x in range(p):
        acc = 1
        for i in range(k - 1, -1, -1):
            acc = (acc * x + coeffs[i]) % p
        if acc == 0:
            return False
    if k < 4:
        return True
    # degree 4: exclude irreducible quadratic factors via gcd(f, x^{p^2}-x)
    xq = _poly_powmod_xq(coeffs, p, k, p * p)
    diff = list(xq)
    diff[1] = (diff[1] - 1) % p
    return _poly_gcd_deg(tuple(diff), coeffs, p, k) == 0


def _poly_gcd_deg(a: tuple[int, ...], modulus: tuple[int, ...], p: int, k: int) -> int:
    """Degree of gcd(a, modulus+x^k) over F_p (0 if coprime)."""
    fa = [c % p for c in a]
    fb = [c % p for c in modulus] + [1]

    def deg(v):
        d = len(v) - 1
        while d >= 0 and v[d] == 0:
            d -= 1
        return d

    while True:
        da, db = deg(fa), deg(fb)
        if da < 0:
            return max(db, 0) if db > 0 else 0
        if db < 0:
            return max(da, 0) if da > 0 else 0
        if da < db:
            fa, fb = fb, fa
            da, db = db, da
        inv = pow(fb[db], p - 2, p)
        while da >= db:
            c = fa[da] * inv % p
            if c:
                for j in range(db + 1):
                    fa[da - db + j] = (fa[da - db + j] - c * fb[j]) % p
            da -= 1
            while da >= 0 and fa[da] == 0:
                da -= 1
        fa = fa[: max(da + 1, 0)]
        if deg(fa) < 0:
            return db


def _find_defining_poly(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k by integer encoding of
    (c0, c1, ..., c_{k-1})."""
    for code in range(p**k):
        coeffs = []
        c = code
        for _ in range(k):
            coeffs.append(c % p)
            c //= p
        coeffs_t = tuple(coeffs)
        if _is_irreducible(coeffs_t, p, k):
            return coeffs_t
    raise RuntimeError("no irreducible polynomial found (unreachable)")


def frobenius(a: FFElem) -> FFElem:
    """The p-power Frobenius; fixes the prime field pointwise."""
    field = a.field
    if field.k == 1:
        return a
    return field.pow(a, field.p)


def sqrt_in_field(a: FFElem):
    """Square root with a deterministic choice (lexicographically smaller
    coordinate vector), or None when a is not a square.  Field order odd.
    """
    field = a.field
    if field.p == 2:
        raise UsageError("square roots require odd field order")
    if a.is_zero():
        return a
    if field.order < _TABLE_LIMIT:
        table = _sqrt_table(field)
        vec = table.get(a.vec)
        return FFElem(field, vec) if vec is not None else None
    # exponentiation-based (Tonelli-Shanks over the multiplicative group)
    q = field.order
    if field.pow(a, (q - 1) // 2) != field.one():
        return None
    root = _tonelli_shanks(field, a)
    other = field.neg(root)
    return root if root.vec <= other.vec else other


def _sqrt_table(field: FiniteField) -> dict:
    if field._sqrt_table is None:
        table: dict = {}
        for e in all_elements(field):
            sq = field.mul(e, e)
            prev = table.get(sq.vec)
            if prev is None or e.vec < prev:
                table[sq.vec] = e.vec
        field._sqrt_table = table
    return field._sqrt_table


def _tonelli_shanks(field: FiniteField, a: FFElem) -> FFElem:
    q = field.order
    s, m = q - 1, 0
    while s % 2 == 0:
        s //= 2
        m += 1
    # find a non-square deterministically
    z = None
    for e in all_elements(field):
        if not e.is_zero() and field.pow(e, (q - 1) // 2) != field.one():
            z = e
            break
    c = field.pow(z, s)
    t = field.pow(a, s)
    r = field.pow(a, (s + 1) // 2)
    while t != field.one():
        i, tt = 0, t
        while tt != field.one():
            tt = field.mul(tt, tt)
            i += 1
        b = field.pow(c, 1 << (m - i - 1))
        m = i
        c = field.mul(b, b)
        t = field.mul(t, c)
        r = field.mul(r, b)
    return r


def dth_roots(a: FFElem, d: int) -> list[FFElem]:
    """All solutions of x^d = a, sorted by coordinate vector.

    a must be nonzero and d >= 1; the count is gcd(d, order-1) when a is a
    d-th power and 0 otherwise.
    """
    if d < 1:
        raise UsageError("d must be >= 1")
    if a.is_zero():
        raise UsageError("d-th roots of zero are not needed and not supported")
    field = a.field
    if d == 1:
        return [a]
    q = field.order
    import math

    g = math.gcd(d, q - 1)
    if g == 1:
        e = pow(d, -1, q - 1)
        return [field.pow(a, e)]
    if field.pow(a, (q - 1) // g) != field.one():
        return []
    if q < _TABLE_LIMIT:
        table = _dth_table(field, d)
        return [FFElem(field, v) for v in sorted(table.get(a.vec, ()))]
    raise UsageError(
        f"d-th roots with gcd>1 require field order < 2^16, got {q}"
    )


def _dth_table(field: FiniteField, d: int) -> dict:
    tbl = field._dth_tables.get(d)
    if tbl is None:
        tbl = {}
        for e in all_elements(field):
            if e.is_zero():
                continue
            key = field.pow(e, d).vec
            tbl.setdefault(key, []).append(e.vec)
        field._dth_tables[d] = tbl
    return tbl


def all_elements(field: FiniteField) -> Iterator[FFElem]:
    """Every element exactly once, in deterministic lexicographic order."""
    if field.order > _ELEMENT_GUARD:
        raise UsageError(f"field too large to iterate: {field.order} > {_ELEMENT_GUARD}")
    for vec in itertools.product(range(field.p), repeat=field.k):
        yield FFElem(field, vec)


_field_cache: dict[tuple[int, int], FiniteField] = {}


def GF(p: int, k: int = 1) -> FiniteField:
    """Cached field constructor (fields are immutable and shareable)."""
    key = (p, k)
    f = _field_cache.get(key)
    if f is None:
        f = FiniteField(p, k)
        _field_cache[key] = f
    return f
