"""Dense univariate polynomials over an arbitrary coefficient field."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .fields import QQ


class DegenerateInput(ValueError):
    """An operation received an input outside its domain (e.g. a constant
    where a positive-degree polynomial is required)."""


class UPoly:
    """Polynomial sum(c_i * X**i) with coefficients in ``field``.

    Coefficients are stored low-to-high with no trailing zeros, so the zero
    polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs: Iterable = ()):
        self.field = field
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, field, coeffs: list) -> "UPoly":
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(coeffs)
        obj._hash = None
        return obj

    @classmethod
    def x(cls, field=QQ) -> "UPoly":
        return cls._raw(field, [field.zero, field.one])

    @classmethod
    def const(cls, field, c) -> "UPoly":
        return cls._raw(field, [field(c)])

    @classmethod
    def monomial(cls, field, k: int, c=1) -> "UPoly":
        return cls._raw(field, [field.zero] * k + [field(c)])

    @classmethod
    def from_roots(cls, field, roots: Sequence) -> "UPoly":
        p = cls.const(field, 1)
        for r in roots:
            p = p * cls._raw(field, [-field(r), field.one])
        return p

    # basic queries ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return not other
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # arithmetic --------------------------------------------------------------

    def _coerce(self, other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        return UPoly._raw(self.field, [self.field(other)])

    def __add__(self, other) -> "UPoly":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UPoly._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly._raw(self.field, [-c for c in self.coeffs])

    def __sub__(self, other) -> "UPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            c = self.field(other)
            if not c:
                return UPoly._raw(self.field, [])
            return UPoly._raw(self.field, [x * c for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly._raw(self.field, [])
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return UPoly._raw(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UPoly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = self.field.one / other.lc
        zero = self.field.zero
        if len(rem) - 1 < db:
            return UPoly._raw(self.field, []), self
        quot = [zero] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if not c:
                continue
            q = c * inv_lc
            quot[k] = q
            for j in range(db + 1):
                rem[k + j] = rem[k + j] - q * bc[j]
        return UPoly._raw(self.field, quot), UPoly._raw(self.field, rem[:db])

    def __floordiv__(self, other) -> "UPoly":
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other) -> "UPoly":
        return self.divmod(self._coerce(other))[1]

    def exact_div(self, other: "UPoly") -> "UPoly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "UPoly") -> bool:
        return not (other % self)

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        lc = self.lc
        if lc == self.field.one:
            return self
        inv = self.field.one / lc
        return UPoly._raw(self.field, [c * inv for c in self.coeffs])

    def derivative(self) -> "UPoly":
        return UPoly._raw(self.field, [c * k for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, value):
        """Horner evaluation; ``value`` may be any ring element that accepts
        multiplication by and addition of coefficients."""
        if not self.coeffs:
            return self.field.zero * 1 if not hasattr(value, "zero_like") else value.zero_like()
        acc = self.coeffs[-1]
        first = True
        for c in reversed(self.coeffs[:-1]):
            acc = (value * acc if first else acc * value) + c
            first = False
        if first and hasattr(value, "zero_like"):
            return value.zero_like() + acc
        return acc

    def compose(self, other: "UPoly") -> "UPoly":
        acc = UPoly._raw(other.field, [])
        for c in reversed(self.coeffs):
            acc = acc * other + UPoly._raw(other.field, [other.field(c)])
        return acc

    def shift(self, c) -> "UPoly":
        """p(X + c)."""
        return self.compose(UPoly._raw(self.field, [self.field(c), self.field.one]))

    def map_coeffs(self, fn, field) -> "UPoly":
        return UPoly._raw(field, [fn(c) for c in self.coeffs])

    def reverse(self, n: int | None = None) -> "UPoly":
        """X**n * p(1/X) with n defaulting to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [self.field.zero] * (n + 1 - len(self.coeffs))
        return UPoly._raw(self.field, cs[: n + 1][::-1])

    # gcd family ---------------------------------------------------------------

    def gcd(self, other: "UPoly") -> "UPoly":
        return poly_gcd(self, other)

    def xgcd(self, other: "UPoly") -> tuple["UPoly", "UPoly", "UPoly"]:
        """(g, s, t) with s*self + t*other = g monic."""
        f = self.field
        r0, r1 = self, other
        s0, s1 = UPoly.const(f, 1), UPoly._raw(f, [])
        t0, t1 = UPoly._raw(f, []), UPoly.const(f, 1)
        while r1:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if not r0:
            return r0, s0, t0
        inv = f.one / r0.lc
        return r0 * inv, s0 * inv, t0 * inv

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            terms.append(_term(c, var, k))
        out = " + ".join(terms)
        return out.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"UPoly({self.to_str()})"

    def __str__(self) -> str:
        return self.to_str()


def _coeff_str(c) -> str:
    s = c.to_str() if hasattr(c, "to_str") else str(c)
    return s


def _term(c, var: str, k: int) -> str:
    cs = _coeff_str(c)
    simple = isinstance(c, (int, Fraction))
    if k == 0:
        return cs if simple or cs.startswith("(") else f"({cs})"
    mono = var if k == 1 else f"{var}^{k}"
    if simple:
        if c == 1:
            return mono
        if c == -1:
            return "-" + mono
        return f"{cs}*{mono}"
    return f"({cs})*{mono}"


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd of ``a`` and ``b`` (zero only when both are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def resultant(a: UPoly, b: UPoly):
    """Resultant res(a, b) = lc(a)**deg(b) * prod b(alpha), alpha over roots of a.

    Computed by the Euclidean remainder sequence over the coefficient field.
    """
    f = a.field
    if not a or not b:
        return f.zero
    sign = f.one
    acc = f.one
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return sign * acc * b.lc**da
        if da == 0:
            return sign * acc * a.lc**db
        if da < db:
            a, b = b, a
            if (da * db) % 2:
                sign = -sign
            continue
        r = a % b
        if not r:
            return f.zero
        dr = r.degree
        if (da * db) % 2:
            sign = -sign
        acc = acc * b.lc ** (da - dr)
        a, b = b, r


def discriminant(p: UPoly):
    n = p.degree
    r = resultant(p, p.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return r * sign / p.lc


def squarefree_factor(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: monic, pairwise coprime, squarefree factors with
    multiplicities whose product is ``p / lc(p)``."""
    if not p:
        raise DegenerateInput("squarefree factorisation of the zero polynomial")
    p = p.monic()
    if p.degree <= 0:
        return []
    out = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b.exact_div(g)
        c = d.exact_div(g)
        d = c - b.derivative()
        i += 1
    return out


def squarefree_part(p: UPoly) -> UPoly:
    out = UPoly.const(p.field, 1)
    for f, _ in squarefree_factor(p):
        out = out * f
    return out


def is_squarefree(p: UPoly) -> bool:
    return poly_gcd(p, p.derivative()).degree <= 0


def interpolate(points: Sequence, values: Sequence, field=QQ) -> UPoly:
    """Newton interpolation through (points[i], values[i])."""
    n = len(points)
    coef = [field(v) for v in values]
    xs = [field(x) for x in points]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = UPoly.const(field, coef[-1])
    for i in range(n - 2, -1, -1):
        out = out * UPoly._raw(field, [-xs[i], field.one]) + UPoly.const(field, coef[i])
    return out


def content_free(p: UPoly) -> tuple[Fraction, list[int]]:
    """Return (unit, integer coefficients) with p = unit * sum(c_i X^i), the
    integer vector primitive with positive leading coefficient (rational
    coefficient polynomials only)."""
    from math import gcd, lcm

    if not p:
        return Fraction(0), []
    den = 1
    for c in p.coeffs:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), [v // g for v in ints]
