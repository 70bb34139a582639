"""Univariate rational functions over a number field, kept in lowest terms."""

from __future__ import annotations

from .poly import UPoly, poly_gcd


class RationalFunctionField:
    """K(s) as a coefficient field (so UPoly can be built over it)."""

    is_qq = False
    degree = None

    def __init__(self, base, var: str = "s"):
        self.base = base
        self.var = var

    @property
    def zero(self) -> "RationalFunction":
        return RationalFunction(UPoly(self.base, []), UPoly.const(self.base, 1), _reduced=True)

    @property
    def one(self) -> "RationalFunction":
        return RationalFunction(UPoly.const(self.base, 1), UPoly.const(self.base, 1), _reduced=True)

    def __call__(self, value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, UPoly):
            return RationalFunction(value, UPoly.const(self.base, 1), _reduced=True)
        return RationalFunction(UPoly.const(self.base, value), UPoly.const(self.base, 1), _reduced=True)

    def gen(self) -> "RationalFunction":
        return self(UPoly.x(self.base))

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalFunctionField) and self.base == other.base

    def __hash__(self) -> int:
        return hash(("RF", self.base))


class RationalFunction:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: UPoly, den: UPoly | None = None, _reduced: bool = False):
        if den is None:
            den = UPoly.const(num.field, 1)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if not num:
                den = UPoly.const(num.field, 1)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lc = den.lc
                if lc != num.field.one:
                    inv = num.field.one / lc
                    num = num * inv
                    den = den * inv
        self.num = num
        self.den = den
        self._hash = None

    @property
    def field(self):
        return self.num.field

    @classmethod
    def const(cls, field, c) -> "RationalFunction":
        return cls(UPoly.const(field, c), UPoly.const(field, 1), _reduced=True)

    @classmethod
    def x(cls, field) -> "RationalFunction":
        return cls(UPoly.x(field), UPoly.const(field, 1), _reduced=True)

    def _coerce(self, other) -> "RationalFunction | None":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, UPoly):
            return RationalFunction(other, UPoly.const(self.field, 1), _reduced=True)
        try:
            return RationalFunction.const(self.field, other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.den.degree == 0 and o.num.degree <= 0:
            if not o.num:
                return self.field_zero()
            return RationalFunction(self.num * o.num.coeffs[0], self.den, _reduced=True)
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n = self.num.exact_div(g1) * o.num.exact_div(g2)
        d = self.den.exact_div(g2) * o.den.exact_div(g1)
        return RationalFunction(n, d)

    __rmul__ = __mul__

    def field_zero(self) -> "RationalFunction":
        return RationalFunction(UPoly(self.field, []), UPoly.const(self.field, 1), _reduced=True)

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num**n, self.den**n, _reduced=True)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if not isinstance(other, RationalFunction) else other
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, value):
        num = self.num(value)
        den = self.den(value)
        return num / den

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_const(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def const_value(self):
        return self.num[0]

    def degree(self) -> int:
        """deg(num) - deg(den); very negative for zero."""
        if not self.num:
            return -(10**9)
        return self.num.degree - self.den.degree

    def map_coeffs(self, fn, field) -> "RationalFunction":
        return RationalFunction(self.num.map_coeffs(fn, field), self.den.map_coeffs(fn, field))

    def to_str(self, var: str = "x") -> str:
        ns = self.num.to_str(var)
        if self.den.degree == 0:
            return ns
        return f"({ns})/({self.den.to_str(var)})"

    def __repr__(self) -> str:
        return self.to_str()
