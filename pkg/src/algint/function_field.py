"""Elements a(x) + b(x)*y of the function field of a supported curve."""

from __future__ import annotations

from .arith import RationalFunction, UPoly
from .curve import Curve


class FFElement:
    """a + b*y with a, b in K(x); on the line b is always zero."""

    __slots__ = ("curve", "a", "b")

    def __init__(self, curve: Curve, a: RationalFunction, b: RationalFunction | None = None):
        K = curve.field
        self.curve = curve
        self.a = a if isinstance(a, RationalFunction) else _rf(K, a)
        if b is None or curve.is_line:
            b = RationalFunction(UPoly(K, []))
        self.b = b if isinstance(b, RationalFunction) else _rf(K, b)

    # constructors ---------------------------------------------------------------

    @classmethod
    def const(cls, curve: Curve, c) -> "FFElement":
        return cls(curve, RationalFunction.const(curve.field, c))

    @classmethod
    def x(cls, curve: Curve) -> "FFElement":
        return cls(curve, RationalFunction.x(curve.field))

    @classmethod
    def y(cls, curve: Curve) -> "FFElement":
        if curve.is_line:
            raise ValueError("the line has no y coordinate")
        K = curve.field
        return cls(curve, RationalFunction.const(K, 0), RationalFunction.const(K, 1))

    @property
    def field(self):
        return self.curve.field

    def _coerce(self, other) -> "FFElement | None":
        if isinstance(other, FFElement):
            return other
        if isinstance(other, RationalFunction):
            return FFElement(self.curve, other)
        try:
            return FFElement.const(self.curve, other)
        except TypeError:
            return None

    # arithmetic ----------------------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElement(self.curve, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return FFElement(self.curve, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElement(self.curve, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.curve.is_line:
            return FFElement(self.curve, self.a * o.a)
        P = RationalFunction(self.curve.poly)
        a = self.a * o.a
        if self.b and o.b:
            a = a + self.b * o.b * P
        b = self.a * o.b + self.b * o.a
        return FFElement(self.curve, a, b)

    __rmul__ = __mul__

    def conj(self) -> "FFElement":
        """Image under the hyperelliptic involution y -> -y."""
        return FFElement(self.curve, self.a, -self.b)

    def norm(self) -> RationalFunction:
        """Norm down to K(x): a^2 - b^2 P."""
        if self.curve.is_line or not self.b:
            return self.a * self.a
        return self.a * self.a - self.b * self.b * RationalFunction(self.curve.poly)

    def inverse(self) -> "FFElement":
        if not self:
            raise ZeroDivisionError("inverse of zero function")
        if self.curve.is_line or not self.b:
            return FFElement(self.curve, self.a.inverse())
        n = self.norm().inverse()
        return FFElement(self.curve, self.a * n, -self.b * n)

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
        result = FFElement.const(self.curve, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def derivative(self) -> "FFElement":
        """d/dx, using y' = P'/(2y) = P' y / (2P)."""
        if self.curve.is_line or not self.b:
            return FFElement(self.curve, self.a.derivative())
        P = self.curve.poly
        logder = RationalFunction(P.derivative(), P * 2)
        return FFElement(self.curve, self.a.derivative(), self.b.derivative() + self.b * logder)

    def is_constant(self) -> bool:
        return not self.b and self.a.is_const()

    def minimal_polynomial(self) -> list[RationalFunction]:
        """Coefficients (low to high) of the minimal polynomial over K(x)."""
        if self.curve.is_line or not self.b:
            return [-self.a, RationalFunction.const(self.field, 1)]
        return [self.norm(), self.a * (-2), RationalFunction.const(self.field, 1)]

    def map_coeffs(self, emb, curve: Curve) -> "FFElement":
        K = curve.field
        return FFElement(curve, self.a.map_coeffs(emb, K), self.b.map_coeffs(emb, K))

    def evaluate(self, x, y):
        """Numeric value at a point (x, y) given as mpmath numbers."""
        from .numeric import eval_ratfunc

        v = eval_ratfunc(self.a, x)
        if self.b:
            v = v + eval_ratfunc(self.b, x) * y
        return v

    def compose(self, u: "FFElement", v: "FFElement | None") -> "FFElement":
        """Substitute x := u, y := v (elements of another function field)."""
        a = _eval_rf(self.a, u)
        if self.b:
            a = a + _eval_rf(self.b, u) * v
        return a

    def to_str(self) -> str:
        xs, ys = self.curve.xname, self.curve.yname
        parts = []
        if self.a:
            parts.append(self.a.to_str(xs))
        if self.b:
            bs = self.b.to_str(xs)
            parts.append(f"({bs})*{ys}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return self.to_str()


def _rf(K, value) -> RationalFunction:
    if isinstance(value, UPoly):
        return RationalFunction(value)
    return RationalFunction.const(K, value)


def _eval_rf(r: RationalFunction, u: FFElement) -> FFElement:
    num = _eval_poly(r.num, u)
    if r.den.degree == 0:
        return num * (u.field.one / r.den.coeffs[0]) if r.den.coeffs[0] != 1 else num
    return num / _eval_poly(r.den, u)


def _eval_poly(p: UPoly, u: FFElement) -> FFElement:
    acc = FFElement.const(u.curve, 0)
    for c in reversed(p.coeffs):
        acc = acc * u + FFElement.const(u.curve, c)
    return acc
