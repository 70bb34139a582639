"""Truncated Laurent series in a local parameter t, with precision tracking.

``PuiseuxSeries`` is a Laurent series in t that also records the
ramification index e of the place it was expanded at, so t**k corresponds
to the fractional power (x - x0)**(k/e) of the base coordinate.
"""

from __future__ import annotations

from fractions import Fraction

EXACT = 10**9


class PrecisionExhausted(ArithmeticError):
    """A series operation needed more correct terms than were available."""


class PuiseuxSeries:
    """sum_{k >= val} c_k t^k, exact for exponents below ``prec``.

    ``prec`` is absolute; EXACT marks a finite (polynomial) expansion.
    A series whose known coefficients all vanish has ``val == prec`` and
    an empty coefficient list.
    """

    __slots__ = ("field", "val", "coeffs", "prec", "ramification")

    def __init__(self, field, val: int, coeffs, prec: int = EXACT, ramification: int = 1):
        cs = list(coeffs)
        if prec < EXACT:
            cs = cs[: max(prec - val, 0)]
        k = 0
        while k < len(cs) and not cs[k]:
            k += 1
        cs = cs[k:]
        val += k
        while cs and not cs[-1]:
            cs.pop()
        if not cs:
            val = prec if prec < EXACT else 0
        self.field = field
        self.val = val
        self.coeffs = cs
        self.prec = prec
        self.ramification = ramification

    # constructors ---------------------------------------------------------------

    @classmethod
    def const(cls, field, c, prec: int = EXACT, e: int = 1) -> "PuiseuxSeries":
        return cls(field, 0, [field(c)], prec, e)

    @classmethod
    def monomial(cls, field, k: int, c=1, prec: int = EXACT, e: int = 1) -> "PuiseuxSeries":
        return cls(field, k, [field(c)], prec, e)

    def zero_like(self) -> "PuiseuxSeries":
        return PuiseuxSeries(self.field, 0, [], self.prec if self.prec < EXACT else EXACT, self.ramification)

    # queries -------------------------------------------------------------------------

    def is_zero_to_precision(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> int:
        if not self.coeffs:
            if self.prec >= EXACT:
                return EXACT
            raise PrecisionExhausted("valuation unknown: series vanishes to its precision")
        return self.val

    def coefficient(self, k: int):
        if k >= self.prec:
            raise PrecisionExhausted(f"coefficient t^{k} beyond precision {self.prec}")
        i = k - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def truncate(self, prec: int) -> "PuiseuxSeries":
        return PuiseuxSeries(self.field, self.val, self.coeffs, min(prec, self.prec), self.ramification)

    # arithmetic -----------------------------------------------------------------------

    def _coerce(self, other) -> "PuiseuxSeries | None":
        if isinstance(other, PuiseuxSeries):
            return other
        try:
            return PuiseuxSeries(self.field, 0, [self.field(other)], EXACT, self.ramification)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prec = min(self.prec, o.prec)
        if not self.coeffs:
            lo = o.val
        elif not o.coeffs:
            lo = self.val
        else:
            lo = min(self.val, o.val)
        hi = max(self.val + len(self.coeffs), o.val + len(o.coeffs))
        hi = min(hi, prec) if prec < EXACT else hi
        zero = self.field.zero
        out = [zero] * max(hi - lo, 0)
        for k, c in enumerate(self.coeffs):
            i = self.val + k - lo
            if 0 <= i < len(out):
                out[i] = out[i] + c
        for k, c in enumerate(o.coeffs):
            i = o.val + k - lo
            if 0 <= i < len(out):
                out[i] = out[i] + c
        return PuiseuxSeries(self.field, lo, out, prec, self.ramification)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.field, self.val, [-c for c in self.coeffs], self.prec, self.ramification)

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
        if not isinstance(other, PuiseuxSeries):
            try:
                c = self.field(other)
            except TypeError:
                return NotImplemented
            if not c:
                return PuiseuxSeries(self.field, 0, [], self.prec if self.prec < EXACT else EXACT, self.ramification)
            return PuiseuxSeries(self.field, self.val, [x * c for x in self.coeffs], self.prec, self.ramification)
        o = other
        a_val = self.val if self.coeffs else self.prec
        b_val = o.val if o.coeffs else o.prec
        p1 = a_val + o.prec if o.prec < EXACT else EXACT
        p2 = b_val + self.prec if self.prec < EXACT else EXACT
        prec = min(p1, p2)
        if not self.coeffs or not o.coeffs:
            return PuiseuxSeries(self.field, 0, [], prec, self.ramification)
        val = self.val + o.val
        n = len(self.coeffs) + len(o.coeffs) - 1
        if prec < EXACT:
            n = min(n, prec - val)
        if n <= 0:
            return PuiseuxSeries(self.field, 0, [], prec, self.ramification)
        zero = self.field.zero
        out = [zero] * n
        bc = o.coeffs
        for i, ca in enumerate(self.coeffs):
            if i >= n:
                break
            if not ca:
                continue
            for j in range(min(len(bc), n - i)):
                cb = bc[j]
                if cb:
                    out[i + j] = out[i + j] + ca * cb
        return PuiseuxSeries(self.field, val, out, prec, self.ramification)

    __rmul__ = __mul__

    def inverse(self, rel_prec: int | None = None) -> "PuiseuxSeries":
        if not self.coeffs:
            raise PrecisionExhausted("cannot invert a series that vanishes to its precision")
        v = self.val
        if self.prec < EXACT:
            r = self.prec - v
        else:
            if len(self.coeffs) == 1:
                return PuiseuxSeries(self.field, -v, [self.field.one / self.coeffs[0]], EXACT, self.ramification)
            if rel_prec is None:
                raise PrecisionExhausted("inverse of an exact non-monomial series needs a precision")
            r = rel_prec
        if rel_prec is not None:
            r = min(r, rel_prec)
        a = self.coeffs
        inv0 = self.field.one / a[0]
        b = [inv0]
        zero = self.field.zero
        for n in range(1, r):
            s = zero
            for k in range(1, min(n, len(a) - 1) + 1):
                s = s + a[k] * b[n - k]
            b.append(-s * inv0)
        return PuiseuxSeries(self.field, -v, b, -v + r, self.ramification)

    def __truediv__(self, other):
        if isinstance(other, PuiseuxSeries):
            rel = None
            if other.prec >= EXACT and len(other.coeffs) > 1:
                rel = (self.prec - self.val) if self.prec < EXACT else None
                if rel is None:
                    raise PrecisionExhausted("exact division needs an explicit precision")
            return self * other.inverse(rel)
        c = self.field(other)
        inv = self.field.one / c
        return self * inv

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = PuiseuxSeries.const(self.field, 1, EXACT, self.ramification)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "PuiseuxSeries":
        """d/dt."""
        out = [c * (self.val + k) for k, c in enumerate(self.coeffs)]
        prec = self.prec - 1 if self.prec < EXACT else EXACT
        return PuiseuxSeries(self.field, self.val - 1, out, prec, self.ramification)

    def substitute_power(self, m: int) -> "PuiseuxSeries":
        """f(t^m)."""
        zero = self.field.zero
        out = []
        for k, c in enumerate(self.coeffs):
            out.append(c)
            if k < len(self.coeffs) - 1:
                out.extend([zero] * (m - 1))
        prec = self.prec * m if self.prec < EXACT else EXACT
        return PuiseuxSeries(self.field, self.val * m, out, prec, self.ramification)

    def sqrt(self, root0, prec: int) -> "PuiseuxSeries":
        """Square root with constant term ``root0`` (series must have val 0)."""
        if self.val != 0 or not self.coeffs:
            raise ValueError("sqrt needs a unit series")
        a = self.coeffs
        r = prec if self.prec >= EXACT else min(prec, self.prec)
        b = [root0]
        inv2 = self.field.one / (root0 * 2)
        zero = self.field.zero
        for n in range(1, r):
            s = a[n] if n < len(a) else zero
            for k in range(1, n):
                s = s - b[k] * b[n - k]
            b.append(s * inv2)
        return PuiseuxSeries(self.field, 0, b, r, self.ramification)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        prec = min(self.prec, other.prec)
        d = self - other
        return not d.coeffs and d.prec >= prec

    def __hash__(self):
        return hash((self.val, tuple(self.coeffs[:4])))

    def to_str(self, var: str = "t") -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            e = self.val + k
            cs = c.to_str() if hasattr(c, "to_str") else str(c)
            terms.append(f"{cs}*{var}^{e}" if e else cs)
        body = " + ".join(terms) if terms else "0"
        if self.prec < EXACT:
            body += f" + O({var}^{self.prec})"
        return body

    def __repr__(self) -> str:
        return f"PuiseuxSeries({self.to_str()}, e={self.ramification})"


def as_fraction(c) -> Fraction:
    return Fraction(c)
