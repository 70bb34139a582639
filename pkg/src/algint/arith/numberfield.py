"""Absolute number fields Q(a), their elements, embeddings and extensions.

Every field here is presented over Q by the minimal polynomial of a single
primitive element.  Towers are flattened on construction (:func:`extend`)
with the classical norm-and-shift primitive element construction, so an
element is always a coordinate vector over Q in the power basis.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Sequence

import sympy

from .fields import QQ
from .poly import UPoly, interpolate, is_squarefree, poly_gcd, squarefree_factor


class NotIrreducible(ValueError):
    pass


def factor_rational(p: UPoly) -> list[tuple[UPoly, int]]:
    """Monic irreducible factorisation over Q (backed by sympy)."""
    if p.degree <= 0:
        return []
    X = sympy.Symbol("X")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * X**k for k, c in enumerate(p.coeffs))
    _, facs = sympy.factor_list(sympy.Poly(expr, X, domain="QQ"))
    out = []
    for fac, mult in facs:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
        out.append((UPoly(QQ, cs).monic(), int(mult)))
    out.sort(key=lambda fm: (fm[0].degree, [ (c.numerator, c.denominator) for c in fm[0].coeffs]))
    return out


class NumberField:
    """Q[a]/(m(a)) for a monic irreducible ``minpoly`` m over Q."""

    is_qq = False

    def __init__(self, minpoly: UPoly, name: str = "a", check: bool = True):
        minpoly = minpoly.monic()
        if minpoly.degree < 1:
            raise ValueError("minimal polynomial must have positive degree")
        if check:
            facs = factor_rational(minpoly)
            if len(facs) != 1 or facs[0][1] != 1:
                raise NotIrreducible(f"{minpoly.to_str(name)} is reducible over Q")
        self.minpoly = minpoly
        self.degree = minpoly.degree
        self.name = name
        d = self.degree
        # x^k mod m for k in [d, 2d-2]
        table = []
        cur = [Fraction(0)] * d
        low = [-c for c in minpoly.coeffs[:d]]
        cur = list(low)
        for _ in range(max(d - 1, 1)):
            table.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                cur = [cur[i] + top * low[i] for i in range(d)]
        self._red = table
        self._key = tuple(minpoly.coeffs)

    # field protocol -------------------------------------------------------------

    @cached_property
    def zero(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self, (Fraction(0),) * self.degree)

    @cached_property
    def one(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self, (Fraction(1),) + (Fraction(0),) * (self.degree - 1))

    @cached_property
    def gen(self) -> "AlgebraicNumber":
        if self.degree == 1:
            return AlgebraicNumber(self, (-self.minpoly.coeffs[0],))
        cs = [Fraction(0)] * self.degree
        cs[1] = Fraction(1)
        return AlgebraicNumber(self, tuple(cs))

    def __call__(self, value) -> "AlgebraicNumber":
        if isinstance(value, AlgebraicNumber):
            if value.field is self or value.field == self:
                return value
            raise TypeError("element of a different number field")
        if isinstance(value, (int, Fraction, str)):
            cs = [Fraction(0)] * self.degree
            cs[0] = Fraction(value)
            return AlgebraicNumber(self, tuple(cs))
        raise TypeError(f"cannot convert {value!r} into {self}")

    def coords(self, value) -> tuple:
        return self(value).coords

    def from_coords(self, coords: Sequence) -> "AlgebraicNumber":
        return AlgebraicNumber(self, tuple(Fraction(c) for c in coords))

    def from_poly(self, p: UPoly) -> "AlgebraicNumber":
        """Image of the rational polynomial p evaluated at the generator."""
        r = p % self.minpoly if p.degree >= self.degree else p
        cs = list(r.coeffs) + [Fraction(0)] * (self.degree - len(r.coeffs))
        return AlgebraicNumber(self, tuple(cs))

    def contains(self, value) -> bool:
        return isinstance(value, (int, Fraction)) or (
            isinstance(value, AlgebraicNumber) and value.field == self
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self._key == other._key

    def __hash__(self) -> int:
        return hash(("NF", self._key))

    def __repr__(self) -> str:
        return f"NumberField({self.minpoly.to_str(self.name)})"

    # numerics ----------------------------------------------------------------------

    def numeric_gen(self, dps: int = 50):
        """The complex value chosen for the generator: the root of the minimal
        polynomial with the largest real part, ties broken by largest
        imaginary part."""
        import mpmath

        key = ("_numgen", dps)
        cache = self.__dict__.setdefault("_numcache", {})
        if key in cache:
            return cache[key]
        with mpmath.workdps(dps + 20):
            cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(self.minpoly.coeffs)]
            if self.degree == 1:
                roots = [-cs[1] / cs[0]]
            else:
                roots = mpmath.polyroots(cs, maxsteps=400, extraprec=4 * dps + 100)
            roots = [mpmath.mpc(r) for r in roots]
            best = max(roots, key=lambda r: (round(float(r.real), 9), round(float(r.imag), 9)))
        cache[key] = best
        return best


class AlgebraicNumber:
    __slots__ = ("field", "coords", "_hash")

    def __init__(self, field: NumberField, coords: tuple):
        self.field = field
        self.coords = coords
        self._hash = None

    def _lift(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field is not self.field and other.field != self.field:
                raise TypeError("mixed number fields")
            return other.coords
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * (self.field.degree - 1)
        return None

    def __add__(self, other):
        oc = self._lift(other)
        if oc is None:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(a + b for a, b in zip(self.coords, oc)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        oc = self._lift(other)
        if oc is None:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(a - b for a, b in zip(self.coords, oc)))

    def __rsub__(self, other):
        oc = self._lift(other)
        if oc is None:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(b - a for a, b in zip(self.coords, oc)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.field.zero
            return AlgebraicNumber(self.field, tuple(a * other for a in self.coords))
        oc = self._lift(other)
        if oc is None:
            return NotImplemented
        d = self.field.degree
        a = self.coords
        prod = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(oc):
                if bj:
                    prod[i + j] += ai * bj
        out = prod[:d]
        red = self.field._red
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = red[k - d]
                for i in range(d):
                    if row[i]:
                        out[i] += c * row[i]
        return AlgebraicNumber(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        if not self:
            raise ZeroDivisionError("inverse of zero algebraic number")
        from .linalg import solve

        # self * v = 1 on the power basis; avoids remainder-sequence growth in Q[x]
        d = self.field.degree
        v = solve(self.mult_matrix(), [Fraction(1)] + [Fraction(0)] * (d - 1), QQ, d)
        if v is None:
            raise ZeroDivisionError("non-invertible element")
        return AlgebraicNumber(self.field, tuple(v))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return AlgebraicNumber(self.field, tuple(a / other for a in self.coords))
        if isinstance(other, AlgebraicNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraicNumber):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if not any(self.coords[1:]):
                self._hash = hash(self.coords[0])
            else:
                self._hash = hash(self.coords)
        return self._hash

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def as_poly(self) -> UPoly:
        return UPoly(QQ, self.coords)

    def mult_matrix(self) -> list[list[Fraction]]:
        """Matrix of multiplication by self on the power basis (columns are images)."""
        d = self.field.degree
        cols = []
        basis = self.field.one
        g = self.field.gen
        for _ in range(d):
            cols.append((self * basis).coords)
            basis = basis * g
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def norm(self) -> Fraction:
        from .linalg import det

        return det(self.mult_matrix(), QQ)

    def trace(self) -> Fraction:
        m = self.mult_matrix()
        return sum((m[i][i] for i in range(len(m))), Fraction(0))

    def charpoly(self) -> UPoly:
        from .linalg import det

        # det(X*I - M) by interpolation at d+1 rational points
        m = self.mult_matrix()
        d = len(m)
        xs = list(range(d + 1))
        vals = []
        for x0 in xs:
            mm = [[(Fraction(x0) if i == j else Fraction(0)) - m[i][j] for j in range(d)] for i in range(d)]
            vals.append(det(mm, QQ))
        return interpolate(xs, vals)

    def minpoly(self) -> UPoly:
        cp = self.charpoly()
        return squarefree_factor(cp)[0][0] if cp.degree > 0 else cp

    def numeric(self, dps: int = 50):
        import mpmath

        g = self.field.numeric_gen(dps)
        with mpmath.workdps(dps + 10):
            acc = mpmath.mpc(0)
            for c in reversed(self.coords):
                acc = acc * g + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def to_str(self, name: str | None = None) -> str:
        name = name or self.field.name
        if self.is_rational():
            return str(self.coords[0])
        return "(" + UPoly(QQ, self.coords).to_str(name) + ")"

    def __repr__(self) -> str:
        return self.to_str()

    __str__ = __repr__


def numeric_value(value, dps: int = 50):
    """Complex value of a rational or algebraic number under the fixed embedding."""
    import mpmath

    if isinstance(value, AlgebraicNumber):
        return value.numeric(dps)
    value = Fraction(value)
    return mpmath.mpc(mpmath.mpf(value.numerator) / value.denominator)


def as_field_poly(p: UPoly, field) -> UPoly:
    return p.map_coeffs(field, field)


# embeddings ---------------------------------------------------------------------------


class Embedding:
    """Field homomorphism src -> dst determined by the image of src's generator."""

    def __init__(self, src, dst, gen_image=None):
        self.src = src
        self.dst = dst
        self.gen_image = gen_image

    def __call__(self, value):
        if self.src.is_qq or isinstance(value, (int, Fraction)):
            return self.dst(value) if not isinstance(value, AlgebraicNumber) else self.dst(value.coords[0])
        if self.src == self.dst and self.gen_image is None:
            return value
        acc = self.dst.zero
        for c in reversed(value.coords):
            acc = acc * self.gen_image + c
        return acc

    def poly(self, p: UPoly) -> UPoly:
        return p.map_coeffs(self, self.dst)

    def then(self, other: "Embedding") -> "Embedding":
        """Composite: first self, then other."""
        if self.src.is_qq:
            return Embedding(self.src, other.dst)
        if self.gen_image is None:
            return Embedding(self.src, other.dst, other(self.src.gen))
        return Embedding(self.src, other.dst, other(self.gen_image))

    def is_identity(self) -> bool:
        return self.src == self.dst and self.gen_image is None

    @staticmethod
    def identity(field) -> "Embedding":
        return Embedding(field, field)


def norm_poly(g: UPoly) -> UPoly:
    """Norm_{K/Q} of g in K[X] as a polynomial in Q[X]."""
    K = g.field
    if K.is_qq:
        return g
    n = g.degree * K.degree
    xs = list(range(n + 1))
    vals = []
    for x0 in xs:
        v = g(K(x0))
        vals.append(v.norm() if isinstance(v, AlgebraicNumber) else Fraction(v) ** K.degree)
    return interpolate(xs, vals)


def _shift_candidates():
    k = 0
    yield 0
    while True:
        k += 1
        yield k
        yield -k


def extend(K, g: UPoly, name: str = "a"):
    """Adjoin a root of ``g`` (irreducible over K, degree >= 2).

    Returns (L, emb, root) where L is absolute, emb: K -> L and g(root) = 0.
    """
    g = g.monic()
    if g.degree < 1:
        raise ValueError("cannot adjoin a root of a constant")
    if g.degree == 1:
        return K, Embedding.identity(K), -g.coeffs[0]
    if K.is_qq:
        L = NumberField(g, name, check=True)
        return L, Embedding(QQ, L), L.gen
    alpha = K.gen
    for k in _shift_candidates():
        shifted = g.compose(UPoly(K, [-k * alpha, K.one]))  # g(X - k*alpha)
        N = norm_poly(shifted)
        if is_squarefree(N):
            break
    L = NumberField(N, name, check=False)
    gamma = L.gen
    # alpha in L: common root of m_alpha(Y) and g^{alpha->Y}(gamma - k Y)
    mY = K.minpoly.map_coeffs(L, L)
    Y = UPoly.x(L)
    G = UPoly(L, [])
    arg = UPoly(L, [gamma, L(-k)])
    for c in reversed(g.coeffs):
        cY = UPoly(QQ, c.coords).map_coeffs(L, L)
        G = G * arg + cY
    h = poly_gcd(mY, G)
    if h.degree != 1:
        raise ArithmeticError("primitive element construction failed")
    alpha_L = -h.coeffs[0]
    emb = Embedding(K, L, alpha_L)
    root = gamma - alpha_L * k
    return L, emb, root


def factor_over(g: UPoly) -> list[tuple[UPoly, int]]:
    """Monic irreducible factors of g over its coefficient field (Trager)."""
    K = g.field
    if K.is_qq:
        return factor_rational(g)
    out = []
    for sf, mult in squarefree_factor(g):
        if sf.degree == 1:
            out.append((sf, mult))
            continue
        alpha = K.gen
        for k in _shift_candidates():
            shifted = sf.compose(UPoly(K, [-k * alpha, K.one]))
            N = norm_poly(shifted)
            if is_squarefree(N):
                break
        facs = factor_rational(N)
        if len(facs) == 1:
            out.append((sf, mult))
            continue
        back = UPoly(K, [k * alpha, K.one])  # X + k*alpha
        for h, _ in facs:
            hK = h.map_coeffs(K, K).compose(back)
            f = poly_gcd(sf, hK)
            if f.degree > 0:
                out.append((f, mult))
    out.sort(key=lambda fm: (fm[0].degree, repr(fm[0].coeffs)))
    return out


def roots_in_field(g: UPoly) -> list:
    return [-f.coeffs[0] for f, _ in factor_over(g) if f.degree == 1]


def sqrt_in_field(c, field):
    """A square root of c in field, or None.  Deterministic choice of sign."""
    if not c:
        return field.zero
    c = field(c)
    if not field.is_qq and not c.is_rational():
        found, s = _sqrt_via_charpoly(c)
        if found:
            return s
    p = UPoly(field, [-c, field.zero, field.one])
    roots = roots_in_field(p)
    if not roots:
        return None
    return roots[0]


def _sqrt_via_charpoly(c):
    """Decide s^2 = c in K without gcds over K.

    Any s is a root of an irreducible factor h of charpoly_c(X^2) over Q.
    Reducing h modulo X^2 - c gives A + B X with A + B s = 0, so s = -A/B
    whenever B != 0.  Returns (decided, root or None).
    """
    K = c.field
    chi = c.charpoly()
    f = UPoly(QQ, [chi.coeffs[k // 2] if k % 2 == 0 else Fraction(0) for k in range(2 * chi.degree + 1)])
    undecided = False
    for h, _ in factor_rational(f):
        A, B = K.zero, K.zero
        cp = K.one
        for j in range(0, h.degree + 1, 2):
            A = A + cp * h.coeffs[j]
            if j + 1 <= h.degree:
                B = B + cp * h.coeffs[j + 1]
            cp = cp * c
        if not B:
            undecided = True
            continue
        s = -A / B
        if s * s == c:
            return True, s
    return (not undecided), None


def splitting_extension(K, polys: Sequence[UPoly], name: str = "a"):
    """Smallest tower (built greedily) over which every poly splits.

    Returns (L, emb K -> L).
    """
    L, emb = K, Embedding.identity(K)
    changed = True
    while changed:
        changed = False
        for p in polys:
            pL = emb.poly(p) if not emb.is_identity() else p.map_coeffs(L, L)
            for f, _ in factor_over(pL):
                if f.degree > 1:
                    L2, e2, _ = extend(L, f, name)
                    emb = emb.then(e2)
                    L = L2
                    changed = True
                    break
            if changed:
                break
    return L, emb
