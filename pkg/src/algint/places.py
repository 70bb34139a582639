"""Places of supported curves, local parameters and local expansions.

Local parameter conventions (fixed, so series and residues are reproducible):

* line, finite point x = theta:            t = x - theta
* line, infinity:                           t = 1/x
* y^2 = P, unramified point (theta, s):     t = x - theta, y(0) = s
* y^2 = P, branch point (theta, 0):         t = y, x = theta + X(t^2)
* y^2 = P, deg P = 2g+1, infinity:          t = x^g / y   (x ~ t^-2)
* y^2 = P, deg P = 2g+2, infinities:        t = 1/x, y ~ +-sqrt(lc) x^(g+1)

A place whose center is not defined over the constant field K stands for
its whole Galois orbit: it records the irreducible factor q of the fiber and
computes in the residue field L = K(theta) (or K(theta, s)).
"""

from __future__ import annotations

from .arith import (
    Embedding,
    PrecisionExhausted,
    PuiseuxSeries,
    RationalFunction,
    UPoly,
    extend,
    factor_over,
    sqrt_in_field,
)
from .arith.series import EXACT
from .curve import Curve
from .function_field import FFElement

MAX_RELATIVE_PRECISION = 4096


class Place:
    """A place of ``curve`` (over its constant field K), possibly a Galois orbit.

    ``q`` is the monic irreducible polynomial of the x-coordinate (None at
    infinity).  ``branch`` is +1/-1 when the fiber splits into two places
    over the residue field, 0 otherwise.
    """

    __slots__ = ("curve", "q", "branch", "ramified", "L", "emb", "theta", "s", "_cache")

    def __init__(self, curve: Curve, q, branch: int, ramified: bool, L, emb, theta, s):
        self.curve = curve
        self.q = q
        self.branch = branch
        self.ramified = ramified
        self.L = L
        self.emb = emb
        self.theta = theta
        self.s = s
        self._cache = {}

    @property
    def at_infinity(self) -> bool:
        return self.q is None

    @property
    def degree(self) -> int:
        """Residue degree over the constant field."""
        return self.L.degree // self.curve.field.degree

    @property
    def e(self) -> int:
        """Ramification index of x at this place."""
        return 2 if self.ramified else 1

    def key(self) -> tuple:
        qk = None if self.q is None else self.q.coeffs
        return (self.curve.key(), qk, self.branch)

    def __eq__(self, other) -> bool:
        return isinstance(other, Place) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def sort_key(self) -> tuple:
        if self.q is None:
            return (1, 0, (), -self.branch)
        return (0, self.q.degree, tuple(str(c) for c in self.q.coeffs), -self.branch)

    def __lt__(self, other: "Place") -> bool:
        return self.sort_key() < other.sort_key()

    def label(self) -> str:
        c = self.curve
        if self.q is None:
            if c.is_line or c.odd:
                return "inf"
            return {1: "inf+", -1: "inf-", 0: "inf(pair)"}[self.branch]
        if self.q.degree == 1:
            xs = _elt_str(-self.q.coeffs[0])
        else:
            xs = f"root({self.q.to_str('X')})"
        if c.is_line:
            return f"({xs})"
        if self.ramified:
            return f"({xs}, 0)"
        if self.branch == 0:
            return f"({xs}, conj. pair)"
        if self.L.degree == c.field.degree:
            return f"({xs}, {_elt_str(self.s)})"
        ys = self.s.to_str() if hasattr(self.s, "to_str") else str(self.s)
        return f"({xs}, {ys})"

    def __repr__(self) -> str:
        return f"Place{self.label()}"

    # local coordinates --------------------------------------------------------------

    def poly_L(self) -> UPoly:
        """Defining polynomial P with coefficients mapped into the residue field."""
        if "P" not in self._cache:
            P = self.curve.poly
            self._cache["P"] = None if P is None else _map_poly(P, self.emb, self.L)
        return self._cache["P"]

    def coordinates(self, rel_prec: int):
        """(x(t), y(t)) with at least ``rel_prec`` correct terms each."""
        key = ("xy", rel_prec)
        if key in self._cache:
            return self._cache[key]
        out = _local_coordinates(self, rel_prec)
        self._cache[key] = out
        return out

    def x_valuation(self) -> int:
        if self.q is None:
            c = self.curve
            if c.is_line or not c.odd:
                return -1
            return -2
        return 0

    def y_valuation(self) -> int:
        c = self.curve
        if c.is_line:
            return 0
        if self.q is None:
            return -c.degree if c.odd else -(c.genus + 1)
        return 1 if self.ramified else 0

    def dx_valuation(self) -> int:
        """Order of dx at this place."""
        if self.q is None:
            return -3 if (not self.curve.is_line and self.curve.odd) else -2
        return 1 if self.ramified else 0


def _elt_str(c) -> str:
    return c.to_str() if hasattr(c, "to_str") else str(c)


def _canonical_sign(s):
    """Prefer the square root whose first nonzero rational coordinate is positive."""
    if s is None:
        return None
    coords = s.coords if hasattr(s, "coords") else (s,)
    for c in coords:
        if c:
            return s if c > 0 else -s
    return s


def _map_poly(P: UPoly, emb, L) -> UPoly:
    if emb.is_identity():
        return P
    return emb.poly(P)


# place enumeration -------------------------------------------------------------------


def places_above(curve: Curve, x0=None) -> list[Place]:
    """All places over x0: a constant, an irreducible polynomial, or None (infinity)."""
    K = curve.field
    if x0 is None or (isinstance(x0, str) and x0 in ("inf", "oo", "infinity")):
        return _places_at_infinity(curve)
    if isinstance(x0, UPoly):
        q = x0.map_coeffs(K, K).monic()
        facs = factor_over(q)
        if len(facs) != 1 or facs[0][1] != 1:
            out = []
            for f, _ in facs:
                out.extend(places_above(curve, f))
            return out
    else:
        q = UPoly(K, [-K(x0), K.one])
    return _places_over_q(curve, q)


def _places_over_q(curve: Curve, q: UPoly) -> list[Place]:
    key = ("places", q.coeffs)
    if key in curve._cache:
        return curve._cache[key]
    K = curve.field
    L, emb, theta = extend(K, q, "t")
    if curve.is_line:
        out = [Place(curve, q, 0, False, L, emb, theta, None)]
    else:
        PL = _map_poly(curve.poly, emb, L)
        v = PL(theta)
        if not v:
            out = [Place(curve, q, 0, True, L, emb, theta, L.zero)]
        else:
            s = _canonical_sign(sqrt_in_field(v, L))
            if s is not None:
                out = [
                    Place(curve, q, 1, False, L, emb, theta, s),
                    Place(curve, q, -1, False, L, emb, theta, -s),
                ]
            else:
                L2, e2, s = extend(L, UPoly(L, [-v, L.zero, L.one]), "t")
                out = [Place(curve, q, 0, False, L2, emb.then(e2), e2(theta), s)]
    curve._cache[key] = out
    return out


def _places_at_infinity(curve: Curve) -> list[Place]:
    key = ("places", None)
    if key in curve._cache:
        return curve._cache[key]
    K = curve.field
    ident = Embedding.identity(K)
    if curve.is_line:
        out = [Place(curve, None, 0, False, K, ident, None, None)]
    elif curve.odd:
        out = [Place(curve, None, 0, True, K, ident, None, None)]
    else:
        lc = curve.poly.lc
        r = _canonical_sign(sqrt_in_field(lc, K))
        if r is not None:
            out = [
                Place(curve, None, 1, False, K, ident, None, r),
                Place(curve, None, -1, False, K, ident, None, -r),
            ]
        else:
            L, emb, r = extend(K, UPoly(K, [-lc, K.zero, K.one]), "t")
            out = [Place(curve, None, 0, False, L, emb, None, r)]
    curve._cache[key] = out
    return out


def branch_places(curve: Curve) -> list[Place]:
    """Ramified places of x (finite branch points and, for odd models, infinity)."""
    if curve.is_line:
        return []
    out = []
    for f, _ in factor_over(curve.poly):
        out.extend(_places_over_q(curve, f))
    if curve.odd:
        out.extend(_places_at_infinity(curve))
    return out


def places_over_poly(curve: Curve, poly: UPoly) -> list[Place]:
    """Places over every root of ``poly`` (grouped into Galois orbits)."""
    out = []
    if poly.degree < 1:
        return out
    for f, _ in factor_over(poly.map_coeffs(curve.field, curve.field)):
        out.extend(_places_over_q(curve, f))
    return out


# local expansions ----------------------------------------------------------------------


def _local_coordinates(p: Place, W: int):
    c = p.curve
    L = p.L
    if c.is_line:
        if p.q is None:
            return PuiseuxSeries.monomial(L, -1), None
        return PuiseuxSeries(L, 0, [p.theta, L.one]), None
    P = p.poly_L()
    if p.q is not None and not p.ramified:
        xt = PuiseuxSeries(L, 0, [p.theta, L.one])
        shifted = P.compose(UPoly(L, [p.theta, L.one]))
        yt = PuiseuxSeries(L, 0, shifted.coeffs).sqrt(p.s, W)
        return xt, yt
    if p.q is not None:
        # P(theta + X) = t^2, solved by fixed-point iteration on X
        pk = P.compose(UPoly(L, [p.theta, L.one])).coeffs
        p1inv = L.one / pk[1]
        t2 = PuiseuxSeries.monomial(L, 2)
        X = PuiseuxSeries(L, 0, [], W + 2)
        for _ in range(W // 2 + 2):
            acc = t2
            Xk = X * X
            for k in range(2, len(pk)):
                if pk[k]:
                    acc = acc - Xk * pk[k]
                Xk = (Xk * X).truncate(W + 2)
            X = (acc * p1inv).truncate(W + 2)
        xt = X + p.theta
        return xt, PuiseuxSeries.monomial(L, 1)
    g = c.genus
    R = P.reverse(c.degree)  # R(w) = w^deg P(1/w)
    if c.odd:
        # t = x^g / y; w = 1/x satisfies w = t^2 R(w)
        t2 = PuiseuxSeries.monomial(L, 2)
        w = PuiseuxSeries(L, 0, [], W + 2)
        for _ in range(W // 2 + 2):
            w = (t2 * R(w)).truncate(W + 2)
        xt = w.inverse(W)
        yt = (xt ** g) * PuiseuxSeries.monomial(L, -1)
        return xt, yt
    xt = PuiseuxSeries.monomial(L, -1)
    Y = PuiseuxSeries(L, 0, R.coeffs).sqrt(p.s, W)
    yt = Y * PuiseuxSeries.monomial(L, -(g + 1))
    return xt, yt


def _rf_series(r: RationalFunction, p: Place, xt: PuiseuxSeries, W: int) -> PuiseuxSeries:
    num = _map_poly(r.num, p.emb, p.L)
    den = _map_poly(r.den, p.emb, p.L)
    n = num(xt)
    if den.degree == 0:
        return n * (p.L.one / den.coeffs[0])
    d = den(xt)
    if not d.coeffs:
        raise PrecisionExhausted("denominator vanishes to working precision")
    return n * d.inverse(W)


def _expand_at(f: FFElement, p: Place, W: int) -> PuiseuxSeries:
    xt, yt = p.coordinates(W)
    s = _rf_series(f.a, p, xt, W)
    if f.b:
        s = s + _rf_series(f.b, p, xt, W) * yt
    return s


def as_ff(curve: Curve, f) -> FFElement:
    if isinstance(f, FFElement):
        return f
    if isinstance(f, RationalFunction):
        return FFElement(curve, f)
    if isinstance(f, UPoly):
        return FFElement(curve, RationalFunction(f))
    return FFElement.const(curve, f)


def expand_to(f, p: Place, abs_prec: int) -> PuiseuxSeries:
    """Local series of f at p, exact for every exponent below ``abs_prec``."""
    f = as_ff(p.curve, f)
    if not f:
        return PuiseuxSeries(p.L, 0, [], EXACT)
    W = max(abs_prec, 0) + 6
    while True:
        try:
            s = _expand_at(f, p, W)
            if s.prec >= abs_prec and (s.coeffs or s.prec >= EXACT or s.prec > abs_prec + 64):
                return s
            if s.prec >= abs_prec and not s.coeffs:
                return s
        except PrecisionExhausted:
            pass
        W *= 2
        if W > MAX_RELATIVE_PRECISION:
            raise PrecisionExhausted(f"could not expand {f!r} at {p.label()} to t^{abs_prec}")


def local_expand(f, p: Place, n_terms: int) -> PuiseuxSeries:
    """Series of f at p in the documented local parameter with ``n_terms``
    correct terms starting at its (exact) valuation."""
    f = as_ff(p.curve, f)
    if not f:
        raise PrecisionExhausted("the zero function has no leading term")
    W = n_terms + 6
    while True:
        try:
            s = _expand_at(f, p, W)
            if s.coeffs and (s.prec >= EXACT or s.prec - s.val >= n_terms):
                return s.truncate(s.val + n_terms)
        except PrecisionExhausted:
            pass
        W *= 2
        if W > MAX_RELATIVE_PRECISION:
            raise PrecisionExhausted(f"could not certify {n_terms} terms of {f!r} at {p.label()}")


def valuation(f, p: Place) -> int:
    return local_expand(f, p, 1).val


# divisors of functions -------------------------------------------------------------------


def candidate_places(f: FFElement) -> list[Place]:
    """Places where f can have a zero or a pole."""
    c = f.curve
    if c.is_line:
        polys = [f.a.num, f.a.den]
    else:
        den = f.a.den * f.b.den // _gcd(f.a.den, f.b.den)
        A = f.a.num * (den // f.a.den)
        B = f.b.num * (den // f.b.den)
        polys = [den, A * A - B * B * c.poly]
    seen = {}
    for poly in polys:
        for pl in places_over_poly(c, poly):
            seen[pl.key()] = pl
    for pl in _places_at_infinity(c):
        seen[pl.key()] = pl
    return sorted(seen.values())


def _gcd(a: UPoly, b: UPoly) -> UPoly:
    return a.gcd(b)


def divisor_of(f) -> "Divisor":
    from .divisor import Divisor

    if not f:
        raise ValueError("the zero function has no divisor")
    out = {}
    for pl in candidate_places(f):
        v = valuation(f, pl)
        if v:
            out[pl] = v
    return Divisor(out)


def canonical_divisor(curve: Curve) -> "Divisor":
    """div(dx): order +1 at finite branch points, negative at infinity."""
    from .divisor import Divisor

    out = {}
    for pl in branch_places(curve) + _places_at_infinity(curve):
        v = pl.dx_valuation()
        if v:
            out[pl] = v
    return Divisor(out)


def infinite_places(curve: Curve) -> list[Place]:
    return list(_places_at_infinity(curve))


__all__ = [
    "Place", "places_above", "branch_places", "places_over_poly", "infinite_places",
    "local_expand", "expand_to", "valuation", "divisor_of", "canonical_divisor",
    "candidate_places",
]
