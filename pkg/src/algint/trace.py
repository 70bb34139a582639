"""Maps between curves, pullback and trace (pushforward) of differentials.

A correspondence is handled when it is the graph of a map in one of its two
directions.  Pushforwards use the norm/trace of K(x1) over K(x2) computed with
power sums of the roots of N(X) - s M(X) over K(s), so no branch is ever
chosen.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import RationalFunction, RationalFunctionField, UPoly
from .curve import Curve, make_curve
from .differentials import Differential
from .function_field import FFElement, _eval_poly
from .places import divisor_of


class UnsupportedCorrespondence(ValueError):
    """A correspondence outside the graph-of-a-map cases handled here."""


class FibralComponent(ValueError):
    """A relation set that does not dominate both factors."""


@dataclass(eq=False)
class CurveMap:
    """source -> target given by target coordinates u (and v) as functions on source."""

    source: Curve
    target: Curve
    u: FFElement
    v: FFElement | None = None

    def __post_init__(self):
        if self.u.is_constant():
            raise FibralComponent("map with constant x-coordinate")
        if not self.target.is_line:
            if self.v is None:
                raise ValueError("a map to y^2 = P needs both coordinates")
            lhs = self.v * self.v
            rhs = _eval_poly(self.target.poly, self.u)
            if lhs != rhs:
                raise ValueError(
                    f"({self.u.to_str()}, {self.v.to_str()}) does not satisfy "
                    f"{self.target.equation()}"
                )

    @classmethod
    def identity(cls, curve: Curve) -> "CurveMap":
        v = None if curve.is_line else FFElement.y(curve)
        return cls(curve, curve, FFElement.x(curve), v)

    def is_identity(self) -> bool:
        return (
            self.source.same_model(self.target)
            and self.u == FFElement.x(self.source)
            and (self.v is None or self.v == FFElement.y(self.source))
        )

    @property
    def degree(self) -> int:
        poles = divisor_of(self.u).negative_part().degree
        per = 1 if self.target.is_line else 2
        return poles // per

    def pull_function(self, h: FFElement) -> FFElement:
        return h.compose(self.u, self.v)

    def pullback(self, w: Differential) -> Differential:
        """phi^* (h du) = h(U, V) U' dx."""
        if not w.curve.same_model(self.target):
            raise ValueError("form does not live on the map's target")
        if not w:
            return Differential.zero(self.source)
        return Differential(self.source, self.pull_function(w.f) * self.u.derivative())

    def x_only(self) -> bool:
        return not self.u.b

    def pushforward(self, w: Differential) -> Differential:
        """Trace phi_* w, defined when u depends on x only."""
        if not w.curve.same_model(self.source):
            raise ValueError("form does not live on the map's source")
        if not self.x_only():
            raise UnsupportedCorrespondence(
                "pushforward needs the target x-coordinate to be a function of the source x only"
            )
        T = self.target
        if not w:
            return Differential.zero(T)
        U = self.u.a
        g = w.f / FFElement(self.source, U.derivative())
        t0 = trace_down(_trace_to_x(g), U)
        if T.is_line:
            return Differential(T, FFElement(T, t0))
        t1 = trace_down(_trace_to_x(g * self.v), U)
        P2 = RationalFunction(T.poly)
        alpha = t0 / 2
        beta = t1 / (P2 * 2)
        return Differential(T, FFElement(T, alpha, beta))

    def base_change(self, emb) -> "CurveMap":
        if emb.is_identity():
            return self
        S = self.source.base_change(emb)
        T = self.target.base_change(emb)
        v = None if self.v is None else self.v.map_coeffs(emb, S)
        return CurveMap(S, T, self.u.map_coeffs(emb, S), v)

    def compose(self, other: "CurveMap") -> "CurveMap":
        """other o self (first self, then other)."""
        u = other.u.compose(self.u, self.v)
        v = None if other.v is None else other.v.compose(self.u, self.v)
        return CurveMap(self.source, other.target, u, v)

    def to_str(self) -> str:
        c = self.target
        parts = [f"{c.xname} = {self.u.to_str()}"]
        if self.v is not None:
            parts.append(f"{c.yname} = {self.v.to_str()}")
        return ", ".join(parts)

    def __repr__(self) -> str:
        return f"CurveMap({self.to_str()})"


def _trace_to_x(g: FFElement) -> RationalFunction:
    """Tr from the function field down to K(x)."""
    if g.curve.is_line:
        return g.a
    return g.a * 2


def trace_down(r: RationalFunction, U: RationalFunction) -> RationalFunction:
    """Tr_{K(x)/K(s)} r for s = U(x)."""
    K = r.field
    N, M = U.num, U.den
    n = max(N.degree, M.degree)
    if n < 1:
        raise FibralComponent("constant map")
    Ks = RationalFunctionField(K)
    s = Ks.gen()
    F = UPoly(Ks, [Ks(c) for c in N.coeffs]) - UPoly(Ks, [Ks(c) for c in M.coeffs]) * s
    F = F.monic()
    A = UPoly(Ks, [Ks(c) for c in r.num.coeffs])
    B = UPoly(Ks, [Ks(c) for c in r.den.coeffs])
    if B.degree > 0:
        g, sB, _ = B.xgcd(F)
        if g.degree != 0:
            raise ArithmeticError("denominator not invertible modulo the fiber polynomial")
        R = (A * sB) % F
    else:
        R = A * (Ks.one / B.coeffs[0]) % F if F.degree > 0 else A
    c = list(F.coeffs)  # monic, length n+1
    p = [Ks(n)]
    for k in range(1, n):
        acc = c[n - k] * k
        for i in range(1, k):
            acc = acc + c[n - i] * p[k - i]
        p.append(-acc)
    total = Ks.zero
    for k, coef in enumerate(R.coeffs):
        if coef:
            total = total + coef * p[k]
    return total


@dataclass(eq=False)
class Correspondence:
    """Z in left x right, presented as the graph of a map.

    direction "pullback": ``map`` goes right -> left (left coordinates are
    functions on the right curve); direction "pushforward": ``map`` goes
    left -> right.
    """

    left: Curve
    right: Curve
    map: CurveMap
    direction: str
    name: str = ""

    def __post_init__(self):
        if self.direction == "pullback":
            ok = self.map.source.same_model(self.right) and self.map.target.same_model(self.left)
        elif self.direction == "pushforward":
            ok = self.map.source.same_model(self.left) and self.map.target.same_model(self.right)
        else:
            raise ValueError(f"unknown direction {self.direction!r}")
        if not ok:
            raise ValueError("map does not connect the declared curves")

    @property
    def left_degree(self) -> int:
        """Degree of Z over the left factor."""
        return self.map.degree if self.direction == "pullback" else 1

    @property
    def right_degree(self) -> int:
        return 1 if self.direction == "pullback" else self.map.degree

    def trace_image(self, w: Differential) -> Differential:
        """pi_2* pi_1^* w for w on the left curve."""
        if self.direction == "pullback":
            return self.map.pullback(w)
        return self.map.pushforward(w)

    def reversed(self) -> "Correspondence":
        """The transposed correspondence (right x left)."""
        d = "pushforward" if self.direction == "pullback" else "pullback"
        return Correspondence(self.right, self.left, self.map, d, self.name)

    def base_change(self, emb) -> "Correspondence":
        if emb.is_identity():
            return self
        return Correspondence(
            self.left.base_change(emb), self.right.base_change(emb),
            self.map.base_change(emb), self.direction, self.name,
        )

    def describe(self) -> str:
        m = self.map
        return (f"{self.name or 'Z'}: {self.direction} along {m.source.equation()} -> "
                f"{m.target.equation()}, {m.to_str()}")


def trace_image(Z: Correspondence, w: Differential) -> Differential:
    return Z.trace_image(w)


def pullback(phi: CurveMap, w: Differential) -> Differential:
    return phi.pullback(w)


# elliptic quotients ----------------------------------------------------------------------


@dataclass
class QuotientSearch:
    maps: list
    complete: bool = False
    note: str = "budget-limited: only involutions x -> -x about the root centroid are searched"


def find_elliptic_quotients(c: Curve, degree_bound: int = 4) -> QuotientSearch:
    """Genus-one quotients of y^2 = P(x) reachable by the implemented symmetry search."""
    if c.is_line:
        return QuotientSearch([], False)
    if c.genus == 1:
        return QuotientSearch([(CurveMap.identity(c), c)], False)
    if degree_bound < 2:
        return QuotientSearch([], False)
    K = c.field
    P = c.poly
    n = P.degree
    shift = -P.coeffs[n - 1] / (P.lc * n)
    Ps = P.shift(shift)
    if any(Ps.coeffs[k] for k in range(1, n + 1, 2)):
        return QuotientSearch([], False)
    R = UPoly(K, [Ps.coeffs[k] for k in range(0, n + 1, 2)])
    g = c.genus
    x = FFElement.x(c)
    y = FFElement.y(c)
    xs = x - FFElement.const(c, shift)
    out = []
    # (x, y) -> (-x, y): u = x^2, v = y
    E1 = _model(R, K)
    if E1 is not None and E1.genus == 1:
        out.append((CurveMap(c, E1, xs * xs, y), E1))
    # (x, y) -> (-x, -y)
    if (g + 1) % 2 == 1:
        Rrev = R.reverse(g + 1)
        E2 = _model(Rrev, K)
        if E2 is not None and E2.genus == 1:
            out.append((CurveMap(c, E2, (xs * xs).inverse(), y / xs ** (g + 1)), E2))
    else:
        R2 = R * UPoly.x(K)
        E2 = _model(R2, K)
        if E2 is not None and E2.genus == 1:
            out.append((CurveMap(c, E2, xs * xs, xs * y), E2))
    return QuotientSearch(out, False)


def _model(R: UPoly, K):
    if R.degree < 3:
        return None
    try:
        return make_curve(R, K, "u", "v")
    except ValueError:
        return None


__all__ = [
    "CurveMap", "Correspondence", "UnsupportedCorrespondence", "FibralComponent",
    "trace_image", "pullback", "trace_down", "find_elliptic_quotients", "QuotientSearch",
]
