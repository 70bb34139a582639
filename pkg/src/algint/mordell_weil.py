"""Elliptic curves y^2 = x^3 + a x + b over Q: group law, torsion, kernel search.

``mw_kernel`` alternates a *day* step (search for relations among the given
points modulo torsion, by increasing sup-norm) with a *night* step (prove the
remaining directions independent by reducing modulo primes of good
reduction).  The budget counts group-law operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .arith import QQ, UPoly
from .arith.linalg import hermite_rows, integer_kernel, saturate


class UnsupportedBaseField(ValueError):
    """Mordell-Weil computations are only implemented over Q."""


class BudgetExhausted(RuntimeError):
    pass


class OpCounter:
    def __init__(self, limit: int = 10**6):
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExhausted(f"group-operation budget {self.limit} exhausted")


@dataclass(frozen=True)
class EllipticCurveQ:
    """Short Weierstrass model y^2 = x^3 + a x + b with integer a, b."""

    a: int
    b: int

    def __post_init__(self):
        if 4 * self.a**3 + 27 * self.b**2 == 0:
            raise ValueError("singular Weierstrass model")

    @property
    def disc(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def contains(self, x, y) -> bool:
        return y * y == x**3 + self.a * x + self.b

    def point(self, x, y) -> "ECPoint":
        x, y = Fraction(x), Fraction(y)
        if not self.contains(x, y):
            raise ValueError(f"({x}, {y}) is not on {self}")
        return ECPoint(self, x, y)

    def identity(self) -> "ECPoint":
        return ECPoint(self, None, None)

    def __str__(self) -> str:
        return f"y^2 = {UPoly(QQ, [self.b, self.a, 0, 1]).to_str('x')}"


@dataclass(frozen=True)
class ECPoint:
    curve: EllipticCurveQ
    x: Fraction | None
    y: Fraction | None

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "ECPoint":
        if self.is_identity:
            return self
        return ECPoint(self.curve, self.x, -self.y)

    def __add__(self, other: "ECPoint") -> "ECPoint":
        return ec_add(self, other)

    def __sub__(self, other: "ECPoint") -> "ECPoint":
        return ec_add(self, -other)

    def __rmul__(self, n: int) -> "ECPoint":
        return ec_mul(n, self)

    def __str__(self) -> str:
        return "O" if self.is_identity else f"({self.x}, {self.y})"

    def sort_key(self):
        return (0, 0, 0) if self.is_identity else (1, self.x, self.y)


def ec_add(P: ECPoint, Q: ECPoint, counter: OpCounter | None = None) -> ECPoint:
    """Chord-tangent addition."""
    if P.curve != Q.curve:
        raise ValueError("points on different curves")
    if counter is not None:
        counter.tick()
    if P.is_identity:
        return Q
    if Q.is_identity:
        return P
    E = P.curve
    if P.x == Q.x:
        if P.y != Q.y or P.y == 0:
            return E.identity()
        lam = (3 * P.x * P.x + E.a) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return ECPoint(E, x3, y3)


def ec_mul(n: int, P: ECPoint, counter: OpCounter | None = None) -> ECPoint:
    if n < 0:
        return ec_mul(-n, -P, counter)
    R = P.curve.identity()
    while n:
        if n & 1:
            R = ec_add(R, P, counter)
        n >>= 1
        if n:
            P = ec_add(P, P, counter)
    return R


def combination(points, coeffs, counter: OpCounter | None = None) -> ECPoint:
    E = points[0].curve
    R = E.identity()
    for c, P in zip(coeffs, points):
        if c:
            R = ec_add(R, ec_mul(c, P, counter), counter)
    return R


# torsion ---------------------------------------------------------------------------------


def _integer_roots_cubic(a: int, c: int) -> list[int]:
    """Integer x with x^3 + a x + c = 0."""
    poly = sympy.Poly([1, 0, a, c], sympy.Symbol("x"))
    return sorted(int(r) for r in sympy.roots(poly, filter="Z").keys())


def _order(P: ECPoint, bound: int = 12) -> int | None:
    Q = P
    for k in range(1, bound + 1):
        if Q.is_identity:
            return k
        if Q.x.denominator != 1:
            return None  # non-integral multiple: infinite order (Lutz-Nagell)
        Q = ec_add(Q, P)
    return None


def torsion_subgroup(E) -> list[ECPoint]:
    """All rational torsion points (identity first), by Lutz-Nagell and Mazur."""
    E = as_weierstrass(E)
    D = 4 * E.a**3 + 27 * E.b**2
    ys = {0}
    fac = sympy.factorint(abs(D))
    exps = [range(0, e // 2 + 1) for e in fac.values()]
    for combo in itertools.product(*exps):
        y = 1
        for pr, k in zip(fac.keys(), combo):
            y *= pr**k
        ys.add(y)
    out = [E.identity()]
    for y in sorted(ys):
        for x in _integer_roots_cubic(E.a, E.b - y * y):
            for yy in ({y, -y} if y else {0}):
                P = ECPoint(E, Fraction(x), Fraction(yy))
                if _order(P) is not None:
                    out.append(P)
    out.sort(key=lambda P: P.sort_key())
    return out


def torsion_structure(T: list[ECPoint]) -> tuple[int, ...]:
    """Invariant factors (n1, n2) with n1 | n2, (n,) when cyclic, () when trivial."""
    N = len(T)
    if N == 1:
        return ()
    exp = max(_order(P) for P in T)
    if N == exp:
        return (N,)
    return (N // exp, exp)


def as_weierstrass(E) -> EllipticCurveQ:
    if isinstance(E, EllipticCurveQ):
        return E
    from .curve import Curve

    if isinstance(E, Curve):
        return weierstrass_model(E)[0]
    raise TypeError(f"not an elliptic curve: {E!r}")


def weierstrass_model(curve):
    """Integral short model of y^2 = c3 x^3 + c2 x^2 + c1 x + c0 over Q.

    Returns (E, to_E) where to_E maps rational affine points (x, y) of the
    original model to points of E.
    """
    if not curve.field.is_qq:
        raise UnsupportedBaseField("Mordell-Weil data is only available over Q")
    P = curve.poly
    if P is None or P.degree != 3:
        raise UnsupportedBaseField("need a cubic model y^2 = P(x)")
    c0, c1, c2, c3 = (Fraction(c) for c in P.coeffs)
    # X = c3 x, Y = c3 y gives Y^2 = X^3 + c2 X^2 + c1 c3 X + c0 c3^2
    b2, b1, b0 = c2, c1 * c3, c0 * c3 * c3
    s = -b2 / 3
    # X = Z + s
    A = 3 * s * s + 2 * b2 * s + b1
    B = s**3 + b2 * s * s + b1 * s + b0
    d = 1
    while (A * d**4).denominator != 1 or (B * d**6).denominator != 1:
        d += 1
    Ai, Bi = int(A * d**4), int(B * d**6)
    E = EllipticCurveQ(Ai, Bi)

    def to_E(x, y) -> ECPoint:
        if x is None:
            return E.identity()
        X = c3 * Fraction(x) - s
        Y = c3 * Fraction(y)
        return E.point(X * d * d, Y * d**3)

    return E, to_E


# reduction modulo p ------------------------------------------------------------------------


class _ReducedCurve:
    def __init__(self, E: EllipticCurveQ, p: int):
        self.p = p
        self.a = E.a % p
        self.b = E.b % p
        sq = {}
        for t in range(p):
            sq.setdefault(t * t % p, []).append(t)
        pts = [None]
        for x in range(p):
            r = (x * x * x + self.a * x + self.b) % p
            for y in sq.get(r, []):
                pts.append((x, y))
        self.points = pts

    def add(self, P, Q):
        p = self.p
        if P is None:
            return Q
        if Q is None:
            return P
        if P[0] == Q[0]:
            if (P[1] + Q[1]) % p == 0:
                return None
            lam = (3 * P[0] * P[0] + self.a) * pow(2 * P[1], -1, p) % p
        else:
            lam = (Q[1] - P[1]) * pow(Q[0] - P[0], -1, p) % p
        x3 = (lam * lam - P[0] - Q[0]) % p
        return (x3, (lam * (P[0] - x3) - P[1]) % p)

    def mul(self, n: int, P):
        R = None
        if n < 0:
            n = -n
            P = None if P is None else (P[0], (-P[1]) % self.p)
        while n:
            if n & 1:
                R = self.add(R, P)
            n >>= 1
            if n:
                P = self.add(P, P)
        return R

    def reduce(self, P: ECPoint):
        if P.is_identity:
            return None
        p = self.p
        if P.x.denominator % p == 0:
            return None
        x = P.x.numerator * pow(P.x.denominator, -1, p) % p
        y = P.y.numerator * pow(P.y.denominator, -1, p) % p
        return (x, y)


def good_primes(E: EllipticCurveQ, start: int = 3):
    D = E.disc
    for p in sympy.primerange(start, 10**6):
        if D % p:
            yield p


# kernel computation ------------------------------------------------------------------------


@dataclass
class KernelResult:
    status: str                      # "COMPLETE" | "BUDGET_EXHAUSTED"
    kernel_basis: list[list[int]]
    proof_data: dict = field(default_factory=dict)
    ops_used: int = 0

    @property
    def complete(self) -> bool:
        return self.status == "COMPLETE"


def _torsion_coordinates(T: list[ECPoint]):
    """Generators with orders and a lookup table point -> coordinate vector."""
    struct = torsion_structure(T) or (1,)
    by_order = {}
    for P in T:
        by_order.setdefault(_order(P), []).append(P)
    exp = struct[-1]
    g2 = sorted(by_order[exp], key=lambda P: P.sort_key())[0]
    cyc = {}
    Q = T[0].curve.identity()
    for k in range(exp):
        cyc[Q] = k
        Q = ec_add(Q, g2)
    if len(struct) == 1:
        return [g2], [exp], {P: (k,) for P, k in cyc.items()}
    n1 = struct[0]
    g1 = next(P for P in sorted(T, key=lambda P: P.sort_key()) if P not in cyc and _order(P) == n1)
    table = {}
    A = T[0].curve.identity()
    for i in range(n1):
        for P, k in cyc.items():
            table[ec_add(A, P)] = (i, k)
        A = ec_add(A, g1)
    return [g1, g2], [n1, exp], table


def _night(points, r: int, T, counter: OpCounter, primes_tried: list, max_primes: int = 40, start: int = 3):
    """Try to show dim ker(F_l^n -> prod E(F_p)/(l E(F_p) + T)) = r for some l."""
    E = points[0].curve
    n = len(points)
    for ell in (2, 3, 5, 7):
        if ell**n > 5000:
            continue
        survivors = [v for v in itertools.product(range(ell), repeat=n) if any(v)]
        used = []
        for p in good_primes(E, start):
            if len(used) >= max_primes:
                break
            Ep = _ReducedCurve(E, p)
            counter.tick(len(Ep.points) * 4)
            lE = {Ep.mul(ell, Q) for Q in Ep.points}
            Tp = {Ep.reduce(P) for P in T}
            H = {Ep.add(A, B) for A in lE for B in Tp}
            red = [Ep.reduce(P) for P in points]
            keep = []
            for v in survivors:
                R = None
                for c, Q in zip(v, red):
                    if c:
                        R = Ep.add(R, Ep.mul(c, Q))
                counter.tick(n)
                if R in H:
                    keep.append(v)
            used.append(p)
            survivors = keep
            dim = _dim_from_count(len(survivors) + 1, ell)
            if dim is not None and dim <= r:
                primes_tried.extend(used)
                return {"ell": ell, "primes": used}
        primes_tried.extend(used)
    return None


def _dim_from_count(count: int, ell: int):
    d = 0
    while ell**d < count:
        d += 1
    return d if ell**d == count else None


def mw_kernel(points: list[ECPoint], budget: int = 10**6, prime_start: int = 3) -> KernelResult:
    """Generators of ker(Z^n -> E(Q), v -> sum v_i P_i).

    ``prime_start`` moves the sample of reduction primes used by the
    independence proof; the resulting lattice does not depend on it.
    """
    if not points:
        return KernelResult("COMPLETE", [], {"reason": "no points"})
    E = points[0].curve
    counter = OpCounter(budget)
    n = len(points)
    T = torsion_subgroup(E)
    Tset = set(T)
    lam: list[list[int]] = []      # relations modulo torsion found so far
    primes_tried: list[int] = []
    proof = None
    bound = 0
    try:
        while True:
            bound += 1
            # day: vectors of sup-norm exactly `bound`
            for v in itertools.product(range(-bound, bound + 1), repeat=n):
                if max(abs(c) for c in v) != bound:
                    continue
                first = next(c for c in v if c)
                if first < 0:
                    continue
                if lam and _in_q_span(lam, list(v)):
                    continue
                if combination(points, v, counter) in Tset:
                    lam.append(list(v))
            r = len(hermite_rows(lam)) if lam else 0
            if r == n:
                proof = {"night": "not needed: every point is torsion modulo the found relations"}
                break
            proof = _night(points, r, T, counter, primes_tried, start=prime_start)
            if proof is not None:
                break
    except BudgetExhausted:
        partial = _true_kernel(points, saturate(lam, n) if lam else [], T)
        return KernelResult(
            "BUDGET_EXHAUSTED", partial,
            {"relations_mod_torsion": lam, "primes": primes_tried}, counter.used,
        )
    M = saturate(lam, n) if lam else []
    kernel = _true_kernel(points, M, T)
    for v in kernel:
        if not combination(points, v).is_identity:
            raise ArithmeticError("kernel vector failed replay")
    proof = dict(proof or {})
    proof["torsion_order"] = len(T)
    proof["torsion_structure"] = list(torsion_structure(T))
    return KernelResult("COMPLETE", kernel, proof, counter.used)


def _in_q_span(rows, v) -> bool:
    from .arith.linalg import rank

    q = [[Fraction(c) for c in r] for r in rows]
    return rank(q + [[Fraction(c) for c in v]], QQ) == rank(q, QQ)


def _true_kernel(points, M: list[list[int]], T) -> list[list[int]]:
    """Kernel of M -> T, expressed in Z^n."""
    if not M:
        return []
    n = len(points)
    gens, orders, table = _torsion_coordinates(T)
    r = len(M)
    imgs = [table[combination(points, b)] for b in M]
    k = len(orders)
    mat = []
    for j in range(k):
        row = [imgs[i][j] for i in range(r)] + [orders[jj] if jj == j else 0 for jj in range(k)]
        mat.append(row)
    ker = integer_kernel(mat, r + k)
    out = []
    for w in ker:
        coeffs = w[:r]
        vec = [sum(coeffs[i] * M[i][c] for i in range(r)) for c in range(n)]
        if any(vec):
            out.append(vec)
    return hermite_rows(out)


__all__ = [
    "EllipticCurveQ", "ECPoint", "ec_add", "ec_mul", "torsion_subgroup", "torsion_structure",
    "mw_kernel", "KernelResult", "weierstrass_model", "UnsupportedBaseField",
]
