"""High-precision numeric checks: path integrals, residues by contour, periods, LLL.

Nothing here is authoritative; the symbolic pipeline only uses these values
to cross-check its own conclusions.

Branch tracking: on a short step from x_a (with known y_a) the branch is
y(x) = y_a * sqrt(P(x) / P(x_a)) with the principal square root.  Steps are
kept below 0.5 / deg P times the distance to the nearest root of P, so
|ratio - 1| < e^0.5 - 1 < 1 and the choice is unambiguous.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import mpmath
from mpmath import mp

from .arith import AlgebraicNumber, UPoly
from .arith.numberfield import numeric_value


class PathTooCloseToSingularity(ValueError):
    pass


class PrecisionTooLow(ValueError):
    pass


# numeric evaluation of exact objects ----------------------------------------------------------


def num(c, dps: int):
    return numeric_value(c, dps)


def poly_coeffs(p: UPoly, dps: int) -> list:
    out = []
    for c in p.coeffs:
        v = mpmath.mpc(num(c, dps))
        out.append(v.real if v.imag == 0 else v)  # real * complex is much cheaper
    return out


def horner(cs: list, x):
    acc = mpmath.mpc(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def eval_ratfunc(r, x, dps: int | None = None):
    dps = dps or mp.dps
    return horner(poly_coeffs(r.num, dps), x) / horner(poly_coeffs(r.den, dps), x)


def poly_roots(p: UPoly, dps: int) -> list:
    if p.degree < 1:
        return []
    with mp.workdps(dps):  # results keep this precision whatever the caller's context
        cs = [num(c, dps) for c in reversed(p.coeffs)]
        if p.degree == 1:
            return [mpmath.mpc(-cs[1] / cs[0])]
        rs = mpmath.polyroots(cs, maxsteps=500, extraprec=3 * dps + 80)
        return [mpmath.mpc(r) for r in rs]


class NumericFunction:
    """f = A/Da + (B/Db) y compiled to complex coefficient lists."""

    def __init__(self, f, dps: int):
        self.an = poly_coeffs(f.a.num, dps)
        self.ad = poly_coeffs(f.a.den, dps)
        self.has_b = bool(f.b)
        self.bn = poly_coeffs(f.b.num, dps) if self.has_b else []
        self.bd = poly_coeffs(f.b.den, dps) if self.has_b else []

    def __call__(self, x, y=None):
        v = horner(self.an, x) / horner(self.ad, x)
        if self.has_b:
            v += horner(self.bn, x) / horner(self.bd, x) * y
        return v


class NumericCurve:
    def __init__(self, curve, dps: int):
        self.curve = curve
        self.dps = dps
        if curve.is_line:
            self.P = None
            self.roots = []
            self.deg = 1
        else:
            self.P = poly_coeffs(curve.poly, dps)
            self.roots = poly_roots(curve.poly, dps)
            self.deg = curve.poly.degree

    def Pval(self, x):
        return horner(self.P, x)

    def y_near(self, x, target):
        """The square root of P(x) closest to ``target``."""
        r = mpmath.sqrt(self.Pval(x))
        return r if abs(r - target) <= abs(r + target) else -r


# paths ---------------------------------------------------------------------------------------


@dataclass
class IntegrationPath:
    """Piecewise path: ("seg", a, b) or ("arc", center, radius, turn0, turn1).

    Arc angles are kept in turns so that 2*pi enters at working precision.

    ``y0`` is the y-value at the start (ignored on the line).
    """

    pieces: list
    y0: object = None
    closed: bool = False
    clearance: float = 1e-8

    @classmethod
    def polyline(cls, points, y0=None, closed=False) -> "IntegrationPath":
        pts = [mpmath.mpc(p) for p in points]
        pieces = [("seg", pts[i], pts[i + 1]) for i in range(len(pts) - 1)]
        return cls(pieces, y0, closed)

    @classmethod
    def circle(cls, center, radius, turns: int = 1, y0=None, clockwise: bool = False) -> "IntegrationPath":
        c = mpmath.mpc(center)
        r = mpmath.mpf(radius)
        sign = -1 if clockwise else 1
        pieces = [("arc", c, r, sign * k, sign * (k + 1)) for k in range(turns)]
        return cls(pieces, y0, True)

    @property
    def start(self):
        return _z(self.pieces[0], 0)

    @property
    def end(self):
        return _z(self.pieces[-1], 1)


def _z(piece, tau):
    if piece[0] == "seg":
        return piece[1] + (piece[2] - piece[1]) * tau
    _, c, r, t0, t1 = piece
    return c + r * mpmath.expjpi(2 * (t0 + (t1 - t0) * tau))


def _dz(piece, tau):
    if piece[0] == "seg":
        return piece[2] - piece[1]
    _, c, r, t0, t1 = piece
    return r * 2j * mp.pi * (t1 - t0) * mpmath.expjpi(2 * (t0 + (t1 - t0) * tau))


def _dist(z, pts):
    return min((abs(z - p) for p in pts), default=mpmath.mpf("inf"))


def form_poles(w, dps: int) -> list:
    out = []
    for poly in (w.f.a.den, w.f.b.den):
        out.extend(poly_roots(poly, dps))
    return out


def numeric_integral(w, path: IntegrationPath, digits: int = 50):
    """Integral of the differential w along ``path``."""
    with mp.workdps(digits + 15):
        fn = NumericFunction(w.f, digits + 15)
        total, _ = integrate_along(w.curve, fn, form_poles(w, digits + 15), path, digits)
        return total


def integrate_along(curve, fn, poles, path: IntegrationPath, digits: int = 50):
    """Integral of fn(x, y) dx along ``path``; returns (value, y at the end)."""
    with mp.workdps(digits + 15):
        nc = NumericCurve(curve, digits + 15)
        sing = list(nc.roots) + list(poles)
        y = None
        if not curve.is_line:
            y = mpmath.mpc(path.y0) if path.y0 is not None else nc.y_near(path.start, 1)
        total = mpmath.mpc(0)
        for piece in path.pieces:
            val, y = _integrate_piece(piece, fn, nc, y, sing, path.clearance)
            total += val
        return total, y


def _integrate_piece(piece, fn, nc, y, sing, clearance):
    total = mpmath.mpc(0)
    tau = mpmath.mpf(0)
    end = _z(piece, 1)
    end_singular = piece[0] == "seg" and _dist(end, sing) < mpmath.mpf(10) ** (-(mp.dps // 2))
    others = [s for s in sing if abs(s - end) > mpmath.mpf(10) ** (-(mp.dps // 2))]
    steps = 0
    while tau < 1:
        za = _z(piece, tau)
        d = _dist(za, sing)
        if end_singular and abs(za - end) <= mpmath.mpf(0.25) * _dist(end, others) / nc.deg:
            val, y = _last_step(piece, tau, fn, nc, y)
            return total + val, y
        if d < clearance:
            raise PathTooCloseToSingularity(f"path passes within {mpmath.nstr(d, 5)} of a singular point")
        speed = abs(_dz(piece, tau))
        h = mpmath.mpf(0.5) * d / nc.deg
        if end_singular:
            h = min(h, mpmath.mpf(0.5) * abs(za - end))
        tb = min(mpmath.mpf(1), tau + h / speed)
        val, y = _sub_integral(piece, tau, tb, fn, nc, y)
        total += val
        tau = tb
        steps += 1
        if steps > 20000:
            raise PathTooCloseToSingularity("path subdivision did not terminate")
    return total, y


def _branch(nc, za, ya):
    if nc.P is None:
        return None
    Pa = nc.Pval(za)
    return lambda z: ya * mpmath.sqrt(nc.Pval(z) / Pa)


def _sub_integral(piece, t0, t1, fn, nc, ya):
    za = _z(piece, t0)
    yb_fn = _branch(nc, za, ya)

    def integrand(t):
        z = _z(piece, t)
        yv = yb_fn(z) if yb_fn else None
        return fn(z, yv) * _dz(piece, t)

    val = mpmath.quad(integrand, [t0, t1], method="gauss-legendre")
    yb = yb_fn(_z(piece, t1)) if yb_fn else None
    return val, yb


def _last_step(piece, t0, fn, nc, ya):
    """Final stretch of a segment ending at a branch point.

    With tau = 1 - (1 - t0) s^2 the square-root singularity becomes analytic
    in s, so Gauss-Legendre converges at full precision; z is formed from the
    end point to avoid cancellation.
    """
    za = _z(piece, t0)
    end = _z(piece, 1)
    span = end - za
    yb_fn = _branch(nc, za, ya)

    def integrand(sv):
        z = end - span * sv * sv
        yv = yb_fn(z) if yb_fn else None
        return fn(z, yv) * span * 2 * sv

    val = mpmath.quad(integrand, [0, 1], method="gauss-legendre")
    yb = yb_fn(end) if yb_fn else None
    return val, yb


# residues by contour integration ------------------------------------------------------------------


def compatible_embeddings(place, dps: int):
    """Numeric evaluation maps of the residue field, one per conjugate place.

    Only embeddings restricting to the chosen embedding of the constant
    field are kept, so the values are consistent with the curve's numeric
    coefficients.
    """
    L = place.L
    K = place.curve.field
    if L.is_qq:
        return [lambda c: mpmath.mpc(num(c, dps))]
    roots = poly_roots(L.minpoly, dps)
    out = []
    kgen = None if K.is_qq else num(K.gen, dps)
    kimg = None if K.is_qq else place.emb(K.gen)
    for r in roots:
        ev = _evaluator(L, r)
        if kimg is not None and abs(ev(kimg) - kgen) > mpmath.mpf(10) ** (-(dps // 2)):
            continue
        out.append(ev)
    return out


def _evaluator(L, root):
    def ev(c):
        if isinstance(c, AlgebraicNumber):
            acc = mpmath.mpc(0)
            for co in reversed(c.coords):
                acc = acc * root + mpmath.mpf(co.numerator) / co.denominator
            return acc
        return mpmath.mpc(mpmath.mpf(c.numerator) / c.denominator) if hasattr(c, "numerator") else mpmath.mpc(c)

    return ev


def contour_residue(w, place, ev, digits: int = 50):
    """(1/2 pi i) times the integral of w around ``place`` (numeric embedding ``ev``)."""
    with mp.workdps(digits + 15):
        curve = w.curve
        nc = NumericCurve(curve, digits + 15)
        sing = list(nc.roots) + form_poles(w, digits + 15)
        if place.at_infinity:
            R = 2 * max([abs(s) for s in sing] + [mpmath.mpf(1)]) + 1
            turns = 2 if place.ramified else 1
            y0 = None
            if not curve.is_line:
                x0 = mpmath.mpc(R)
                if place.ramified:
                    y0 = nc.y_near(x0, 1)
                else:
                    g = curve.genus
                    y0 = nc.y_near(x0, ev(place.s) * x0 ** (g + 1))
            path = IntegrationPath.circle(0, R, turns, y0, clockwise=True)
        else:
            th = ev(place.theta)
            others = [s for s in sing if abs(s - th) > mpmath.mpf(10) ** (-(digits // 2))]
            r = mpmath.mpf(0.3) * _dist(th, others) if others else mpmath.mpf(1)
            turns = 2 if place.ramified else 1
            y0 = None
            if not curve.is_line:
                x0 = th + r
                y0 = nc.y_near(x0, ev(place.s)) if not place.ramified else nc.y_near(x0, 1)
            path = IntegrationPath.circle(th, r, turns, y0)
        val = numeric_integral(w, path, digits)
        return val / (2j * mp.pi)


# periods ---------------------------------------------------------------------------------------


def _seg_dist(p, a, b):
    d = b - a
    t = ((p - a) * mpmath.conj(d)).real / abs(d) ** 2
    t = min(max(t, 0), 1)
    return abs(p - (a + d * t))


def cycle_paths(curve, avoid=(), digits: int = 50) -> list[IntegrationPath]:
    """Closed loops around consecutive pairs of finite branch points."""
    if curve.is_line:
        return []
    with mp.workdps(digits + 15):
        nc = NumericCurve(curve, digits + 15)
        roots = sorted(nc.roots, key=lambda z: (float(z.real), float(z.imag)))
        out = []
        for i in range(len(roots) - 1):
            a, b = roots[i], roots[i + 1]
            tiny = mpmath.mpf(10) ** (-(digits // 2))
            others = [r for r in list(roots) + list(avoid) if abs(r - a) > tiny and abs(r - b) > tiny]
            h = abs(b - a) / 2
            gap = min([_seg_dist(o, a, b) for o in others] + [h])
            r = gap * mpmath.mpf(0.4)
            mid = (a + b) / 2
            u = (b - a) / abs(b - a)
            n = 64
            pts = []
            for k in range(n + 1):
                t = 2 * mp.pi * k / n
                pts.append(mid + u * ((h + r) * mpmath.cos(t) + 1j * r * mpmath.sin(t)))
            y0 = nc.y_near(pts[0], 1)
            out.append(IntegrationPath.polyline(pts, y0, closed=True))
        return out


def periods(w, digits: int = 50) -> list:
    with mp.workdps(digits + 15):
        poles = form_poles(w, digits + 15)
    return [numeric_integral(w, c, digits) for c in cycle_paths(w.curve, poles, digits)]


# integer relations ---------------------------------------------------------------------------------


def lll(basis: list[list[int]], delta=None) -> list[list[int]]:
    """Textbook LLL over the integers with exact rational Gram-Schmidt."""
    from fractions import Fraction

    delta = delta or Fraction(3, 4)
    b = [list(map(int, v)) for v in basis]
    n = len(b)

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gso():
        bs, mu, B = [], [[Fraction(0)] * n for _ in range(n)], []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bs[j])) / B[j] if B[j] else Fraction(0)
                v = [vi - mu[i][j] * wj for vi, wj in zip(v, bs[j])]
            bs.append(v)
            B.append(dot(v, v))
        return bs, mu, B

    bs, mu, B = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                bs, mu, B = gso()
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            bs, mu, B = gso()
            k = max(k - 1, 1)
    return b


def integer_relation(values, digits: int = 50, height_bound: int = 10**3):
    """Candidate integer vector v with |sum v_i values_i| tiny and max|v_i| <= height_bound.

    ``values`` may hold complex numbers or equal-length sequences of them
    (a relation must then hold componentwise).
    """
    n = len(values)
    if n < 2:
        raise ValueError("integer_relation needs at least two values")
    need = 4 * math.log10(max(height_bound, 2)) * n
    if digits < need:
        raise PrecisionTooLow(f"{digits} digits < {need:.1f} needed for height {height_bound}, n={n}")
    with mp.workdps(digits + 10):
        comps = []
        for v in values:
            seq = list(v) if isinstance(v, (list, tuple)) else [v]
            row = []
            for c in seq:
                c = mpmath.mpc(c)
                row.extend([c.real, c.imag])
            comps.append(row)
        width = len(comps[0])
        scale = mpmath.mpf(10) ** (digits - 5)
        basis = []
        for i in range(n):
            row = [1 if j == i else 0 for j in range(n)]
            row += [int(mpmath.nint(scale * comps[i][j])) for j in range(width)]
            basis.append(row)
        red = lll(basis)
        tol = mpmath.mpf(10) ** (-(digits // 2))
        for cand in red:
            v = cand[:n]
            if not any(v) or max(abs(x) for x in v) > height_bound:
                continue
            res = max(abs(sum(v[i] * comps[i][j] for i in range(n))) for j in range(width))
            if res < tol:
                first = next(x for x in v if x)
                return [-x for x in v] if first < 0 else v
        return None


# random paths for certificate checks ------------------------------------------------------------------


def random_segment(curve, avoid, rng: random.Random, digits: int = 50, length: float = 0.6):
    """A short straight path kept away from roots of P and the given points."""
    with mp.workdps(digits + 15):
        nc = NumericCurve(curve, digits + 15)
        bad = list(nc.roots) + list(avoid)
        for _ in range(500):
            a = mpmath.mpc(rng.uniform(-2, 2), rng.uniform(-2, 2))
            ang = rng.uniform(0, 2 * math.pi)
            b = a + length * mpmath.expj(ang)
            if min([_seg_dist(p, a, b) for p in bad] + [mpmath.mpf(10)]) > 0.3:
                y0 = None if curve.is_line else nc.y_near(a, 1)
                return IntegrationPath.polyline([a, b], y0)
    raise PathTooCloseToSingularity("could not place a random path")


# cross-checks of verdicts -----------------------------------------------------------------------


class _NumFF:
    """Numeric value and x-derivative (along the curve) of an element A + B y."""

    def __init__(self, f, nc: NumericCurve, dps: int):
        self.nc = nc
        self.A = (poly_coeffs(f.a.num, dps), poly_coeffs(f.a.den, dps))
        self.B = (poly_coeffs(f.b.num, dps), poly_coeffs(f.b.den, dps)) if f.b else None
        if nc.P is not None:
            self.dP = [c * k for k, c in enumerate(nc.P)][1:]

    @staticmethod
    def _rf(pair, x):
        return horner(pair[0], x) / horner(pair[1], x)

    def value(self, x, y):
        v = self._rf(self.A, x)
        if self.B is not None:
            v += self._rf(self.B, x) * y
        return v

    def dvalue(self, x, y):
        d = mpmath.diff(lambda z: self._rf(self.A, z), x)
        if self.B is not None:
            d += mpmath.diff(lambda z: self._rf(self.B, z), x) * y
            d += self._rf(self.B, x) * horner(self.dP, x) / (2 * y)
        return d


def _term_integrand(term, nc0: NumericCurve, dps: int):
    """Numeric value per dx of a certificate term, computed from its inputs."""
    if term.kind == "dlog":
        f = _NumFF(term.function, nc0, dps)
        return lambda x, y: f.dvalue(x, y) / f.value(x, y)
    Z = term.corr
    src = term.source
    fi = NumericFunction(src.f, dps)
    phi = Z.map
    if Z.direction == "pullback":
        U = _NumFF(phi.u, nc0, dps)
        V = _NumFF(phi.v, nc0, dps) if phi.v is not None else None

        def pulled(x, y):
            u = U.value(x, y)
            v = V.value(x, y) if V is not None else None
            return fi(u, v) * U.dvalue(x, y)

        return pulled
    nci = NumericCurve(src.curve, dps)
    N = poly_coeffs(phi.u.a.num, dps)
    M = poly_coeffs(phi.u.a.den, dps)
    n = max(len(N), len(M))
    N += [mpmath.mpc(0)] * (n - len(N))
    M += [mpmath.mpc(0)] * (n - len(M))
    Vi = _NumFF(phi.v, nci, dps) if phi.v is not None else None

    def Ufun(z):
        return horner(N, z) / horner(M, z)

    def pushed(x, y):
        cs = [N[k] - x * M[k] for k in range(n)]
        while len(cs) > 1 and abs(cs[-1]) < mpmath.mpf(10) ** (-dps):
            cs.pop()
        roots = mpmath.polyroots(list(reversed(cs)), maxsteps=200, extraprec=2 * dps) if len(cs) > 2 else [-cs[0] / cs[1]]
        total = mpmath.mpc(0)
        for xi in roots:
            du = mpmath.diff(Ufun, xi)
            if nci.P is None:
                total += fi(xi) / du
                continue
            yi = mpmath.sqrt(nci.Pval(xi))
            for sgn in (1, -1):
                if Vi is None or y is None or abs(Vi.value(xi, sgn * yi) - y) < mpmath.mpf(10) ** (-(dps // 2)) * (1 + abs(y)):
                    total += fi(xi, sgn * yi) / du
        return total

    return pushed


def check_certificate(cert, trials: int = 3, digits: int = 50, seed: int = 0) -> dict:
    """Residual of w0 - sum c_i T_i - d gamma integrated along random segments.

    Every term is evaluated from its own inputs (allowed form, map, log
    argument); the symbolic trace-images are not used.
    """
    dps = digits + 15
    rng = random.Random(seed)
    with mp.workdps(dps):
        X0 = cert.target.curve
        nc = NumericCurve(X0, dps)
        w0 = NumericFunction(cert.target.f, dps)
        parts = [(num(t.coefficient, dps), _term_integrand(t, nc, dps)) for t in cert.terms]
        avoid = form_poles(cert.target, dps)
        for t in cert.terms:
            avoid += form_poles(t.form, dps)
            if t.kind == "dlog":
                avoid += poly_roots(t.function.norm().num, dps) + poly_roots(t.function.a.den, dps)
                if t.function.b:
                    avoid += poly_roots(t.function.b.den, dps)
        g = cert.gamma
        G = _NumFF(g, nc, dps)
        avoid += poly_roots(g.a.den, dps) + (poly_roots(g.b.den, dps) if g.b else [])

        def h(x, y):
            v = w0(x, y)
            for c, fn in parts:
                v -= c * fn(x, y)
            return v

        residuals = []
        for _ in range(trials):
            path = random_segment(X0, avoid, rng, digits)
            val, y1 = integrate_along(X0, h, avoid, path, digits)
            y0 = path.y0
            val -= G.value(path.end, y1) - G.value(path.start, y0)
            residuals.append(abs(val))
        worst = max(residuals) if residuals else mpmath.mpf(0)
        tol = mpmath.mpf(10) ** (-(digits // 2))
        return {
            "kind": "certificate",
            "ok": bool(worst < tol),
            "paths": trials,
            "digits": digits,
            "max_residual": mpmath.nstr(worst, 3),
        }


def _period_vector(w, cycles, places_ev, digits):
    dps = digits + 15
    vec = [numeric_integral(w, c, digits) for c in cycles]
    res = w.residue_divisor() if w else {}
    for p, ev in places_ev:
        r = res.get(p)
        vec.append(2j * mp.pi * ev(r) if r else mpmath.mpc(0))
    return vec


def check_refutation(target, generators, logs: bool, digits: int = 50, height: int = 10**3) -> dict:
    """Look for an integer relation between the periods of the target and of the generators.

    Periods are taken over loops around pairs of branch points and around
    every pole.  A relation involving the target would suggest a missed YES.
    """
    forms = [target] + list(generators)
    n = len(forms) + 1
    with mp.workdps(digits + 15):
        poles = []
        for w in forms:
            poles += form_poles(w, digits + 15)
        places = sorted({p.key(): p for w in forms if w for p in w.pole_divisor().support}.values())
        places_ev = [(p, ev) for p in places for ev in compatible_embeddings(p, digits + 15)]
    n_loops_pl = len(places_ev)
    if logs:
        n += n_loops_pl
    need = math.ceil(4 * math.log10(height) * n) + 2
    d = max(digits, need)
    with mp.workdps(d + 15):
        cycles = cycle_paths(target.curve, poles, d)
        places_ev = [(p, ev) for p in places for ev in compatible_embeddings(p, d + 15)]
        vecs = [_period_vector(w, cycles, places_ev, d) for w in forms]
        width = len(vecs[0])
        if width == 0:
            return {"kind": "refutation", "ok": True, "note": "no loops to compare", "candidates": []}
        ncyc = len(cycles)
        if logs:
            for j in range(len(places_ev)):
                e = [mpmath.mpc(0)] * width
                e[ncyc + j] = 2j * mp.pi
                vecs.append(e)
        vecs.append([mpmath.mpc(1)] * width)
        rel = integer_relation(vecs, d, height)
    suspicious = rel is not None and rel[0] != 0
    return {
        "kind": "refutation",
        "ok": not suspicious,
        "digits": d,
        "loops": width,
        "values": len(vecs),
        "candidates": [rel] if suspicious else [],
    }


def cross_check(verdict, trials: int = 3, digits: int = 50, seed: int = 0) -> dict:
    from .decision import Answer, Mode, trace_terms

    if verdict.answer is Answer.YES:
        return check_certificate(verdict.certificate, trials, digits, seed)
    pb = verdict.problem
    gens = [t.form for t in trace_terms(pb, [])]
    logs = pb.mode is not Mode.GENERAL or any(w.residue_divisor() for _, w in pb.allowed)
    return check_refutation(pb.target, gens, logs, digits)


__all__ = [
    "IntegrationPath", "numeric_integral", "contour_residue", "compatible_embeddings",
    "cycle_paths", "periods", "integer_relation", "lll", "PrecisionTooLow",
    "PathTooCloseToSingularity", "random_segment", "eval_ratfunc", "NumericFunction",
    "NumericCurve", "cross_check", "check_certificate", "check_refutation", "integrate_along",
]
