"""Riemann-Roch spaces L(D) = {f : div f + D >= 0} by explicit ansatz.

Every f in L(D) is written (A(x) + B(x) y) / Q(x), where Q clears the finite
poles allowed by D.  Degree bounds for A and B come from the pole order
allowed at infinity; the remaining conditions are linear constraints on the
coefficients, read off local expansions at the places of the support.
"""

from __future__ import annotations

from .arith import PrecisionExhausted, RationalFunction, UPoly
from .arith.linalg import nullspace, rref
from .curve import Curve
from .divisor import Divisor
from .function_field import FFElement
from .places import MAX_RELATIVE_PRECISION, Place, _places_over_q, _rf_series, infinite_places


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _ansatz(curve: Curve, D: Divisor):
    K = curve.field
    fibers = {}
    for p, _ in D.items():
        if not p.at_infinity:
            fibers[p.q.coeffs] = p.q
    Q = UPoly.const(K, 1)
    places = []
    for q in fibers.values():
        pls = _places_over_q(curve, q)
        k = max(0, max(_ceil_div(D[p], p.e) for p in pls))
        if k:
            Q = Q * q**k
        places.extend(pls)
    dQ = Q.degree
    infs = infinite_places(curve)
    if curve.is_line:
        da, db = D[infs[0]] + dQ, -1
    elif curve.odd:
        M = D[infs[0]] + 2 * dQ
        da, db = M // 2, (M - curve.degree) // 2
    else:
        M = max(D[p] for p in infs) + dQ
        da, db = M, M - curve.genus - 1
        if len(infs) == 2 and D[infs[0]] != D[infs[1]]:
            places.extend(infs)
        elif len(infs) == 1:
            places.extend(infs)
    return Q, da, db, places


def _monomial_series(p: Place, Q: UPoly, da: int, db: int, bound: int):
    """Series of x^i/Q and x^i y/Q at p, exact below t^bound."""
    K = p.curve.field
    W = max(bound, 0) + 8
    invQ_rf = RationalFunction(UPoly.const(K, 1), Q)
    while True:
        try:
            xt, yt = p.coordinates(W)
            inv = _rf_series(invQ_rf, p, xt, W)
            a_part, b_part = [], []
            cur = inv
            for i in range(max(da, db) + 1):
                if i <= da:
                    a_part.append(cur)
                if i <= db:
                    b_part.append(cur * yt)
                cur = cur * xt
            series = a_part + b_part
            if all(s.prec >= bound for s in series):
                return series
        except PrecisionExhausted:
            pass
        W *= 2
        if W > MAX_RELATIVE_PRECISION:
            raise PrecisionExhausted(f"expansion at {p.label()} did not reach t^{bound}")


def constraint_blocks(series_by_place, bounds):
    """Rows (over each residue field) forcing coefficients below the bounds to vanish."""
    blocks = []
    for p, series in series_by_place:
        bound = bounds[p]
        lo = min((s.val for s in series if s.coeffs), default=bound)
        rows = []
        for k in range(lo, bound):
            row = [s.coefficient(k) for s in series]
            if any(row):
                rows.append(row)
        if rows:
            blocks.append((p, rows))
    return blocks


def base_nullspace(blocks, K, n: int) -> list[list]:
    """K-basis (echelon form) of the unknown vectors in K^n killed by every block.

    Each block is (place, rows) with rows over the residue field of the place;
    such rows are turned into K-linear conditions by splitting coordinates.
    """
    if all(p.emb.is_identity() for p, _ in blocks):
        rows = [r for _, rs in blocks for r in rs]
        basis = nullspace(rows, K, n) if rows else _identity(K, n)
        return _echelon(basis, K)
    dK = K.degree
    alpha_pows = [K.one]
    for _ in range(dK - 1):
        alpha_pows.append(alpha_pows[-1] * K.gen)
    qrows = []
    for p, rows in blocks:
        L, emb = p.L, p.emb
        imgs = [emb(a) for a in alpha_pows]
        for r in rows:
            cols = []
            for c in r:
                for a in imgs:
                    cols.append(L.coords(c * a) if not L.is_qq else (c * a,))
            for j in range(L.degree):
                qrows.append([col[j] for col in cols])
    from .arith import QQ

    qbasis = nullspace(qrows, QQ, n * dK) if qrows else _identity(QQ, n * dK)
    vecs = []
    for v in qbasis:
        vec = []
        for i in range(n):
            acc = K.zero
            for j in range(dK):
                if v[i * dK + j]:
                    acc = acc + alpha_pows[j] * v[i * dK + j]
            vec.append(acc)
        vecs.append(vec)
    return _echelon(vecs, K)


def _identity(K, n):
    return [[K.one if i == j else K.zero for j in range(n)] for i in range(n)]


def _echelon(vecs, K):
    if not vecs:
        return []
    red, _ = rref(vecs, K, len(vecs[0]))
    return [list(r) for r in red]


def riemann_roch_space(curve: Curve, D: Divisor) -> list[FFElement]:
    """A basis of L(D) over the constant field (canonical echelon form)."""
    K = curve.field
    Q, da, db, places = _ansatz(curve, D)
    n = max(da + 1, 0) + max(db + 1, 0)
    if n == 0:
        return []
    series_by_place = []
    bounds = {}
    for p in places:
        bound = -D[p]
        bounds[p] = bound
        series_by_place.append((p, _monomial_series(p, Q, da, db, bound)))
    blocks = constraint_blocks(series_by_place, bounds)
    basis = base_nullspace(blocks, K, n)
    na = max(da + 1, 0)
    out = []
    for v in basis:
        A = UPoly(K, v[:na])
        B = UPoly(K, v[na:])
        out.append(FFElement(curve, RationalFunction(A, Q), RationalFunction(B, Q)))
    return out


def dimension(curve: Curve, D: Divisor) -> int:
    return len(riemann_roch_space(curve, D))


def principal_generator(curve: Curve, D: Divisor):
    """f with div(f) = D, or None if D is not principal."""
    if D.degree != 0:
        return None
    basis = riemann_roch_space(curve, -D)
    return basis[0] if basis else None


__all__ = ["riemann_roch_space", "dimension", "principal_generator", "base_nullspace"]
