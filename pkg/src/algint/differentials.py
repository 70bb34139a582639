"""Meromorphic differentials f(x, y) dx: poles, residues, exactness, form spaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .arith import QQ, PrecisionExhausted, UPoly
from .arith.linalg import rank, solve
from .curve import Curve
from .divisor import Divisor, Modulus
from .function_field import FFElement
from .places import (
    MAX_RELATIVE_PRECISION,
    Place,
    as_ff,
    canonical_divisor,
    candidate_places,
    expand_to,
    infinite_places,
)
from .riemann_roch import base_nullspace, riemann_roch_space


class Kind(Enum):
    FIRST = "FirstKind"
    SECOND = "SecondKind"
    THIRD = "ThirdKind"
    MIXED = "Mixed"


class Differential:
    """The form f dx on ``curve``; f is a function-field element."""

    __slots__ = ("curve", "f", "_cache")

    def __init__(self, curve: Curve, f):
        self.curve = curve
        self.f = as_ff(curve, f)
        self._cache = {}

    @classmethod
    def zero(cls, curve: Curve) -> "Differential":
        return cls(curve, FFElement.const(curve, 0))

    @classmethod
    def exact(cls, g: FFElement) -> "Differential":
        """dg."""
        return cls(g.curve, g.derivative())

    def base_change(self, emb) -> "Differential":
        if emb.is_identity():
            return self
        C = self.curve.base_change(emb)
        return Differential(C, self.f.map_coeffs(emb, C))

    def __add__(self, other: "Differential") -> "Differential":
        _same(self, other)
        return Differential(self.curve, self.f + other.f)

    def __sub__(self, other: "Differential") -> "Differential":
        _same(self, other)
        return Differential(self.curve, self.f - other.f)

    def __neg__(self) -> "Differential":
        return Differential(self.curve, -self.f)

    def scale(self, c) -> "Differential":
        return Differential(self.curve, self.f * c)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.f)

    def __eq__(self, other) -> bool:
        return isinstance(other, Differential) and self.curve.same_model(other.curve) and self.f == other.f

    def __hash__(self) -> int:
        return hash(self.f)

    def to_str(self) -> str:
        return f"({self.f.to_str()}) d{self.curve.xname}"

    def __repr__(self) -> str:
        return f"Differential({self.to_str()})"

    # local data --------------------------------------------------------------------

    def series(self, p: Place, abs_prec: int):
        """Series of f(t) x'(t) (the form divided by dt), exact below t^abs_prec."""
        need = abs_prec - p.dx_valuation()
        W = max(need, 0) + 8
        while True:
            fs = expand_to(self.f, p, need)
            xt, _ = p.coordinates(W)
            dxt = xt.derivative()
            prod = fs * dxt
            if prod.prec >= abs_prec:
                return prod
            W *= 2
            need += 4
            if W > MAX_RELATIVE_PRECISION:
                raise PrecisionExhausted(f"form expansion at {p.label()} short of t^{abs_prec}")

    def order_at(self, p: Place) -> int:
        if not self.f:
            raise ValueError("the zero form has no order")
        return valuation_ff(self.f, p) + p.dx_valuation()

    def residue(self, p: Place):
        """Coefficient of t^-1 dt at p (an element of the residue field of p)."""
        if not self.f:
            return p.L.zero
        return self.series(p, 0).coefficient(-1)

    def support_places(self) -> list[Place]:
        key = "cand"
        if key not in self._cache:
            seen = {pl.key(): pl for pl in candidate_places(self.f)} if self.f else {}
            for pl in infinite_places(self.curve):
                seen[pl.key()] = pl
            self._cache[key] = sorted(seen.values())
        return self._cache[key]

    def pole_divisor(self) -> Modulus:
        if "poles" not in self._cache:
            out = {}
            if self.f:
                for p in self.support_places():
                    v = self.order_at(p)
                    if v < 0:
                        out[p] = -v
            self._cache["poles"] = Modulus(out)
        return self._cache["poles"]

    def divisor(self) -> Divisor:
        from .places import divisor_of

        return divisor_of(self.f) + canonical_divisor(self.curve)

    def residue_divisor(self) -> dict:
        """Nonzero residues, one entry per place (Galois orbit)."""
        if "res" not in self._cache:
            out = {}
            for p, _ in self.pole_divisor().items():
                r = self.residue(p)
                if r:
                    out[p] = r
            self._cache["res"] = out
        return self._cache["res"]

    def kind(self) -> Kind:
        return classify_kind(self)


def valuation_ff(f: FFElement, p: Place) -> int:
    from .places import valuation

    return valuation(f, p)


def _same(a: Differential, b: Differential):
    if not a.curve.same_model(b.curve):
        raise ValueError("differentials live on different curves")


def classify_kind(w: Differential) -> Kind:
    poles = w.pole_divisor()
    if not poles:
        return Kind.FIRST
    res = w.residue_divisor()
    if not res:
        return Kind.SECOND
    if all(n == 1 for _, n in poles.items()):
        return Kind.THIRD
    return Kind.MIXED


def residue_sum(residues: dict, K) -> list:
    """Trace of the residue sum down to Q, paired with a Q-basis of K.

    The residue theorem says every entry is zero.
    """
    dK = K.degree
    pows = [K.one]
    for _ in range(dK - 1):
        pows.append(pows[-1] * K.gen)
    sums = [QQ.zero] * dK
    for p, r in residues.items():
        for j, a in enumerate(pows):
            v = r * p.emb(a)
            sums[j] += v.trace() if hasattr(v, "trace") else v
    return sums


# linear algebra in the function field -----------------------------------------------------


def _lcm(a: UPoly, b: UPoly) -> UPoly:
    return (a * b).exact_div(a.gcd(b)).monic()


def coefficient_rows(items: list[FFElement], goal: FFElement | None = None):
    """Linear equations in c with sum c_i items_i = goal, over the constant field.

    Returns (rows, rhs).
    """
    K = items[0].field if items else goal.field
    allf = list(items) + ([goal] if goal is not None else [])
    rows_out, rhs_out = [], []
    for part in ("a", "b"):
        den = UPoly.const(K, 1)
        for f in allf:
            den = _lcm(den, getattr(f, part).den)
        nums = []
        for f in allf:
            r = getattr(f, part)
            nums.append(r.num * den.exact_div(r.den))
        deg = max((n.degree for n in nums), default=-1)
        for k in range(deg + 1):
            row = [n[k] for n in nums[: len(items)]]
            rhs = nums[-1][k] if goal is not None else K.zero
            if any(row) or rhs:
                rows_out.append(row)
                rhs_out.append(rhs)
    return rows_out, rhs_out


def solve_in_span(items: list[FFElement], goal: FFElement):
    """Constants c with sum c_i items_i = goal, or None."""
    K = goal.field
    if not items:
        return [] if not goal else None
    rows, rhs = coefficient_rows(items, goal)
    if not rows:
        return [K.zero] * len(items)
    return solve(rows, rhs, K, len(items))


def span_rank(items: list[FFElement]) -> int:
    if not items:
        return 0
    rows, _ = coefficient_rows(items)
    return rank([list(col) for col in zip(*rows)], items[0].field) if rows else 0


# exactness ----------------------------------------------------------------------------------


@dataclass
class ExactnessResult:
    exact: bool
    primitive: FFElement | None = None
    witness_kind: str = ""          # "residue" | "linear-algebra" | "period"
    witness_place: Place | None = None
    witness_value: object = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.exact


def is_exact(w: Differential) -> ExactnessResult:
    """Decide whether w = dg for a function g; g is verified symbolically."""
    if not w:
        return ExactnessResult(True, FFElement.const(w.curve, 0))
    res = w.residue_divisor()
    if res:
        p = min(res, key=lambda q: q.sort_key())
        return ExactnessResult(False, witness_kind="residue", witness_place=p, witness_value=res[p])
    m = w.pole_divisor()
    if not m:
        return ExactnessResult(
            False, witness_kind="linear-algebra",
            details={"reason": "nonzero form without poles; d(L(0)) = 0", "pole_divisor": "0"},
        )
    basis = riemann_roch_space(w.curve, m.reduced())
    dbasis = [g.derivative() for g in basis]
    coeffs = solve_in_span(dbasis, w.f)
    if coeffs is None:
        return ExactnessResult(
            False, witness_kind="linear-algebra",
            details={
                "pole_divisor": m.to_str(),
                "primitive_space_dim": len(basis),
                "image_rank": span_rank(dbasis),
            },
        )
    g = FFElement.const(w.curve, 0)
    for c, b in zip(coeffs, basis):
        if c:
            g = g + b * c
    if g.derivative() != w.f:
        raise ArithmeticError("primitive failed symbolic verification")
    return ExactnessResult(True, g)


# form spaces ------------------------------------------------------------------------------------


class FormSpace:
    """H^0(X, Omega(m)) with its exact and residue-free subspaces."""

    def __init__(self, curve: Curve, m: Modulus):
        if m.degree < 1:
            raise ValueError("form spaces need deg m >= 1")
        self.curve = curve
        self.modulus = m
        D = m + canonical_divisor(curve)
        self.basis = [Differential(curve, f) for f in riemann_roch_space(curve, D)]
        prims = riemann_roch_space(curve, m.reduced())
        self.exact_sub_basis = []
        chosen: list[FFElement] = []
        for g in prims:
            dg = g.derivative()
            if not dg:
                continue
            if span_rank(chosen + [dg]) > len(chosen):
                chosen.append(dg)
                self.exact_sub_basis.append((Differential(curve, dg), g))
        self._residueless = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def exact_dim(self) -> int:
        return len(self.exact_sub_basis)

    def residueless_basis(self) -> list[Differential]:
        if self._residueless is None:
            blocks = []
            for p, _ in self.modulus.items():
                row = [w.residue(p) for w in self.basis]
                if any(row):
                    blocks.append((p, [row]))
            K = self.curve.field
            vecs = base_nullspace(blocks, K, self.dim)
            out = []
            for v in vecs:
                f = FFElement.const(self.curve, 0)
                for c, w in zip(v, self.basis):
                    if c:
                        f = f + w.f * c
                out.append(Differential(self.curve, f))
            self._residueless = out
        return self._residueless

    @property
    def residueless_dim(self) -> int:
        return len(self.residueless_basis())

    def exact_quotient_dim(self) -> int:
        return self.dim - self.exact_dim

    def residueless_quotient_dim(self) -> int:
        return self.residueless_dim - self.exact_dim

    def contains(self, w: Differential) -> bool:
        if not w:
            return True
        return all(self.modulus[p] >= n for p, n in w.pole_divisor().items())


def form_space(curve: Curve, m: Modulus) -> FormSpace:
    return FormSpace(curve, m)


def dlog(f: FFElement) -> Differential:
    """df / f."""
    return Differential(f.curve, f.derivative() / f)


__all__ = [
    "Differential", "Kind", "ExactnessResult", "FormSpace", "classify_kind", "is_exact",
    "form_space", "dlog", "residue_sum", "solve_in_span", "span_rank", "coefficient_rows",
]
