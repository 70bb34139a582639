"""Deciding whether a target form is integrable in terms of an allowed set.

Every deciding step reduces to one linear system

    w0 = sum c_i T_i + d(gamma),   gamma in L(m - supp m),

where the T_i are trace-images of allowed forms on the target curve (plus
d log f terms when logarithms are available) and m bounds all poles in play.
A YES carries the solution as a certificate that is replayed symbolically
before it is returned.  A NO is only reported as complete when the set of
T_i provably spans everything the allowed set can produce; otherwise the
answer is NO_UP_TO_BUDGET and the qualification list says why.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .arith import QQ, UPoly
from .arith.linalg import integer_kernel, rank
from .arith.numberfield import Embedding, extend
from .curve import Curve
from .differentials import Differential, dlog, solve_in_span
from .divisor import Divisor, Modulus
from .function_field import FFElement
from .places import infinite_places
from .riemann_roch import principal_generator, riemann_roch_space
from .trace import (
    Correspondence,
    CurveMap,
    UnsupportedCorrespondence,
    find_elliptic_quotients,
)

log = logging.getLogger(__name__)


class Answer(Enum):
    YES = "YES"
    NO = "NO"
    NO_UP_TO_BUDGET = "NO_UP_TO_BUDGET"


class Mode(Enum):
    GENERAL = "general"
    ELLIPTIC = "elliptic"
    LOG = "log"


class InternalInconsistency(RuntimeError):
    """Symbolic and numeric conclusions disagree, or a certificate failed replay."""


@dataclass
class Budgets:
    mw_ops: int = 10**6
    quotient_degree: int = 4
    digits: int = 50
    k_max: int = 12
    max_field_degree: int = 16
    principality_calls: int = 200
    check_paths: int = 3
    seed: int = 0


@dataclass
class Problem:
    target: Differential
    allowed: list = field(default_factory=list)            # [(name, Differential)]
    correspondences: list = field(default_factory=list)    # [Correspondence]
    mode: Mode = Mode.GENERAL
    assert_complete: bool = False
    budgets: Budgets = field(default_factory=Budgets)
    target_name: str = "w0"
    numeric_check: bool = True


# certificate ---------------------------------------------------------------------------------


@dataclass(eq=False)
class Term:
    """One generator T of the span, living on the target curve.

    kind "trace": T = trace-image of ``source`` along ``corr``;
    kind "dlog":  T = d log(``function``).
    """

    kind: str
    label: str
    form: Differential
    source: Differential | None = None
    corr: Correspondence | None = None
    function: FFElement | None = None
    coefficient: object = None
    origin: str = "allowed"          # allowed | quotient | log
    source_name: str = ""

    def recompute(self) -> Differential:
        if self.kind == "dlog":
            return dlog(self.function)
        return self.corr.trace_image(self.source)

    def base_change(self, emb) -> "Term":
        if emb.is_identity():
            return self
        if self.kind == "dlog":
            C = self.function.curve.base_change(emb)
            f = self.function.map_coeffs(emb, C)
            return Term("dlog", self.label, dlog(f), function=f, origin="log")
        return Term(
            "trace", self.label, self.form.base_change(emb),
            source=self.source.base_change(emb), corr=self.corr.base_change(emb),
            origin=self.origin, source_name=self.source_name,
        )


@dataclass(eq=False)
class Certificate:
    """w0 = sum c_i T_i + d gamma over ``field`` (the constants' number field)."""

    target: Differential
    terms: list
    gamma: FFElement
    field: object = QQ
    embedding: object = None         # constant field of the problem -> field

    def residual(self) -> Differential:
        r = self.target - Differential.exact(self.gamma)
        for t in self.terms:
            r = r - t.form.scale(t.coefficient)
        return r

    def replay(self) -> bool:
        """Recompute every term from its inputs and check the identity exactly."""
        for t in self.terms:
            if t.recompute() != t.form:
                return False
        return not self.residual()


@dataclass
class Verdict:
    answer: Answer
    certificate: Certificate | None = None
    evidence: dict = field(default_factory=dict)
    qualifications: list = field(default_factory=list)
    cross_check: dict | None = None
    problem: Problem | None = None

    @property
    def complete(self) -> bool:
        return self.answer is not Answer.NO_UP_TO_BUDGET


# span test ------------------------------------------------------------------------------------


@dataclass
class SpanResult:
    sat: bool
    constants: list = field(default_factory=list)
    gamma: FFElement | None = None
    modulus: Modulus | None = None
    details: dict = field(default_factory=dict)


def enclosing_modulus(forms) -> Modulus:
    out = {}
    for w in forms:
        if not w:
            continue
        for p, n in w.pole_divisor().items():
            out[p] = max(out.get(p, 0), n)
    return Modulus(out)


def span_decide(w0: Differential, L: list, m: Modulus | None = None) -> SpanResult:
    """Solve w0 = sum c_i L_i + d gamma by linear algebra over the constant field."""
    C = w0.curve
    if m is None:
        m = enclosing_modulus([w0] + list(L))
    prims = riemann_roch_space(C, m.reduced()) if m else []
    prims = [g for g in prims if not g.is_constant()]
    items = [w.f for w in L] + [g.derivative() for g in prims]
    if not items:
        if not w0:
            return SpanResult(True, [], FFElement.const(C, 0), m)
        return SpanResult(False, modulus=m, details={"generators": 0, "primitives": 0})
    sol = solve_in_span(items, w0.f)
    if sol is None:
        return SpanResult(False, modulus=m, details={"generators": len(L), "primitives": len(prims)})
    n = len(L)
    gamma = FFElement.const(C, 0)
    for c, g in zip(sol[n:], prims):
        if c:
            gamma = gamma + g * c
    return SpanResult(True, list(sol[:n]), gamma, m)


# generators ---------------------------------------------------------------------------------------


def _oriented(Z: Correspondence, src: Curve, tgt: Curve):
    if Z.left.same_model(src) and Z.right.same_model(tgt):
        return Z
    if Z.right.same_model(src) and Z.left.same_model(tgt):
        return Z.reversed()
    return None


def trace_terms(problem: Problem, quals: list) -> list:
    """Trace-images of the allowed forms on the target curve."""
    X0 = problem.target.curve
    out = []
    for name, w in problem.allowed:
        corrs = []
        if w.curve.same_model(X0):
            corrs.append(Correspondence(X0, X0, CurveMap.identity(X0), "pullback", "id"))
        for Z in problem.correspondences:
            oz = _oriented(Z, w.curve, X0)
            if oz is not None and not (oz.map.is_identity() and corrs):
                corrs.append(oz)
        for Z in corrs:
            try:
                T = Z.trace_image(w)
            except UnsupportedCorrespondence as exc:
                quals.append(f"correspondence {Z.name} skipped for {name}: {exc}")
                continue
            label = f"{name} via {Z.name}"
            out.append(Term("trace", label, T, source=w, corr=Z, source_name=name))
    return out


def elliptic_terms(X0: Curve, budgets: Budgets, quals: list) -> list:
    qs = find_elliptic_quotients(X0, budgets.quotient_degree)
    quals.append(
        f"elliptic quotients: {len(qs.maps)} found, degree bound {budgets.quotient_degree}; {qs.note}"
    )
    out = []
    for k, (phi, E) in enumerate(qs.maps, 1):
        Z = Correspondence(E, X0, phi, "pullback", f"q{k}")
        u = FFElement.x(E)
        v = FFElement.y(E)
        gens = [("du/v", v.inverse()), ("u du/v", u / v)]
        if E.degree == 4:
            gens.append(("u^2 du/v", u * u / v))
        for lab, f in gens:
            src = Differential(E, f)
            out.append(Term("trace", f"{lab} on {E.equation()} via {Z.name}", Z.trace_image(src),
                            source=src, corr=Z, origin="quotient"))
    return out


def _residue_places(forms) -> list:
    seen = {}
    for w in forms:
        if w:
            for p in w.residue_divisor():
                seen[p.key()] = p
    return sorted(seen.values())


def split_residue_field(target: Differential, terms: list, budgets: Budgets, quals: list):
    """Extend constants until every place carrying a residue is rational.

    Returns (emb, target, terms, places) over the new field, or None when the
    field degree budget is exceeded.
    """
    K = target.curve.field
    emb = Embedding.identity(K)
    cur_t, cur_terms = target, terms
    for _ in range(12):
        places = _residue_places([cur_t] + [t.form for t in cur_terms])
        bad = [p for p in places if p.degree > 1]
        if not bad:
            if not emb.is_identity():
                quals.append(f"constants extended to {emb.dst!r} to split residue places")
            return emb, cur_t, cur_terms, places
        p = bad[0]
        F = cur_t.curve.field
        X = UPoly.x(F)
        if p.at_infinity:
            g = X * X - UPoly.const(F, cur_t.curve.poly.lc)
        elif p.q.degree > 1:
            g = p.q
        else:
            th = -p.q.coeffs[0]
            g = X * X - UPoly.const(F, cur_t.curve.poly(th))
        F2, e2, _ = extend(F, g)
        if F2.degree > budgets.max_field_degree:
            return None
        emb = emb.then(e2) if not emb.is_identity() else e2
        cur_t = cur_t.base_change(e2)
        cur_terms = [t.base_change(e2) for t in cur_terms]
    return None


def log_basis(curve: Curve, S: list, budgets: Budgets, quals: list):
    """Functions whose d logs span d log of Prin_S (tensor Q).

    Returns (functions, complete).
    """
    finite = [p for p in S if not p.at_infinity]
    if curve.is_line:
        fs = []
        seen = set()
        for p in finite:
            th = p.theta
            if th not in seen:
                seen.add(th)
                fs.append(FFElement.x(curve) - FFElement.const(curve, th))
        quals.append("log basis: complete (genus 0, linear factors)")
        return fs, True
    if not S:
        quals.append("log basis: empty support, nothing to add")
        return [], True
    if curve.genus == 1 and curve.field.is_qq and curve.degree == 3:
        out = _mw_log_basis(curve, S, budgets, quals)
        if out is not None:
            return out
    return _searched_log_basis(curve, S, budgets, quals), False


def _mw_log_basis(curve, S, budgets, quals):
    from .mordell_weil import BudgetExhausted, mw_kernel, weierstrass_model

    try:
        E, to_E = weierstrass_model(curve)
        pts = []
        for p in S:
            if p.at_infinity:
                pts.append(to_E(None, None))
            else:
                pts.append(to_E(Fraction(p.theta), Fraction(p.s) if p.s is not None else 0))
        res = mw_kernel(pts, budgets.mw_ops)
    except (BudgetExhausted, ValueError) as exc:
        quals.append(f"Mordell-Weil step unavailable: {exc}")
        return None
    basis = res.kernel_basis
    if basis:
        degs = [sum(v) for v in basis]
        combos = integer_kernel([degs], len(basis))
    else:
        combos = []
    fs = []
    for cmb in combos:
        v = [sum(c * b[i] for c, b in zip(cmb, basis)) for i in range(len(S))]
        D = Divisor({p: n for p, n in zip(S, v) if n})
        f = principal_generator(curve, D)
        if f is None:
            raise InternalInconsistency(f"Mordell-Weil relation {v} gives a non-principal divisor")
        fs.append(f)
    status = "complete" if res.complete else "budget-limited"
    quals.append(
        f"log basis: {status} via Mordell-Weil kernel ({res.status}, {res.ops_used} group operations)"
    )
    return fs, res.complete


def _searched_log_basis(curve, S, budgets, quals):
    fs = []
    seen = set()
    for p in S:
        if not p.at_infinity and p.theta not in seen:
            seen.add(p.theta)
            fs.append(FFElement.x(curve) - FFElement.const(curve, p.theta))
    found = []
    calls = 0
    kmax = budgets.k_max if curve.genus == 1 else 4
    n = len(S)
    if n <= 6:
        for v in itertools.product((-1, 0, 1), repeat=n):
            if not any(v) or sum(v) != 0 or calls >= budgets.principality_calls:
                continue
            if found and rank(found + [list(v)], QQ) == len(found):
                continue
            for k in range(1, kmax + 1):
                calls += 1
                D = Divisor({p: k * c for p, c in zip(S, v) if c})
                f = principal_generator(curve, D)
                if f is not None:
                    found.append(list(v))
                    fs.append(f)
                    break
                if calls >= budgets.principality_calls:
                    break
    quals.append(
        f"log basis: budget-limited principality search ({calls} Riemann-Roch solves, "
        f"multiples up to {kmax})"
    )
    return fs


# pipeline -------------------------------------------------------------------------------------------


def _solve(problem: Problem, terms: list, use_logs: bool, trace_complete: bool,
           trace_note: str, quals: list) -> Verdict:
    target = problem.target
    if use_logs:
        split = split_residue_field(target, terms, problem.budgets, quals)
        if split is None:
            quals.append(f"residue fields exceed degree {problem.budgets.max_field_degree}")
            return Verdict(Answer.NO_UP_TO_BUDGET, evidence={"reason": "field degree budget"},
                           qualifications=quals)
        emb, target, terms, S = split
        fs, logs_complete = log_basis(target.curve, S, problem.budgets, quals)
        terms = terms + [Term("dlog", f"dlog({f.to_str()})", dlog(f), function=f, origin="log") for f in fs]
    else:
        emb, logs_complete = Embedding.identity(target.curve.field), True
        if target.residue_divisor() and not any(t.form.residue_divisor() for t in terms):
            p, r = next(iter(sorted(target.residue_divisor().items(), key=lambda kv: kv[0].sort_key())))
            return Verdict(
                Answer.NO,
                evidence={
                    "reason": "target has a residue but no generator has one",
                    "witness_place": p.label(),
                    "witness_residue": _num_str(r),
                    "completeness": "trace-images of residue-free forms are residue-free",
                },
                qualifications=quals,
            )
    res = span_decide(target, [t.form for t in terms])
    if res.sat:
        kept = []
        for t, c in zip(terms, res.constants):
            if c:
                t.coefficient = c
                kept.append(t)
        cert = Certificate(target, kept, res.gamma, target.curve.field, emb)
        return Verdict(Answer.YES, cert, {"modulus": res.modulus.to_str() if res.modulus else "0"}, quals)
    evidence = {
        "reason": "target not in the span of generators and exact forms",
        "generators": str(len(terms)),
        "modulus": res.modulus.to_str() if res.modulus else "0",
        "primitive_space_dim": str(res.details.get("primitives", 0)),
    }
    if trace_complete and logs_complete:
        evidence["completeness"] = trace_note + ("; log basis complete" if use_logs else "")
        return Verdict(Answer.NO, evidence=evidence, qualifications=quals)
    missing = []
    if not trace_complete:
        missing.append("trace-image list not known to be complete")
    if not logs_complete:
        missing.append("log basis not known to be complete")
    evidence["budget"] = "; ".join(missing)
    return Verdict(Answer.NO_UP_TO_BUDGET, evidence=evidence, qualifications=quals)


def _has_residues(problem: Problem) -> bool:
    return any(bool(w.residue_divisor()) for _, w in problem.allowed)


def _trace_completeness(problem: Problem):
    if not problem.allowed:
        return True, "allowed set is empty"
    if problem.assert_complete:
        return True, "correspondence list asserted complete"
    return False, ""


def decide_residueless(problem: Problem) -> Verdict:
    quals = _base_quals(problem)
    terms = trace_terms(problem, quals)
    ok, note = _trace_completeness(problem)
    return _solve(problem, terms, problem.mode is Mode.LOG, ok, note, quals)


def decide_with_residues(problem: Problem) -> Verdict:
    quals = _base_quals(problem)
    if problem.mode is Mode.LOG:
        quals.append("log mode: d log f for all functions f are generators")
    else:
        quals.append("an allowed form has a residue, so logarithms are available")
    terms = trace_terms(problem, quals)
    ok, note = _trace_completeness(problem)
    if problem.mode is Mode.LOG and not problem.allowed:
        note = "log mode with no further allowed forms"
    return _solve(problem, terms, True, ok, note, quals)


def decide_elliptic(problem: Problem) -> Verdict:
    quals = _base_quals(problem)
    X0 = problem.target.curve
    terms = trace_terms(problem, quals)
    if X0.is_line:
        quals.append("rational target: logarithms come from third-kind elliptic forms")
        return _solve(problem, terms, True, True, "genus 0 target", quals)
    if X0.genus == 1:
        Z = Correspondence(X0, X0, CurveMap.identity(X0), "pullback", "id")
        w = problem.target
        t = Term("trace", f"{problem.target_name} on the elliptic curve {X0.equation()} via id",
                 w, source=w, corr=Z, coefficient=X0.field.one if not X0.field.is_qq else Fraction(1),
                 source_name=problem.target_name)
        quals.append("target curve is elliptic: the target form itself belongs to the elliptic set")
        cert = Certificate(w, [t], FFElement.const(X0, 0), X0.field, Embedding.identity(X0.field))
        return Verdict(Answer.YES, cert, {"modulus": "n/a"}, quals)
    terms = terms + elliptic_terms(X0, problem.budgets, quals)
    quals.append("logarithms are available through third-kind elliptic forms")
    ok = problem.assert_complete
    note = "elliptic quotient list asserted complete" if ok else ""
    return _solve(problem, terms, True, ok, note, quals)


def _base_quals(problem: Problem) -> list:
    C = problem.target.curve
    out = [f"mode: {problem.mode.value}", f"constants: number field {C.field!r}"]
    if problem.correspondences:
        tag = "asserted complete" if problem.assert_complete else "not asserted complete"
        out.append(f"correspondences: {len(problem.correspondences)} user-supplied, {tag}")
    return out


def _dispatch(problem: Problem) -> Verdict:
    if problem.mode is Mode.ELLIPTIC:
        return decide_elliptic(problem)
    if problem.mode is Mode.LOG or _has_residues(problem):
        return decide_with_residues(problem)
    return decide_residueless(problem)


def decide(problem: Problem) -> Verdict:
    """Run the pipeline, replay YES certificates, and cross-check numerically."""
    v = _dispatch(problem)
    v.problem = problem
    if v.answer is Answer.YES and not v.certificate.replay():
        raise InternalInconsistency("certificate failed symbolic replay")
    if v.answer is Answer.NO and "completeness" not in v.evidence:
        raise InternalInconsistency("NO emitted without a completeness justification")
    if problem.numeric_check and v.answer is not Answer.NO_UP_TO_BUDGET:
        from .numeric import cross_check

        report = cross_check(v, problem.budgets.check_paths, problem.budgets.digits, problem.budgets.seed)
        v.cross_check = report
        if not report["ok"]:
            raise InternalInconsistency(f"numeric cross-check failed: {report}")
    return v


def _num_str(c) -> str:
    return c.to_str() if hasattr(c, "to_str") else str(c)


__all__ = [
    "Answer", "Mode", "Budgets", "Problem", "Term", "Certificate", "Verdict", "SpanResult",
    "InternalInconsistency", "span_decide", "decide", "decide_residueless",
    "decide_with_residues", "decide_elliptic", "enclosing_modulus", "trace_terms", "log_basis",
]
