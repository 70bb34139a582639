from fractions import Fraction

import pytest

import algint.numeric
from algint.cli.parser import parse_problem_text
from algint.decision import Answer, InternalInconsistency, Mode, decide, span_decide
from algint.differentials import Differential, dlog

from _util import curve, fn, form

L = curve("line")
E = curve("y^2 = x^3 - x")


def run(text, **kw):
    pb = parse_problem_text(text).problem()
    pb.numeric_check = kw.get("check", False)
    return decide(pb)


def test_span_examples():
    r = span_decide(form("1/(x^2 - 1) dx", L), [dlog(fn("(x - 1)/(x + 1)", L))])
    assert r.sat and r.constants == [Fraction(1, 2)] and r.gamma.is_constant()
    r = span_decide(form("2*x dx", L), [])
    assert r.sat and (r.gamma - fn("x^2", L)).is_constant()
    assert not span_decide(form("1/y dx", E), []).sat


def test_pullback_certificate():
    v = run("""
[curves]
X0: y^2 = x^6 + 1
E1: v^2 = u^3 + 1
[forms]
w0 on X0 = x/y dx
w1 on E1 = 1/(2*v) du
[correspondences]
Z1: X0 ~ E1 { u - x^2, v - y }
[query]
decide w0 in {w1} mode=general
""", check=True)
    assert v.answer is Answer.YES
    (t,) = v.certificate.terms
    assert t.coefficient == 1 and v.certificate.gamma.is_constant()
    assert v.certificate.residual() == Differential.zero(v.certificate.target.curve)
    assert v.cross_check["ok"]


def test_exact_targets():
    v = run("[curves]\nL: line\n[forms]\nw0 on L = 1 dx\n[query]\ndecide w0 in {} mode=general\n")
    assert v.answer is Answer.YES and (v.certificate.gamma - fn("x", L)).is_constant()
    v = run("[curves]\nL: line\n[forms]\nw0 on L = x dx\n[query]\ndecide w0 in {} mode=general\n")
    assert (v.certificate.gamma - fn("x^2/2", L)).is_constant()


FIRST_KIND_VS_EXACT = """
[curves]
E: y^2 = x^3 - x
L: line(u)
[forms]
w0 on E = 1/y dx
w1 on L = 1 du
[correspondences]
Z1: E ~ L { u - x }
[query]
decide w0 in {w1} mode=general
"""


def test_trace_of_exact_cannot_reach_first_kind():
    v = run(FIRST_KIND_VS_EXACT)
    assert v.answer is Answer.NO_UP_TO_BUDGET and v.qualifications
    v = run(FIRST_KIND_VS_EXACT.replace("mode=general", "mode=general assert_complete"))
    assert v.answer is Answer.NO and v.evidence["completeness"]


def test_log_mode_partial_fractions():
    v = run("[curves]\nL: line\n[forms]\nw0 on L = 1/(x^2 - 1) dx\n[query]\ndecide w0 in {} mode=log\n",
            check=True)
    assert v.answer is Answer.YES
    assert sorted(abs(t.coefficient) for t in v.certificate.terms) == [Fraction(1, 2)] * 2
    assert all(t.kind == "dlog" for t in v.certificate.terms)


def test_identity_correspondence_on_same_curve():
    v = run("[curves]\nL: line\n[forms]\nw0 on L = 1/x dx\nw1 on L = 1/x dx\n"
            "[query]\ndecide w0 in {w1} mode=general\n")
    assert v.answer is Answer.YES
    assert [t.coefficient for t in v.certificate.terms if t.kind == "trace"] == [1]


def test_second_kind_against_logs_is_a_complete_no():
    v = run("[curves]\nE: y^2 = x^3 - x\n[forms]\nw0 on E = x/y dx\n[query]\ndecide w0 in {} mode=log\n",
            check=True)
    assert v.answer is Answer.NO and v.evidence["completeness"]
    assert v.cross_check["ok"] and v.cross_check["kind"] == "refutation"


def test_residue_mismatch_with_empty_set():
    v = run("[curves]\nL: line\n[forms]\nw0 on L = 1/x dx\n[query]\ndecide w0 in {} mode=general\n",
            check=True)
    assert v.answer is Answer.NO and v.evidence["completeness"]


ELLIPTIC = "[curves]\nX0: {}\n[forms]\nw0 on X0 = 1/y dx\n[query]\ndecide w0 in {{}} mode=elliptic\n"


def test_elliptic_mode():
    v = run(ELLIPTIC.format("y^2 = 1 - x^4"), check=True)
    assert v.answer is Answer.YES
    v = run(ELLIPTIC.format("y^2 = x^6 + 1"), check=True)
    assert v.answer is Answer.YES
    (t,) = v.certificate.terms
    assert t.origin == "quotient" and t.coefficient == Fraction(-1, 2)
    assert t.corr.map.u == fn("1/x^2", curve("y^2 = x^6 + 1"))
    v = run(ELLIPTIC.format("y^2 = x^5 + 1"))
    assert v.answer is Answer.NO_UP_TO_BUDGET
    assert any("quotient" in q for q in v.qualifications)


def test_numeric_disagreement_is_an_internal_inconsistency(monkeypatch):
    monkeypatch.setattr(algint.numeric, "cross_check", lambda *a, **k: {"ok": False, "kind": "forced"})
    with pytest.raises(InternalInconsistency):
        run("[curves]\nL: line\n[forms]\nw0 on L = 2*x dx\n[query]\ndecide w0 in {} mode=general\n",
            check=True)


def test_modes_parse():
    pb = parse_problem_text(ELLIPTIC.format("y^2 = x^3 + 1")).problem()
    assert pb.mode is Mode.ELLIPTIC
