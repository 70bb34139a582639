import mpmath
import pytest

from algint.cli.parser import parse_problem_file
from algint.decision import Answer, decide
from algint.differentials import Differential
from algint.numeric import (
    IntegrationPath, check_certificate, check_refutation, compatible_embeddings, contour_residue,
    integer_relation, numeric_integral, periods,
)

from _util import curve, fn, form

E = curve("y^2 = x^3 - x")


def test_circle_integral_of_dx_over_x():
    w = form("1/x dx", curve("line"))
    val = numeric_integral(w, IntegrationPath.circle(0, 1), 40)
    with mpmath.workdps(40):
        assert abs(val - 2j * mpmath.pi) < mpmath.mpf(10) ** -30


def test_lemniscate_constant():
    C = curve("y^2 = 1 - x^4")
    w = form("1/y dx", C)
    path = IntegrationPath.polyline([0, 1], y0=1)
    v40 = numeric_integral(w, path, 40)
    v60 = numeric_integral(w, path, 60)
    with mpmath.workdps(60):
        ref = mpmath.gamma(mpmath.mpf(1) / 4) ** 2 / (4 * mpmath.sqrt(2 * mpmath.pi))
        assert abs(v40 - ref) < mpmath.mpf(10) ** -35
        assert abs(v60 - v40) < mpmath.mpf(10) ** -35


def test_exact_forms_have_zero_periods():
    w = Differential.exact(fn("x*y + 1/(x - 2)", E))
    for p in periods(w, 30):
        assert abs(p) < mpmath.mpf(10) ** -20


def test_first_kind_periods_are_nonzero():
    ps = periods(form("1/y dx", E), 30)
    assert max(abs(p) for p in ps) > 1


def test_integer_relation_examples():
    mpmath.mp.dps = 50
    assert integer_relation([mpmath.mpf(1), mpmath.mpf("0.5")], 50) == [1, -2]
    assert integer_relation([mpmath.log(2), mpmath.log(4)], 50) == [2, -1]
    assert integer_relation([mpmath.mpf(1), mpmath.pi], 50, 10**3) is None


@pytest.mark.parametrize("vals", [
    lambda: [mpmath.log(2), mpmath.log(3), mpmath.log(6)],
    lambda: [mpmath.sqrt(2) + mpmath.sqrt(3), mpmath.sqrt(2), mpmath.sqrt(3)],
])
def test_relations_agree_with_pslq(vals):
    mpmath.mp.dps = 50
    xs = vals()
    ours = integer_relation(xs, 50)
    ref = mpmath.pslq(xs, maxcoeff=10**3, maxsteps=10**5)
    assert ours is not None and ref is not None
    assert ours == ref or ours == [-c for c in ref]


def test_contour_residues_match_symbolic():
    X6 = curve("y^2 = x^6 + 1")
    for C, text in ((curve("line"), "1/(x^2 + 1) dx"), (E, "(1/(x*y) + 1/(x - 2)) dx"),
                    (X6, "1/(x*y) dx")):
        w = form(text, C)
        for p, r in w.residue_divisor().items():
            for ev in compatible_embeddings(p, 40):
                num = contour_residue(w, p, ev, 40)
                assert abs(num - ev(r)) < mpmath.mpf(10) ** -25


def test_certificate_and_refutation_checks(corpus_dir):
    v = decide(parse_problem_file(str(corpus_dir / "x6plus1.prob")).problem())
    assert v.answer is Answer.YES
    chk = check_certificate(v.certificate, trials=3, digits=50, seed=1)
    assert chk["ok"] and float(chk["max_residual"]) < 1e-25
    ref = check_refutation(form("1/y dx", E), [], logs=False, digits=50)
    assert ref["ok"] and not ref["candidates"]
