from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algint.differentials import Differential, Kind, form_space, is_exact, residue_sum
from algint.divisor import Modulus
from algint.places import places_above

from _util import curve, fn, form

L = curve("line")
E = curve("y^2 = x^3 - x")
X6 = curve("y^2 = x^6 + 1")


def at(C, x0):
    return places_above(C, None if x0 is None else Fraction(x0))


def test_residue_examples():
    assert form("1/x dx", L).residue(at(L, 0)[0]) == 1
    assert form("1/(x^2 - 1) dx", L).residue(at(L, 1)[0]) == Fraction(1, 2)
    w = form("x/y dx", X6)
    assert all(w.residue(p) == 0 for p in at(X6, None))


def test_residue_divisors():
    res = form("1/(x^2 - 1) dx", L).residue_divisor()
    assert {p.label(): v for p, v in res.items()} == {"(1)": Fraction(1, 2), "(-1)": Fraction(-1, 2)}
    res = form("1/x dx", L).residue_divisor()
    assert {p.label(): v for p, v in res.items()} == {"(0)": 1, "inf": -1}
    assert form("1/y dx", E).residue_divisor() == {}


def test_is_exact_examples():
    r = is_exact(form("2*x dx", L))
    assert r.exact and r.primitive == fn("x^2", L)
    r = is_exact(form("1/x dx", L))
    assert not r.exact and r.witness_kind == "residue" and r.witness_value == 1
    assert r.witness_place.label() == "(0)"
    r = is_exact(form("(3*x^2 - 1)/(2*y) dx", E))
    assert r.exact and r.primitive == fn("y", E)
    r = is_exact(form("1/y dx", E))
    assert not r.exact and r.witness_kind == "linear-algebra"


def test_kinds():
    assert form("1/y dx", E).kind() is Kind.FIRST
    assert form("x/y dx", E).kind() is Kind.SECOND
    assert form("1/x dx", L).kind() is Kind.THIRD


def test_form_space_examples():
    fs = form_space(L, Modulus.from_places(at(L, 0) + at(L, None), 1))
    assert fs.dim == 1
    (b,) = fs.basis
    assert b == form("1/x dx", L)
    fs = form_space(E, Modulus.from_places(at(E, None), 1))
    assert fs.dim == 1 and fs.contains(form("1/y dx", E))
    fs = form_space(L, Modulus.from_places(at(L, 0) + at(L, None), 5))
    assert fs.exact_quotient_dim() == 1


@pytest.mark.parametrize("C", [L, E, X6], ids=["line", "g1", "g2"])
def test_every_basis_form_respects_modulus(C):
    m = Modulus.from_places(at(C, None) + at(C, 0), 2)
    fs = form_space(C, m)
    for w in fs.basis:
        for p in m.support:
            assert w.order_at(p) >= -m[p]


polys = st.lists(st.integers(-3, 3), min_size=1, max_size=3)
nonzero = st.integers(-3, 3).filter(bool)


def _poly(cs, var="x"):
    return " + ".join(f"({c})*{var}^{k}" for k, c in enumerate(cs)) or "0"


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([L, E, X6]), polys, polys, st.integers(-3, 3), nonzero)
def test_exact_forms_are_recognised(C, a, b, p, q):
    g = fn(f"({_poly(a)})/(x^2 + ({p})*x + ({q}))" + ("" if C.is_line else f" + ({_poly(b)})*y"), C)
    w = Differential.exact(g)
    r = is_exact(w)
    assert r.exact
    assert (r.primitive - g).is_constant()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([L, E, X6]), polys, st.integers(-3, 3), nonzero)
def test_residue_theorem(C, a, p, q):
    w = form(f"({_poly(a)})/((x - ({p}))*(x^2 + {q})) dx" if C.is_line
             else f"({_poly(a)} + y)/(x*(x - ({q}))) dx", C)
    assert all(s == 0 for s in residue_sum(w.residue_divisor(), C.field))
