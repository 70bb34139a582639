from fractions import Fraction

from hypothesis import given, settings, strategies as st

from algint.differentials import Differential, is_exact
from algint.function_field import FFElement
from algint.places import places_above
from algint.trace import Correspondence, CurveMap, find_elliptic_quotients

from _util import curve, fn, form

L = curve("line")
M = curve("line(u)")
E = curve("y^2 = x^3 - x")
X6 = curve("y^2 = x^6 + 1")
E1 = curve("v^2 = u^3 + 1")
SQ = CurveMap(L, M, fn("x^2", L))


def test_pullback_examples():
    phi = CurveMap(X6, E1, fn("x^2", X6), fn("y", X6))
    assert phi.pullback(form("1/(2*v) du", E1)) == form("x/y dx", X6)
    w = form("1/y dx", E)
    assert CurveMap.identity(E).pullback(w) == w
    assert SQ.pullback(form("1/u du", M)) == form("2/x dx", L)


def test_graph_read_right_to_left():
    phi = CurveMap(X6, E1, fn("x^2", X6), fn("y", X6))
    Z = Correspondence(E1, X6, phi, "pullback")
    assert Z.trace_image(form("1/(2*v) du", E1)) == form("x/y dx", X6)
    assert Z.left_degree == 2 and Z.right_degree == 1


def test_pushforward_examples():
    assert not SQ.pushforward(form("1 dx", L))
    assert SQ.pushforward(form("x dx", L)) == form("1 du", M)
    # degree-2 cover X6 -> E1: x dx / y goes to du / v
    phi = CurveMap(X6, E1, fn("x^2", X6), fn("y", X6))
    assert phi.pushforward(form("x/y dx", X6)) == form("1/v du", E1)


def test_elliptic_quotients():
    res = find_elliptic_quotients(X6, 2)
    assert len(res.maps) == 2
    for phi, target in res.maps:
        assert target.same_model(E1)
    us = sorted(phi.u.to_str() for phi, _ in res.maps)
    assert us == sorted([fn("x^2", X6).to_str(), fn("1/x^2", X6).to_str()])
    res = find_elliptic_quotients(E, 2)
    assert len(res.maps) == 1 and res.maps[0][0].is_identity()
    res = find_elliptic_quotients(curve("y^2 = x^5 + 1"), 2)
    assert res.maps == [] and not res.complete


# properties ------------------------------------------------------------------------------------

small = st.integers(-4, 4)
nz = small.filter(bool)
maps = st.sampled_from(["x^2", "x^3 - x", "(x^2 + 1)/x", "x^2 + 3*x"])


def _line_form(cs, poles):
    parts = [f"({c})/(x - ({a}))" for c, a in zip(cs, poles)]
    parts.append(f"({cs[-1]})*x")
    return form(f"({' + '.join(parts)}) dx", L)


@settings(max_examples=30, deadline=None)
@given(maps, st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3), nz, nz)
def test_linearity(u, c1, c2, a, b):
    phi = CurveMap(L, M, fn(u, L))
    w1 = _line_form(c1, [1, 2])
    w2 = _line_form(c2, [-1, 3])
    lhs = phi.pushforward(w1.scale(Fraction(a)) + w2.scale(Fraction(b)))
    rhs = phi.pushforward(w1).scale(Fraction(a)) + phi.pushforward(w2).scale(Fraction(b))
    assert lhs == rhs
    assert phi.pullback(form(f"({a})/(u - {b}) du", M) + form(f"({b})*u du", M)) == \
        phi.pullback(form(f"({a})/(u - {b}) du", M)) + phi.pullback(form(f"({b})*u du", M))


@settings(max_examples=30, deadline=None)
@given(maps, st.lists(small, min_size=3, max_size=3), st.lists(nz, min_size=2, max_size=2, unique=True))
def test_trace_of_pullback_is_degree_times(u, cs, poles):
    phi = CurveMap(L, M, fn(u, L))
    parts = [f"({c})/(u - ({a}))" for c, a in zip(cs, poles)] + [f"({cs[-1]})*u"]
    w = form(f"({' + '.join(parts)}) du", M)
    assert phi.pushforward(phi.pullback(w)) == w.scale(phi.degree)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["line", "g2"]), st.lists(small, min_size=3, max_size=3), nz)
def test_trace_of_exact_is_exact(which, cs, q):
    if which == "line":
        phi = SQ
        g = fn(f"({cs[0]} + ({cs[1]})*x)/(x^2 + {abs(q)}) + ({cs[2]})*x^3", L)
    else:
        phi = CurveMap(X6, E1, fn("x^2", X6), fn("y", X6))
        g = fn(f"({cs[0]} + ({cs[1]})*x^2)*y/(x - ({q})) + ({cs[2]})*x", X6)
    T = phi.pushforward(Differential.exact(g))
    r = is_exact(T)
    assert r.exact


@settings(max_examples=30, deadline=None)
@given(maps, st.lists(nz, min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3, unique=True))
def test_residue_pushforward(u, cs, poles):
    phi = CurveMap(L, M, fn(u, L))
    w = form(f"({' + '.join(f'({c})/(x - ({a}))' for c, a in zip(cs, poles))}) dx", L)
    T = phi.pushforward(w)
    expected = {}
    for p, r in w.residue_divisor().items():
        if p.at_infinity or phi.u.a.den(-p.q.coeffs[0]) == 0:
            continue  # lands over u = infinity
        img = phi.u.a(-p.q.coeffs[0])
        expected[img] = expected.get(img, 0) + r
    for u0, r in expected.items():
        (q,) = places_above(M, u0)
        assert T.residue(q) == r
