import time

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from algint.mordell_weil import (
    EllipticCurveQ, combination, ec_mul, mw_kernel, torsion_structure, torsion_subgroup,
    weierstrass_model,
)

from _util import curve

E_2 = EllipticCurveQ(-1, 0)   # y^2 = x^3 - x
E_6 = EllipticCurveQ(0, 1)    # y^2 = x^3 + 1
E_1 = EllipticCurveQ(0, -2)   # y^2 = x^3 - 2


def _inside(A, B):
    """Every row of A is an integer combination of the rows of B (B independent)."""
    MB = sympy.Matrix(B).T
    for row in A:
        sol = MB.solve_least_squares(sympy.Matrix(row)) if MB.rows != MB.cols else MB.solve(sympy.Matrix(row))
        if MB * sol != sympy.Matrix(row) or any(not c.is_integer for c in sol):
            return False
    return True


def same_lattice(A, B):
    if not A or not B:
        return not A and not B
    return sympy.Matrix(A).rank() == len(A) == len(B) and _inside(A, B) and _inside(B, A)


def test_group_law_examples():
    P = E_6.point(2, 3)
    assert P + E_6.identity() == P
    assert P + E_6.point(0, 1) == E_6.point(-1, 0)
    Q = E_2.point(0, 0)
    assert (Q + Q).is_identity


def test_torsion_fixtures():
    T = torsion_subgroup(E_2)
    assert {str(P) for P in T} == {"O", "(0, 0)", "(1, 0)", "(-1, 0)"}
    assert torsion_structure(T) == (2, 2)
    T = torsion_subgroup(E_6)
    assert len(T) == 6 and torsion_structure(T) == (6,)
    P = E_6.point(2, 3)
    assert {str(ec_mul(k, P)) for k in range(6)} == {str(R) for R in T}
    assert torsion_subgroup(E_1) == [E_1.identity()] and torsion_structure([E_1.identity()]) == ()


def test_kernel_fixtures():
    r = mw_kernel([E_2.point(0, 0)])
    assert r.complete and same_lattice(r.kernel_basis, [[2]])
    r = mw_kernel([E_1.point(3, 5)])
    assert r.complete and r.kernel_basis == []
    assert r.proof_data["primes"]
    r = mw_kernel([E_6.point(2, 3), E_6.point(0, 1)])
    assert r.complete
    assert same_lattice(r.kernel_basis, [[6, 0], [2, -1]])


@pytest.mark.parametrize("start", [3, 11, 29, 101])
def test_prime_sample_does_not_change_the_lattice(start):
    pts = [E_6.point(2, 3), E_6.point(0, 1), E_6.point(-1, 0)]
    base = mw_kernel(pts).kernel_basis
    assert same_lattice(mw_kernel(pts, prime_start=start).kernel_basis, base)
    r = mw_kernel([E_1.point(3, 5), E_1.point(3, -5)], prime_start=start)
    assert r.complete and same_lattice(r.kernel_basis, [[1, 1]])


def test_budget_exhaustion_is_reported():
    r = mw_kernel([E_1.point(3, 5)], budget=5)
    assert r.status == "BUDGET_EXHAUSTED"


def test_weierstrass_model_of_general_cubic():
    C = curve("y^2 = 4*x^3 - 4*x")
    E, to_E = weierstrass_model(C)
    P = to_E(1, 0)
    assert E.contains(P.x, P.y)
    assert (P + P).is_identity


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([(2, 3), (0, 1), (-1, 0), (0, -1), (2, -3)]), min_size=1, max_size=3))
def test_kernel_vectors_replay(pts):
    points = [E_6.point(*p) for p in pts]
    r = mw_kernel(points)
    assert r.complete
    assert len(r.kernel_basis) == len(points)  # everything is torsion
    for v in r.kernel_basis:
        assert combination(points, v).is_identity


def test_fixture_timing():
    for pts in ([E_2.point(0, 0)], [E_1.point(3, 5)], [E_6.point(2, 3), E_6.point(0, 1)]):
        t = time.perf_counter()
        assert mw_kernel(pts).complete
        assert time.perf_counter() - t < 5
