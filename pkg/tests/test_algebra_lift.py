from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from algdiff.algebra import (AlgElem, QuotientAlgebra, alg_mul, component_decompose,
                             invert_or_split, project)
from algdiff.arith.field import GF, QQ
from algdiff.arith.parse import parse_bipoly, parse_unipoly
from algdiff.arith.poly import UniPoly
from algdiff.errors import HypothesisError
from algdiff.lift import defect, lift_scalar_root, newton_lift, smallest_good_shift

from conftest import F7, F9973, random_bipoly

F5 = GF(5)


def alg(text, F=QQ):
    """K[Y]/(p) with p given as text in Y."""
    p = parse_unipoly(text.replace("Y", "X"), F)
    return QuotientAlgebra(UniPoly(F, p.coeffs, "Y"))


A1 = alg("Y^2-1")


def el(A, cs):
    return A(UniPoly(A.field, cs, "Y"))


def test_mul_examples():
    y = A1.y()
    assert alg_mul(y, y) == A1.one()
    assert alg_mul(el(A1, [1, 1]), el(A1, [1, -1])).is_zero()
    B = alg("Y^2+1", F5)
    assert alg_mul(el(B, [2, 1]), el(B, [3, 1])).is_zero()


def test_parent_mismatch():
    with pytest.raises(ValueError):
        alg_mul(A1.y(), alg("Y^2-2").y())


def test_not_squarefree():
    with pytest.raises(ValueError):
        alg("Y^2-2*Y+1")


def test_invert_or_split_examples():
    assert invert_or_split(A1.y()) == A1.y()
    assert invert_or_split(el(A1, [1, 1])) == UniPoly(QQ, [1, 1], "Y")
    A2 = alg("Y^2-2")
    assert invert_or_split(A2.y()) == el(A2, [0, Fraction(1, 2)])
    with pytest.raises(ZeroDivisionError):
        invert_or_split(A1.zero())


def test_project_examples():
    assert project(A1.y(), UniPoly(QQ, [-1, 1], "Y")) == QuotientAlgebra(UniPoly(QQ, [-1, 1], "Y")).one()
    img = project(el(A1, [3, 2]), UniPoly(QQ, [1, 1], "Y"))
    assert component_decompose(img) == [1]
    a = el(A1, [3, 2])
    assert project(a, A1.p) == a
    with pytest.raises(ValueError):
        project(a, UniPoly(QQ, [-2, 1], "Y"))


def test_decompose_examples():
    assert component_decompose(el(A1, [3, 2])) == [3, 2]
    assert component_decompose(A1.zero()) == [0, 0]
    A3 = alg("Y^3-Y")
    assert component_decompose(A3.y() * A3.y()) == [0, 0, 1]


def _random_sqfree(F, m, rng):
    while True:
        cs = list(F.random_array(rng, m)) + [1]
        p = UniPoly(F, cs, "Y")
        if p.gcd(p.derivative()).deg == 0:
            return p


@pytest.mark.parametrize("F", [QQ, F7, F9973])
@given(seed=st.integers(0, 10**6))
def test_invert_or_split_property(F, seed):
    rng = np.random.default_rng(seed)
    p = _random_sqfree(F, 4, rng)
    A = QuotientAlgebra(p)
    # products of factors of p give zero divisors often
    a = A(UniPoly(F, F.random_array(rng, 4), "Y"))
    if a.is_zero():
        return
    res = invert_or_split(a)
    g = a.poly().gcd(p)
    if g.deg == 0:
        assert isinstance(res, AlgElem) and res * a == A.one()
    else:
        assert 1 <= res.deg < p.deg and (p % res).is_zero()


def test_split_on_reducible_modulus():
    A = alg("Y^3-7*Y+6")  # (Y-1)(Y-2)(Y+3)
    res = invert_or_split(el(A, [-1, 1]))
    assert res == UniPoly(QQ, [-1, 1], "Y")


@pytest.mark.parametrize("F", [QQ, F9973])
@given(seed=st.integers(0, 10**6))
def test_ring_axioms_and_projection_hom(F, seed):
    rng = np.random.default_rng(seed)
    f = _random_sqfree(F, 2, rng)
    g = _random_sqfree(F, 2, rng)
    p = f * g
    if p.gcd(p.derivative()).deg > 0:
        return
    A = QuotientAlgebra(p)
    a, b, c = (A(UniPoly(F, F.random_array(rng, 4), "Y")) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert project(a * b, f) == project(a, f) * project(b, f)


# -- lifting --------------------------------------------------------------

def test_newton_sqrt():
    P = parse_bipoly("Y^2-(1+X)", QQ)
    phi = newton_lift(P, 3).series.coeffs
    want = [[0, 1], [0, Fraction(1, 2)], [0, Fraction(-1, 8)]]
    assert phi.tolist() == want


def test_newton_explicit_root():
    P = parse_bipoly("Y-X^2", QQ)
    phi = newton_lift(P, 7).series.coeffs
    assert [r[0] for r in phi.tolist()] == [0, 0, 1, 0, 0, 0, 0]


def test_newton_idempotent_algebra():
    P = parse_bipoly("Y^2-Y+X", QQ)
    phi = newton_lift(P, 2).series.coeffs
    assert phi.tolist() == [[0, 1], [1, -2]]
    assert not np.any(defect(P, newton_lift(P, 9)) != 0)


def test_scalar_roots():
    P = parse_bipoly("Y^2-(1+X)", QQ)
    a = lift_scalar_root(P, 1, 4).series.coeffs.tolist()
    assert a == [1, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16)]
    assert lift_scalar_root(parse_bipoly("Y-X", QQ), 0, 4).series.coeffs.tolist() == [0, 1, 0, 0]
    W = lift_scalar_root(parse_bipoly("Y^5-Y+X^5", QQ), 0, 26).series.coeffs
    assert [i for i, c in enumerate(W) if c != 0] == [5, 25]
    assert W[5] == 1 and W[25] == 1


def test_scalar_root_errors():
    P = parse_bipoly("Y^2-(1+X)", QQ)
    with pytest.raises(HypothesisError):
        lift_scalar_root(P, 2, 4)
    with pytest.raises(HypothesisError):
        lift_scalar_root(parse_bipoly("Y^2-X", QQ), 0, 4)


def test_hb_error_suggests_shift():
    P = parse_bipoly("Y^2-X", QQ)
    with pytest.raises(HypothesisError) as exc:
        newton_lift(P, 4)
    assert exc.value.hypothesis == "H_b"
    assert exc.value.shift == smallest_good_shift(P) == 1


@pytest.mark.parametrize("F", [QQ, F9973])
@given(seed=st.integers(0, 10**6))
def test_defect_doubling_consistency(F, seed):
    rng = np.random.default_rng(seed)
    P = random_bipoly(F, 2, 3, rng)
    if smallest_good_shift(P) != 0:
        return
    r8 = newton_lift(P, 8)
    assert not np.any(defect(P, r8) != 0)
    r16 = newton_lift(P, 16)
    assert np.array_equal(newton_lift(P, 16, start=r8).series.coeffs, r16.series.coeffs)
    assert np.array_equal(r16.series.coeffs[:8], r8.series.coeffs)


def test_algebra_root_projects_to_scalar_root():
    F = F9973
    P = parse_bipoly("Y^3-2*Y+X^2+X*Y+1", F)
    p0 = P.eval_x(0)
    roots = [y for y in range(F.modulus) if p0(y) == 0]
    assert roots
    phi = newton_lift(P, 12)
    A = phi.algebra
    for y0 in roots:
        lin = UniPoly(F, [F.neg(y0), 1], "Y")
        got = [project(AlgElem(A, row.copy()), lin).rep[0] for row in phi.series.coeffs]
        want = lift_scalar_root(P, y0, 12).series.coeffs.tolist()
        assert got == want
