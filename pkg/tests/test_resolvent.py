import numpy as np
import pytest

from algdiff import bounds
from algdiff.arith.field import QQ
from algdiff.arith.parse import parse_bipoly
from algdiff.arith.poly import BiPoly, UniPoly
from algdiff.diffop import DiffOp
from algdiff.errors import HypothesisError
from algdiff.lift import lift_scalar_root
from algdiff.resolvent import (cockle_fraction, cockle_series, find_lucky_point, resolvent,
                               wk_sequence)
from algdiff.telescope import verify_associated

from conftest import F9973, random_bipoly


def op(F, coeffs, var="d_dx"):
    return DiffOp(F, [UniPoly(F, c) for c in coeffs], var)


SQRT_OP = op(QQ, [[-1], [2, 2]]).canonical()   # 2(1+X) D - 1


def test_wk_examples():
    P = parse_bipoly("Y^2-(1+X)", QQ)
    W = wk_sequence(P, 2)
    assert W[0] == BiPoly.constant(QQ, 1)
    assert W[1] == BiPoly.constant(QQ, -2)
    W = wk_sequence(parse_bipoly("Y-X", QQ), 2)
    assert W[0] == BiPoly.constant(QQ, 1) and W[1].is_zero()


def test_wk_second_derivative_oracle():
    # alpha'' = W_2 / P_Y^3 = -2 / (2 alpha)^3 for alpha = sqrt(1+X)
    P = parse_bipoly("Y^2-(1+X)", QQ)
    a = lift_scalar_root(P, 1, 8).series
    second = a.derivative().derivative()
    got = (a * a * a).truncate(6) * second * QQ(-4)
    assert got.coeffs.tolist() == [1, 0, 0, 0, 0, 0]


def test_wk_degree_bounds_random():
    rng = np.random.default_rng(5)
    for D_X, D_Y in [(1, 2), (2, 2), (2, 3)]:
        P = random_bipoly(F9973, D_X, D_Y, rng)
        for k, W in enumerate(wk_sequence(P, 4), start=1):
            bx, by = bounds.wk_degree_bounds(D_X, D_Y, k)
            assert W.degree_x <= bx and W.degree_y <= by


def test_cockle_fraction_examples():
    L, r = cockle_fraction(parse_bipoly("Y-X^2", QQ))
    assert r == 1 and L == op(QQ, [[-2], [0, 1]])
    T, _ = cockle_fraction(parse_bipoly("Y-X^2", QQ), var_form="theta")
    assert T == op(QQ, [[-2], [1]], "theta")
    L, r = cockle_fraction(parse_bipoly("Y^2-(1+X)", QQ))
    assert r == 1 and L == SQRT_OP


def test_cockle_rejects_inseparable():
    with pytest.raises(HypothesisError):
        cockle_fraction(parse_bipoly("(Y-X)^2", QQ))


def test_lucky_points():
    assert find_lucky_point(parse_bipoly("Y^2-(1+X)", QQ), "deterministic") == (0, 1)
    a, r = find_lucky_point(parse_bipoly("Y^2-X", QQ), "deterministic")
    assert (a, r) == (1, 1)
    a, r = find_lucky_point(parse_bipoly("Y-X", F9973), seed=1)
    assert r == 1


def test_cockle_series_examples():
    P = parse_bipoly("Y^2-(1+X)", QQ)
    assert cockle_series(P, 0, 1) == SQRT_OP
    Q = parse_bipoly("Y-X^2", QQ)
    assert cockle_series(Q, 3, 1, var_form="theta") == op(QQ, [[-2], [1]], "theta")


def test_generic_degrees_over_f9973():
    rng = np.random.default_rng(7)
    P = random_bipoly(F9973, 2, 2, rng)
    L, r = resolvent(P, seed=1)
    assert r == 2 and L.to_dx().coeffs[-1].deg <= 10
    P = random_bipoly(F9973, 3, 3, rng)
    L, r = resolvent(P, seed=2)
    assert r == 3 and L.coeffs[-1].deg == 36


@pytest.mark.parametrize("shape", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 2), (2, 4), (4, 2)])
def test_backends_agree_f9973(shape):
    rng = np.random.default_rng(shape[0] * 10 + shape[1])
    P = random_bipoly(F9973, *shape, rng)
    ser, r1 = resolvent(P, "series", seed=3)
    frac, r2 = resolvent(P, "fraction")
    assert r1 == r2 and ser == frac


@pytest.mark.parametrize("shape", [(1, 2), (2, 2), (1, 3)])
def test_backends_agree_rational(shape):
    rng = np.random.default_rng(sum(shape))
    P = random_bipoly(QQ, *shape, rng)
    assert resolvent(P, "series")[0] == resolvent(P, "fraction")[0]


@pytest.mark.parametrize("shape", [(1, 2), (2, 2), (2, 3)])
def test_resolvent_annihilates_and_bounds(shape):
    rng = np.random.default_rng(100 + shape[0] + 7 * shape[1])
    P = random_bipoly(F9973, *shape, rng)
    L, r = resolvent(P, seed=4)
    assert r <= P.degree_y
    assert L.degree <= bounds.eta(*shape, r)
    assert verify_associated(L, P)


def test_resolvent_order_drops_with_linear_relation():
    # the three roots of Y^3 - Y - X sum to zero, so they span a 2-dimensional space
    L, r = resolvent(parse_bipoly("Y^3-Y-X", QQ))
    assert r == 2 and verify_associated(L, parse_bipoly("Y^3-Y-X", QQ))
    L, r = resolvent(parse_bipoly("Y^3+Y^2-Y-X", QQ))
    assert r == 3


def test_json_roundtrip():
    L = SQRT_OP
    assert DiffOp.from_json(L.dumps()) == L
    d = L.to_json()
    assert d["var"] == "Dx" and d["coeffs"] == [["-1/2"], ["1", "1"]]
