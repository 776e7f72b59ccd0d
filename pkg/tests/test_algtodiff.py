import numpy as np
import pytest

from algdiff import bounds
from algdiff.algtodiff import alg_to_diff, alg_to_diff_prob, heuristic_params, run
from algdiff.arith.field import GF, QQ
from algdiff.arith.parse import parse_bipoly
from algdiff.errors import HypothesisError
from algdiff.lift import lift_scalar_root
from algdiff.resolvent import resolvent
from algdiff.telescope import verify_associated

from conftest import F9973, random_bipoly

SQRT = "Y^2-(1+X)"


def test_sqrt_preset3_annihilates_like_resolvent():
    P = parse_bipoly(SQRT, QQ)
    assert bounds.big_sigma(6, 6) == 48 == bounds.sigma(1, 2, 6, 6)
    res = alg_to_diff(P, 6, 6)
    assert res.verified and res.mode == "deterministic"
    assert res.op.order <= 6 and res.op.degree <= 6
    L, _ = resolvent(P)
    for y0 in (1, -1):
        a = lift_scalar_root(P, y0, 60).series
        assert L.apply(a).truncate(50).is_zero()
        assert res.op.apply(a).truncate(50).is_zero()
    assert verify_associated(res.op, P)


def test_dy1_rejected():
    with pytest.raises(HypothesisError):
        alg_to_diff(parse_bipoly("Y-X^2", QQ), 2, 2)


def test_cubic_preset2():
    P = parse_bipoly("Y^3-X*Y-1", F9973)
    res = run(P, "2")
    assert (res.params[0], res.params[1]) == (15, 15)
    assert res.verified and res.op.order <= 15 and res.op.degree <= 15
    assert verify_associated(res.op, P)
    L, _ = resolvent(P)
    y0 = 1
    a = lift_scalar_root(P, y0, 40).series
    assert L.apply(a).truncate(30).is_zero() and res.op.to_dx().apply(a).truncate(20).is_zero()


def test_prob_sqrt_and_determinism():
    P = parse_bipoly(SQRT, F9973)
    r1 = alg_to_diff_prob(P, 6, 6, seed=5)
    r2 = alg_to_diff_prob(P, 6, 6, seed=5)
    assert r1.verified and r1.op == r2.op


def test_prob_rejects_f2():
    with pytest.raises(ValueError):
        alg_to_diff_prob(parse_bipoly("Y^2+Y+X", GF(2)), 2, 2, seed=0)


def test_heuristic_params_examples():
    assert heuristic_params(parse_bipoly("Y^2+X", QQ), "thm2") == (18, 12)
    assert heuristic_params(parse_bipoly("Y^2+X^2+X^2*Y^2+1", QQ), "thm3") == (11, 11)
    assert heuristic_params(parse_bipoly("Y+X+X*Y", QQ), "thm2") == (9, 6)


@pytest.mark.parametrize("shape", [(1, 2), (2, 2), (1, 3), (2, 3)])
@pytest.mark.parametrize("preset", ["3"])
def test_presets_verified(shape, preset):
    rng = np.random.default_rng(31 * shape[0] + shape[1])
    P = random_bipoly(F9973, *shape, rng)
    res = run(P, preset)
    B_X, B_d, _ = res.params
    assert res.verified and res.op.order <= B_d and res.op.degree <= B_X
    assert verify_associated(res.op, P)


@pytest.mark.parametrize("flavor", ["thm2", "thm3"])
def test_heuristic_outputs_certified(flavor):
    rng = np.random.default_rng(77)
    P = random_bipoly(F9973, 1, 3, rng)
    res = run(P, flavor, mode="prob", seed=1)
    B_X, B_d, _ = res.params
    assert res.mode == "heuristic"
    assert res.op.order <= B_d and res.op.degree <= B_X
    assert res.verified == verify_associated(res.op, P)


def test_gauss_and_order_basis_both_certify():
    P = parse_bipoly("Y^2-X*Y-1-2*X", F9973)
    assert alg_to_diff(P, 6, 6, method="gauss", certify=True).verified
    assert alg_to_diff(P, 6, 6, certify=True).verified


@pytest.mark.parametrize("method", ["gauss", "order_basis"])
def test_reducible_input_certificate_matches_roots(method):
    # (Y + 1)(Y - 1 - X): after the split the operator is only known to kill 1 + X
    P = parse_bipoly("Y^2-X*Y-1-X", F9973)
    res = alg_to_diff(P, 6, 6, method=method, certify=True)
    assert res.splits == 1
    kills = [res.op.apply(lift_scalar_root(P, y0, 20).series).truncate(12).is_zero()
             for y0 in (1, F9973(-1))]
    assert kills[0]
    assert res.verified == all(kills)
