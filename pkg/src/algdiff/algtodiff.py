"""Operators associated to P from the generic series root and Pade-Hermite approximation.

``alg_to_diff`` lifts the generic root phi in A[[X]], A = K[Y]/(P(0, Y)), to
precision Sigma + B_d, forms Z_i = D^i phi (D = d/dX or theta) and asks for
l_0..l_{B_d} of degree <= B_X with sum l_i Z_i = 0 mod X^Sigma. Writing each
l_i in the basis 1, y, ..., y^(m-1) splits L = sum l_i D^i into m operators
over K[X]; the first nonzero one is returned. ``alg_to_diff_prob`` replaces
phi by a random K-combination of its coordinates and solves over K.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bounds
from .approx import ph_approx, ph_approx_algebra
from .arith.poly import BiPoly, UniPoly
from .arith.series import TruncSeries, series_derivative, series_theta
from .diffop import DiffOp
from .errors import HypothesisError
from .lift import check_hb, newton_lift
from .telescope import verify_associated


@dataclass
class AlgToDiffResult:
    op: DiffOp
    verified: bool
    params: tuple
    mode: str
    algebra_factor: UniPoly | None = None
    splits: int = 0


def _check_hprime(P: BiPoly):
    if P.degree_y < 2:
        raise HypothesisError("H'", f"need D_Y >= 2, got D_Y = {P.degree_y}")
    check_hb(P)


def _derivatives(coeffs, B_d, n, var_form, F):
    Z = [coeffs[:n]]
    cur = coeffs
    for _ in range(B_d):
        cur = series_derivative(F, cur) if var_form == "d_dx" else series_theta(F, cur)
        Z.append(cur[:n])
    return Z


def _operator(F, rows, var_form):
    """DiffOp from coefficient rows l_0..l_{B_d}, or None if all vanish."""
    coeffs = [UniPoly(F, r.copy()) for r in rows]
    if all(c.is_zero() for c in coeffs):
        return None
    return DiffOp(F, coeffs, var_form)


def _finish(P, op, B_X, B_d, mode, var_form, certify, factor=None, splits=0):
    if op.order > B_d or op.degree > B_X:
        raise AssertionError(f"operator of order {op.order}, degree {op.degree} exceeds ({B_d}, {B_X})")
    op = op.canonical()
    if certify:
        verified = verify_associated(op, P)
    elif mode == "deterministic":
        Sig = bounds.big_sigma(B_X, B_d)
        verified = Sig >= bounds.certificate_precision(P.degree_x, P.degree_y, B_X, B_d)
    else:
        verified = False
    return AlgToDiffResult(op, verified, (B_X, B_d, var_form), mode, factor, splits)


def alg_to_diff(P: BiPoly, B_X: int, B_d: int, var_form: str = "theta",
                certify: bool = False, method: str = "order_basis", mode: str = "deterministic"):
    """Operator of order <= B_d and degree <= B_X associated to P.

    ``verified`` is set from Sigma >= sigma (enough precision to certify), or by the
    explicit certificate when ``certify`` is true.
    """
    _check_hprime(P)
    if B_X < 0 or B_d < 1:
        raise ValueError("need B_X >= 0 and B_d >= 1")
    F = P.field
    S = bounds.big_sigma(B_X, B_d)
    root = newton_lift(P, S + B_d)
    Z = [TruncSeries(root.algebra, z) for z in _derivatives(root.series.coeffs, B_d, S, var_form, F)]
    sol = ph_approx_algebra(Z, B_X, method)
    ells = sol.ells
    if not np.any(ells != 0):
        raise AssertionError("Pade-Hermite solver returned the zero vector")
    for c in range(ells.shape[2]):
        op = _operator(F, ells[:, :, c], var_form)
        if op is not None:
            return _finish(P, op, B_X, B_d, mode, var_form, certify, sol.algebra_factor, sol.splits)
    raise AssertionError("unreachable: nonzero approximant with all components zero")


def alg_to_diff_prob(P: BiPoly, B_X: int, B_d: int, var_form: str = "theta", seed=None,
                     method: str = "order_basis", mode: str = "probabilistic"):
    """Random projection of the generic root, approximation over K, explicit certificate."""
    _check_hprime(P)
    F = P.field
    if not F.is_rational and F.modulus == 2:
        raise ValueError("F_2 has a single nonzero weight; the random projection needs more")
    S = bounds.big_sigma(B_X, B_d)
    root = newton_lift(P, S + B_d)
    rng = np.random.default_rng(seed)
    m = root.algebra.m
    w = F.array([F.random_element(rng, nonzero=True) for _ in range(m)])
    phi = root.series.coeffs
    z0 = F.zeros(phi.shape[0])
    for c in range(m):
        z0 = F.red(z0 + F.scale(phi[:, c], w[c]))
    Z = [TruncSeries(F, z) for z in _derivatives(z0, B_d, S, var_form, F)]
    sol = ph_approx(Z, B_X, method)
    op = _operator(F, sol.ells, var_form)
    if op is None:
        raise AssertionError("Pade-Hermite solver returned the zero vector")
    return _finish(P, op, B_X, B_d, mode, var_form, True)


def heuristic_params(P: BiPoly, flavor: str = "thm2"):
    """(B_X, B_d) from the telescoping bounds: thm2 or thm3."""
    D_X, D_Y = P.degree_x, P.degree_y
    h2, h3 = bounds.heuristic_params(D_X, D_Y, P.total_degree)
    if flavor == "thm2":
        return h2
    if flavor == "thm3":
        return h3
    raise ValueError(f"unknown flavor {flavor!r}")


def preset_params(P: BiPoly, preset: str):
    """(B_X, B_d) for the guaranteed presets 1, 2, 3 or the heuristic thm2 / thm3."""
    if preset in ("thm2", "thm3"):
        return heuristic_params(P, preset)
    idx = int(preset) - 1
    presets = bounds.thm4_presets(P.degree_x, P.degree_y)
    if not 0 <= idx < len(presets):
        raise ValueError(f"unknown preset {preset!r}")
    return presets[idx]


def run(P: BiPoly, preset: str = "1", mode: str = "det", var_form: str = "theta",
        seed=None, certify: bool = False) -> AlgToDiffResult:
    """Entry point shared by the CLI: presets, heuristics and both modes."""
    B_X, B_d = preset_params(P, preset)
    heuristic = preset in ("thm2", "thm3")
    if mode == "prob":
        res = alg_to_diff_prob(P, B_X, B_d, var_form, seed)
        if heuristic:
            res.mode = "heuristic"
        return res
    label = "heuristic" if heuristic else "deterministic"
    return alg_to_diff(P, B_X, B_d, var_form, certify=certify or heuristic, mode=label)
