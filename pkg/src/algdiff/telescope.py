"""Telescoping construction of operators associated to P.

The integrand is F = Y P_Y / P. Any operator Lambda(X, d_X, d_Y) with
Lambda F = 0 splits as sum_k d_Y^k Lambda_k(X, d_X); the lowest nonzero
Lambda_k annihilates every root of P. ``find_lambda`` finds Lambda as a
kernel vector of the table of derivatives X^i d_X^j d_Y^k F.

``find_theta_operator`` looks for A = sum a_ij X^i theta^j and G with
A F = d_Y(G / P^(d+2)). Writing G = P^2 G_2 the condition reads

    sum a_ij X^i T_j P^(d-j) = G_2,Y P - d G_2 P_Y,

where theta^j F = T_j / P^(j+1), which is one linear system in the a_ij and
the coefficients of G_2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith.linalg import nullspace, rref
from .arith.poly import BiPoly, UniPoly
from .bounds import DegreeProfile, certificate_precision
from .diffop import DiffOp
from .errors import HypothesisError, NotFound
from .lift import hb_holds_at, newton_lift, smallest_good_shift


@dataclass
class Telescoper:
    k: int
    A: DiffOp
    B_present: bool = False


def _powers(P: BiPoly, e: int):
    out = [BiPoly.constant(P.field, 1)]
    for _ in range(e):
        out.append(out[-1] * P)
    return out


def _quotient_rule(G: BiPoly, m: int, P: BiPoly, dP: BiPoly, var: str) -> BiPoly:
    """Numerator of d/dvar (G / P^m) over P^(m+1)."""
    dG = G.diff_x() if var == "x" else G.diff_y()
    return dG * P - G * dP * m


def _place(F, box, G: BiPoly, xshift=0):
    """Write G * X^xshift into a zero array of shape box."""
    out = F.zeros(box)
    c = G.coeffs
    if c.size:
        out[xshift:xshift + c.shape[0], : c.shape[1]] = c
    return out


def derivative_table(P: BiPoly, N_X: int, N_d: int):
    """(M, index): row t of M holds the numerator of X^i d_X^j d_Y^k F over
    P^(N_d+1) for index[t] = (i, j, k), flattened over the monomial box
    X^a Y^b, a <= N_X + D_X (N_d+1), b <= D_Y (N_d+1)."""
    if N_X < 0 or N_d < 0:
        raise ValueError("N_X and N_d must be nonnegative")
    F = P.field
    D_X, D_Y = P.degree_x, P.degree_y
    box = (N_X + D_X * (N_d + 1) + 1, D_Y * (N_d + 1) + 1)
    PX, PY = P.diff_x(), P.diff_y()
    pows = _powers(P, N_d)
    G = {(0, 0): BiPoly(F, [[0, 1]]) * PY}
    for k in range(N_d):
        G[(0, k + 1)] = _quotient_rule(G[(0, k)], k + 1, P, PY, "y")
    for s in range(1, N_d + 1):
        for j in range(1, s + 1):
            k = s - j
            G[(j, k)] = _quotient_rule(G[(j - 1, k)], s, P, PX, "x")
    index = []
    rows = []
    for i in range(N_X + 1):
        for s in range(N_d + 1):
            for j in range(s + 1):
                k = s - j
                H = G[(j, k)] * pows[N_d - s]
                index.append((i, j, k))
                rows.append(_place(F, box, H, i).reshape(-1))
    M = F.zeros((len(rows), box[0] * box[1]))
    for t, r in enumerate(rows):
        M[t] = r
    return M, index


def find_lambda(P: BiPoly, N_X: int, N_d: int) -> Telescoper:
    """Telescoper from a kernel vector of the derivative table."""
    F = P.field
    M, index = derivative_table(P, N_X, N_d)
    K = nullspace(F, M.T.copy())
    if K.shape[0] == 0:
        raise NotFound(f"no telescoper with N_X = {N_X}, N_d = {N_d}")
    lam = K[0]
    parts = {}
    for c, (i, j, k) in zip(lam, index):
        if c == 0:
            continue
        parts.setdefault(k, {}).setdefault(j, {})[i] = c
    k0 = min(parts)
    terms = parts[k0]
    order = max(terms)
    coeffs = []
    for j in range(order + 1):
        cs = terms.get(j, {})
        arr = F.zeros(N_X + 1)
        for i, c in cs.items():
            arr[i] = c
        coeffs.append(UniPoly(F, arr, reduce=False))
    return Telescoper(k0, DiffOp(F, coeffs, "d_dx").canonical(), False)


def theta_numerators(P: BiPoly, d: int):
    """T_0..T_d with theta^j F = T_j / P^(j+1)."""
    PX = P.diff_x()
    X = BiPoly.x(P.field)
    T = [BiPoly(P.field, [[0, 1]]) * P.diff_y()]
    for j in range(d):
        T.append(X * (T[-1].diff_x() * P - T[-1] * PX * (j + 1)))
    return T


def _g2_support(prof: DegreeProfile, d: int):
    tot, dx, dy = d * prof.D + d + 1, d * prof.D_X + d + 1, d * prof.D_Y
    return [(u, v) for u in range(dx + 1) for v in range(dy + 1) if u + v <= tot]


def _lowest_order(F, K, ng, d):
    """Kernel vector whose A part has the smallest theta-order.

    Echelonize with the A columns first, highest theta power leftmost; the last
    row pivoting inside the A block uses the fewest theta powers."""
    na = (d + 1) * (d + 1)
    a_cols = [ng + c for c in range(na)][::-1]
    perm = a_cols + list(range(ng))
    R, piv = rref(F, K[:, perm])
    last = max(r for r, c in enumerate(piv) if c < na)
    out = F.zeros(K.shape[1])
    out[perm] = R[last]
    return out


def find_theta_operator(P: BiPoly, d: int, with_certificate: bool = False):
    """A = sum_{i,j <= d} a_ij X^i theta^j with A F a d_Y-derivative, or None.

    With ``with_certificate`` the result is (A, G) with A F = d_Y(G / P^(d+2)).
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    F = P.field
    prof = DegreeProfile.of(P)
    PY = P.diff_y()
    T = theta_numerators(P, d)
    pows = _powers(P, d)
    lhs = [T[j] * pows[d - j] for j in range(d + 1)]
    support = _g2_support(prof, d)
    rhs = []
    for u, v in support:
        mono = F.zeros((u + 1, v + 1))
        mono[u, v] = F.one
        g = BiPoly(F, mono, reduce=False)
        rhs.append(g.diff_y() * P - g * PY * d)
    nx = max([L.coeffs.shape[0] + d for L in lhs] + [g.coeffs.shape[0] for g in rhs])
    ny = max([L.coeffs.shape[1] for L in lhs] + [g.coeffs.shape[1] for g in rhs])
    box = (nx, ny)
    ng = len(rhs)
    na = (d + 1) * (d + 1)
    M = F.zeros((nx * ny, ng + na))
    for c, g in enumerate(rhs):
        M[:, c] = F.red(-_place(F, box, g).reshape(-1))
    for j in range(d + 1):
        for i in range(d + 1):
            M[:, ng + j * (d + 1) + i] = _place(F, box, lhs[j], i).reshape(-1)
    K = nullspace(F, M)
    if K.shape[0] == 0 or not np.any(K[:, ng:] != 0):
        return None
    vec = _lowest_order(F, K, ng, d)
    a = vec[ng:]
    coeffs = [UniPoly(F, a[j * (d + 1):(j + 1) * (d + 1)].copy()) for j in range(d + 1)]
    op = DiffOp(F, coeffs, "theta")
    if not with_certificate:
        return op.canonical()
    g2 = F.zeros((max(u for u, _ in support) + 1, max(v for _, v in support) + 1))
    for c, (u, v) in enumerate(support):
        g2[u, v] = vec[c]
    return op, BiPoly(F, g2) * P * P


def verify_associated(A: DiffOp, P: BiPoly) -> bool:
    """Truncated-annihilation certificate over K[Y]/(P(a, Y)), all roots at once."""
    if A.is_zero():
        raise ValueError("the zero operator is associated to everything")
    op = A.to_dx()
    B_d, B_X = op.order, max(op.degree, 0)
    prec = certificate_precision(P.degree_x, P.degree_y, B_X, B_d)
    a = 0
    if not hb_holds_at(P, 0):
        a = smallest_good_shift(P)
        if a is None:
            raise HypothesisError("H_b", "no shift within the scan budget avoids lc * disc")
    Q = P.shift_x(a)
    L = op.shift_x(a) if a else op
    root = newton_lift(Q, prec + B_d)
    return L.apply(root.series).truncate(prec).is_zero()
