"""Cockle's algorithm for the differential resolvent of P(X, Y).

With alpha a root of P, every derivative of alpha is a polynomial in alpha
over K(X) of degree < D_Y: V_0 = Y, V_1 = -P_X / P_Y mod P and
V_{k+1} = dV_k/dX + V_1 dV_k/dY mod P. The first linear relation
V_r = A_{r-1} V_{r-1} + ... + A_0 V_0 gives the resolvent
d^r - A_{r-1} d^(r-1) - ... - A_0, returned with denominators cleared.

Two backends. ``cockle_fraction`` works in K(X)[Y]/(P) with exact rational
functions and is the small-instance reference. ``cockle_series`` moves to a
lucky point a, works in K[[X]][Y]/(P(X + a, Y)) at a precision fixed by the
degree bound eta, solves the relation on series by Newton iteration and
recovers each A_i by Pade approximation.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .approx import pade
from .arith.field import FieldSpec
from .arith.linalg import independent_rows, inverse, rank
from .arith.poly import BiPoly, UniPoly, discriminant
from .arith.ratfunc import RatFunc
from .arith.series import TruncSeries, series_derivative, series_inverse, series_matmul, series_mul
from .bounds import eta, wk_degree_bounds
from .diffop import DiffOp
from .errors import HypothesisError, ReconstructionError, ZeroDivisorFound


@dataclass
class CockleTrace:
    r: int
    lucky_a: object
    V_polys: list = dc_field(default_factory=list)
    relation: list = dc_field(default_factory=list)


# -- W_k ------------------------------------------------------------------

def wk_sequence(P: BiPoly, k_max: int):
    """W_1..W_k_max with d^k alpha/dX^k = W_k(X, alpha) / P_Y(X, alpha)^(2k-1)."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    PX, PY = P.diff_x(), P.diff_y()
    D_X, D_Y = P.degree_x, P.degree_y
    J = PY * PY.diff_x() - PX * PY.diff_y()
    W = [-PX]
    for k in range(1, k_max):
        Wk = W[-1]
        W.append((PY * Wk.diff_x() - PX * Wk.diff_y()) * PY - J * Wk * (2 * k - 1))
    for k, Wk in enumerate(W, start=1):
        if Wk.is_zero():
            continue
        bx, by = wk_degree_bounds(D_X, D_Y, k)
        assert Wk.degree_x <= bx and Wk.degree_y <= by, f"W_{k} exceeds its degree bounds"
    return W


# -- hypotheses -----------------------------------------------------------

def _check_h(P: BiPoly):
    if P.degree_y < 1:
        raise HypothesisError("H", "P must have positive degree in Y")
    disc = discriminant(P)
    if disc.is_zero():
        raise HypothesisError("H", "P is not separable in Y")
    return disc


def _bad_poly(P: BiPoly, disc=None):
    """p_{D_Y} * disc_Y(P); lucky points avoid its roots."""
    if disc is None:
        disc = _check_h(P)
    return P.lc_y() * disc


# -- fraction backend ----------------------------------------------------

class _FracQuotient:
    """K(X)[Y]/(P); elements are lists of D_Y RatFuncs."""

    def __init__(self, P: BiPoly):
        self.F = P.field
        self.m = P.degree_y
        lc = P.lc_y()
        self.low = [RatFunc(P.coeff_y(j), lc) for j in range(self.m)]

    def zero(self):
        return [RatFunc(UniPoly.zero(self.F)) for _ in range(self.m)]

    def reduce(self, c):
        c = list(c)
        m = self.m
        for j in range(len(c) - 1, m - 1, -1):
            t = c[j]
            if t.is_zero():
                continue
            for i in range(m):
                if not self.low[i].is_zero():
                    c[j - m + i] = c[j - m + i] - t * self.low[i]
        out = c[:m]
        while len(out) < m:
            out.append(RatFunc(UniPoly.zero(self.F)))
        return out

    def mul(self, a, b):
        zero = RatFunc(UniPoly.zero(self.F))
        c = [zero] * (2 * self.m - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    c[i + j] = c[i + j] + x * y
        return self.reduce(c)

    def from_bipoly(self, Q: BiPoly):
        return self.reduce([RatFunc(c) for c in Q.y_coeffs()])

    def dx(self, a):
        return [x.derivative() for x in a]

    def dy(self, a):
        out = [a[j] * UniPoly.constant(self.F, j) for j in range(1, self.m)]
        return out + [RatFunc(UniPoly.zero(self.F))]

    def add(self, a, b):
        return [x + y for x, y in zip(a, b)]

    def inverse(self, a):
        # columns a * Y^j; solve M v = e_0
        cols = []
        e = [RatFunc.const(self.F, 1)] + [RatFunc(UniPoly.zero(self.F))] * (self.m - 1)
        cur = a
        for _ in range(self.m):
            cols.append(cur)
            cur = self.reduce([RatFunc(UniPoly.zero(self.F))] + cur)
        v = _ratfunc_solve(cols, e)
        if v is None:
            raise ZeroDivisionError("P_Y is not invertible modulo P")
        return v


def _ratfunc_solve(cols, rhs):
    """x with sum_k x_k cols[k] = rhs, or None when rhs is outside the span.

    The columns must be linearly independent.
    """
    n = len(rhs)
    k = len(cols)
    M = [[cols[c][i] for c in range(k)] + [rhs[i]] for i in range(n)]
    piv_rows = []
    row = 0
    for c in range(k):
        p = next((i for i in range(row, n) if not M[i][c].is_zero()), None)
        if p is None:
            raise AssertionError("dependent columns")
        M[row], M[p] = M[p], M[row]
        inv = M[row][c].inverse()
        M[row] = [x * inv if not x.is_zero() else x for x in M[row]]
        for i in range(n):
            if i != row and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [x - f * y if not y.is_zero() else x for x, y in zip(M[i], M[row])]
        piv_rows.append(row)
        row += 1
    for i in range(row, n):
        if not M[i][k].is_zero():
            return None
    return [M[i][k] for i in piv_rows]


def _lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    return (a * b).exact_div(a.gcd(b)).monic()


def _assemble(F, nums_dens, shift, var_form):
    """Cleared operator d^r - sum A_i d^i from A_i = num_i / den_i."""
    L = UniPoly.one(F)
    for _, d in nums_dens:
        L = _lcm(L, d)
    coeffs = [-(n * L.exact_div(d)) for n, d in nums_dens] + [L]
    if shift:
        coeffs = [c.shift(F.neg(F(shift))) for c in coeffs]
    op = DiffOp(F, coeffs, "d_dx").canonical()
    if var_form == "theta":
        op = op.to_theta().canonical()
    return op


def cockle_fraction(P: BiPoly, var_form: str = "d_dx", trace: bool = False):
    """(operator, r) by exact linear algebra over K(X)."""
    _check_h(P)
    F = P.field
    R = _FracQuotient(P)
    V0 = R.reduce([RatFunc(UniPoly.zero(F)), RatFunc.const(F, 1)])
    V1 = R.mul(R.from_bipoly(-P.diff_x()), R.inverse(R.from_bipoly(P.diff_y())))
    V = [V0]
    k = 0
    while True:
        Vn = V1 if k == 0 else R.add(R.dx(V[-1]), R.mul(V1, R.dy(V[-1])))
        k += 1
        sol = _ratfunc_solve(V, Vn)
        if sol is not None:
            break
        V.append(Vn)
        if k > R.m:
            raise AssertionError("no relation up to order D_Y")
    r = k
    op = _assemble(F, [(a.num, a.den) for a in sol], 0, var_form)
    if trace:
        return op, r, CockleTrace(r, 0, V + [Vn], [(a.num, a.den) for a in sol])
    return op, r


# -- series backend ------------------------------------------------------

class _SeriesQuotient:
    """K[[X]]/(X^n)[Y]/(Q) for Q with lc_Y(Q)(0) != 0.

    Elements are arrays of shape (k, m), k <= n, column j = coefficient of Y^j.
    """

    def __init__(self, Q: BiPoly, n: int):
        F = self.F = Q.field
        m = self.m = Q.degree_y
        self.n = n
        lc = Q.lc_y().padded(n)
        lcinv = series_inverse(F, lc, n)
        low = F.zeros((n, m))
        for j in range(m):
            low[:, j] = series_mul(F, Q.coeff_y(j).padded(n), lcinv, n)
        self.low0 = UniPoly(F, list(low[0]) + [F.one], "Y")
        R0 = F.red(-low)
        self.R = [R0]
        for _ in range(m - 2):
            prev = self.R[-1]
            nxt = F.zeros((n, m))
            nxt[:, 1:] = prev[:, :m - 1]
            nxt = F.red(nxt + series_mul(F, prev[:, m - 1].reshape(-1, 1), R0, n))
            self.R.append(nxt)

    def reduce(self, C):
        F, m = self.F, self.m
        k = C.shape[0]
        out = F.zeros((k, m))
        w = min(m, C.shape[1])
        out[:, :w] = C[:, :w]
        for j in range(C.shape[1] - m):
            col = C[:, m + j]
            if np.any(col != 0):
                out = F.red(out + series_mul(F, col.reshape(-1, 1), self.R[j][:k], k))
        return out

    def mul(self, a, b, k=None):
        k = min(a.shape[0], b.shape[0]) if k is None else k
        return self.reduce(series_mul(self.F, a[:k], b[:k], k))

    def from_bipoly(self, Q: BiPoly, k):
        F = self.F
        C = F.zeros((k, max(Q.degree_y + 1, 1)))
        rows = min(k, Q.coeffs.shape[0])
        if Q.coeffs.size:
            C[:rows, : Q.coeffs.shape[1]] = Q.coeffs[:rows]
        return self.reduce(C)

    def inverse(self, u):
        F, m = self.F, self.m
        k = u.shape[0]
        g, s, _ = UniPoly(F, u[0].copy(), "Y").xgcd(self.low0)
        if g.deg != 0:
            raise ZeroDivisorFound(g, "element not invertible at X = 0")
        inv = F.zeros((1, m))
        inv[0, : len(s.coeffs)] = s.coeffs
        prec = 1
        while prec < k:
            prec = min(2 * prec, k)
            ip = _pad(F, inv, prec)
            e = F.red(-self.mul(u[:prec], ip, prec))
            e[0, 0] = F.add(e[0, 0], 2)
            inv = self.mul(ip, e, prec)
        return inv[:k]

    def dx(self, a):
        return series_derivative(self.F, a)

    def dy(self, a):
        F, m = self.F, self.m
        out = F.zeros(a.shape)
        if m > 1:
            out[:, : m - 1] = F.red(a[:, 1:] * F.arange(1, m - 1).reshape(1, -1))
        return out


def _pad(F, a, n):
    if a.shape[0] >= n:
        return a[:n]
    out = F.zeros((n,) + a.shape[1:])
    out[: a.shape[0]] = a
    return out


def _v_sequence(Q: BiPoly, n: int, k_max: int):
    """V_0..V_k_max over K[[X]]/(X^n); V_k carries precision n - k."""
    S = _SeriesQuotient(Q, n)
    F = Q.field
    m = S.m
    V0 = F.zeros((n, m + 1))
    V0[0, 1] = F.one
    V0 = S.reduce(V0)
    V = [V0]
    if k_max == 0:
        return V
    V1 = S.mul(S.from_bipoly(-Q.diff_x(), n), S.inverse(S.from_bipoly(Q.diff_y(), n)))
    V.append(V1)
    for _ in range(1, k_max):
        prev = V[-1]
        d = S.dx(prev)
        k = d.shape[0]
        V.append(F.red(d + S.mul(V1[:k], S.dy(prev)[:k], k)))
    return V


def rank_profile(P: BiPoly, a) -> int:
    """r_a: first k with V_k(a) in the span of V_0(a)..V_{k-1}(a).

    r_a equals the resolvent order at a lucky point and is smaller elsewhere.
    Requires lc_Y(P)(a) * disc(a) != 0.
    """
    F = P.field
    Q = P.shift_x(a)
    m = Q.degree_y
    V = _v_sequence(Q, m + 1, m)
    rows = []
    for k, Vk in enumerate(V):
        rows.append(Vk[0])
        if rank(F, F.coerce(np.array(rows))) < k + 1:
            return k
    return m


def find_lucky_point(P: BiPoly, mode: str = "probabilistic", seed=None, samples: int = 5):
    """(a, r) with a lucky for P and r the resolvent order."""
    F = P.field
    bad = _bad_poly(P)
    m = P.degree_y
    if mode == "deterministic":
        budget = max(bad.deg, 0) + max(eta(P.degree_x, m, m), 0) + 1
        if not F.is_rational and F.modulus < budget:
            raise ValueError(f"field too small: need {budget} candidate points, have {F.modulus}")
        cands = range(budget)
        want = None
    elif mode == "probabilistic":
        want = samples if F.is_rational else min(samples, F.modulus)
        if F.is_rational:
            cands = _count_from(0)
        else:
            rng = np.random.default_rng(seed)
            cands = (int(rng.integers(0, F.modulus)) for _ in range(200 * want + F.modulus))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    best_a, best_r = None, 0
    seen = 0
    for a in cands:
        if bad(a) == 0:
            continue
        ra = rank_profile(P, a)
        seen += 1
        if ra > best_r:
            best_a, best_r = F(a), ra
        if best_r == m or (want is not None and seen >= want):
            break
    if best_a is None:
        raise HypothesisError("H_b", "no candidate point avoids lc * disc")
    return best_a, best_r


def _count_from(i):
    while True:
        yield i
        i += 1


def cockle_series(P: BiPoly, a, r: int, var_form: str = "d_dx", trace: bool = False):
    """The resolvent from a lucky point a and the true order r."""
    F = P.field
    _check_h(P)
    a = F(a)
    Q = P.shift_x(a)
    m = Q.degree_y
    if not 1 <= r <= m:
        raise ValueError(f"order r={r} outside 1..{m}")
    if Q.lc_y()(0) == 0:
        raise ReconstructionError(f"leading coefficient vanishes at a = {a}")
    e = max(eta(Q.degree_x, m, r), 0)
    N = 2 * e + 1
    try:
        V = _v_sequence(Q, N + r, r)
    except ZeroDivisorFound as exc:
        raise ReconstructionError(f"a = {a} is not lucky: {exc}") from exc
    B = F.zeros((N, m, r))
    for i in range(r):
        B[:, :, i] = V[i][:N]
    b = V[r][:N].reshape(N, m, 1)
    rows = independent_rows(F, B[0])
    if len(rows) < r:
        raise ReconstructionError(f"a = {a} is not lucky: V_0..V_{r - 1} dependent at a")
    Bs = B[:, rows, :]
    bs = b[:, rows, :]
    # Newton iteration for the inverse of the r x r series matrix
    eye = F.zeros((r, r))
    for i in range(r):
        eye[i, i] = F.one
    inv = inverse(F, Bs[0]).reshape(1, r, r)
    k = 1
    while k < N:
        k2 = min(2 * k, N)
        ip = _pad(F, inv, k2)
        E = F.red(-series_matmul(F, Bs[:k2], ip, k2))
        E[0] = F.red(E[0] + eye)
        inv = F.red(ip + series_matmul(F, ip, E, k2))
        k = k2
    A = series_matmul(F, inv, bs, N)
    if not np.array_equal(series_matmul(F, B, A, N), b):
        raise ReconstructionError("V_r is not in the span of V_0..V_{r-1}: r is wrong or a unlucky")
    rel = []
    for i in range(r):
        num, den = pade(TruncSeries(F, A[:, i, 0].copy()), e, e)
        if den[0] == 0:
            raise ReconstructionError("Pade denominator vanishes at the expansion point")
        rel.append((num, den))
    op = _assemble(F, rel, a, var_form)
    if trace:
        return op, CockleTrace(r, a, V, rel)
    return op


def resolvent(P: BiPoly, method: str = "series", var_form: str = "d_dx", seed=None,
              mode: str = "probabilistic", retries: int = 5):
    """(operator, r) by the chosen backend; the series backend retries unlucky points."""
    if method == "fraction":
        return cockle_fraction(P, var_form)
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    last = None
    for attempt in range(retries):
        s = None if seed is None else seed + attempt
        a, r = find_lucky_point(P, mode, seed=s)
        try:
            return cockle_series(P, a, r, var_form), r
        except ReconstructionError as exc:
            last = exc
            if mode == "deterministic":
                break
    raise last
