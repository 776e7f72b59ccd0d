"""Pade and Pade-Hermite approximation over a field or over A = K[Y]/(p).

``ph_approx`` finds polynomials l_0..l_k of degree <= B_X, not all zero,
with sum_i l_i Z_i = 0 mod X^Sigma, Sigma = (B_X + 1)(k + 1) - 1. Two
solvers sit behind it: an order basis built one X-adic order at a time
(the default) and Gaussian elimination on the Sigma x (Sigma + 1) linear
system (the reference). Over A every division goes through a unit; when a
nonzero non-unit turns up, the modulus is split with a gcd, the inputs are
projected to the cofactor, and the solver restarts.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import QuotientAlgebra, project_array
from .arith.field import FieldSpec
from .arith.linalg import nullspace
from .arith.modular import crt_pair, lift_vector, primes_from, reduce_fractions
from .arith.poly import UniPoly
from .arith.series import TruncSeries
from .errors import ReconstructionError, ZeroDivisorFound


def pade(f: TruncSeries, d_num: int, d_den: int):
    """(num, den) with den * f = num mod X^(d_num + d_den + 1).

    Classical extended Euclid on (X^N, f). den is scaled to den(0) = 1 when
    den(0) != 0 and made monic otherwise.
    """
    F = f.field
    N = d_num + d_den + 1
    if f.precision < N:
        raise ValueError(f"need precision {N}, series has {f.precision}")
    if F.is_rational and N > _MODULAR_PADE_MIN:
        res = _pade_multimodular(f.coeffs[:N], d_num, d_den)
        if res is not None:
            return res
    return _pade_euclid(F, f.coeffs[:N], d_num, d_den)


def _pade_euclid(F, coeffs, d_num, d_den):
    N = d_num + d_den + 1
    r0 = UniPoly.monomial(F, N)
    r1 = UniPoly(F, coeffs.copy(), reduce=False)
    t0 = UniPoly.zero(F)
    t1 = UniPoly.one(F)
    while r1.deg > d_num:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        t0, t1 = t1, t0 - q * t1
    num, den = r1, t1
    if den.is_zero() or den.deg > d_den:
        raise ReconstructionError("no Pade approximant of the requested type")
    c = den[0]
    s = F.inv(c) if c != 0 else F.inv(den.lc())
    return num * s, den * s


# Over Q the remainders of the Euclidean algorithm swell quickly. Above this
# length the approximant is computed modulo word-size primes, lifted by CRT
# and rational reconstruction, and accepted only after an exact check over Q.
_MODULAR_PADE_MIN = 24


def _pade_multimodular(coeffs, d_num, d_den, max_primes=400):
    """Reduced Pade approximant over Q (den(0) = 1, else monic), or None to fall back."""
    N = d_num + d_den + 1
    Q = FieldSpec.rational()
    f = UniPoly(Q, coeffs.copy(), reduce=False)
    images = None
    shape = None
    modulus = 1
    last = None
    for count, p in enumerate(primes_from()):
        if count >= max_primes:
            return None
        red = reduce_fractions(coeffs, p)
        if red is None:
            continue
        Fp = FieldSpec.prime(p)
        try:
            num, den = _pade_euclid(Fp, Fp.array(red), d_num, d_den)
        except ReconstructionError:
            return None
        g = num.gcd(den)
        if g.deg > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        s = Fp.inv(den[0]) if den[0] != 0 else Fp.inv(den.lc())
        num, den = num * s, den * s
        sh = (num.deg, den.deg, den[0] != 0)
        vec = [int(c) for c in num.padded(sh[0] + 1)] + [int(c) for c in den.padded(sh[1] + 1)]
        if shape is None or sh > shape:
            shape, images, modulus, last = sh, vec, p, None
            continue
        if sh < shape:
            continue
        images = [crt_pair(u, modulus, v, p)[0] for u, v in zip(images, vec)]
        modulus *= p
        cand = lift_vector(images, modulus)
        if cand is None:
            continue
        if cand != last:
            last = cand
            continue
        num_q = UniPoly(Q, Q.array(cand[: shape[0] + 1]))
        den_q = UniPoly(Q, Q.array(cand[shape[0] + 1:]))
        if (den_q * f).truncate(N) == num_q.truncate(N):
            return num_q, den_q


@dataclass
class PHSolution:
    """Approximant coefficients and the algebra it is valid over.

    ``ells`` has shape (k, B_X + 1) over a field and (k, B_X + 1, m) over an
    algebra of dimension m; ``algebra_factor`` is None over a field.
    """

    ells: np.ndarray
    field: FieldSpec
    algebra_factor: UniPoly | None = None
    splits: int = 0

    def polys(self):
        """l_0..l_k as UniPoly (field case)."""
        if self.ells.ndim != 2:
            raise TypeError("algebra-valued approximant; use components()")
        return [UniPoly(self.field, row.copy(), reduce=False) for row in self.ells]

    def components(self):
        """[[l_0^(c), ..., l_k^(c)] for c in basis index order] (algebra case)."""
        if self.ells.ndim == 2:
            return [self.polys()]
        m = self.ells.shape[2]
        return [[UniPoly(self.field, self.ells[i, :, c].copy(), reduce=False)
                 for i in range(self.ells.shape[0])] for c in range(m)]


def _sigma(k, B_X):
    return (B_X + 1) * k - 1


def ph_residual(Z, ells, ring, n):
    """sum_i l_i Z_i mod X^n, computed by direct series products."""
    F = ring if isinstance(ring, FieldSpec) else ring.field
    acc = None
    for i in range(len(Z)):
        li = ells[i]
        if isinstance(ring, FieldSpec):
            t = F.conv_trunc(_padto(F, li, n), Z[i][:n], n)
        else:
            t = ring.series_mul(_padto(F, li, n), Z[i][:n], n)
        acc = t if acc is None else F.red(acc + t)
    return acc


def _padto(F, a, n):
    out = F.zeros((n,) + a.shape[1:])
    k = min(n, a.shape[0])
    out[:k] = a[:k]
    return out


def _as_arrays(Z, n):
    return [z.coeffs[:n] if isinstance(z, TruncSeries) else z[:n] for z in Z]


def ph_approx(Z, B_X: int, method: str = "order_basis") -> PHSolution:
    """Pade-Hermite approximant of type B_X for series over a field."""
    arrs = _as_arrays(Z, None)
    F = Z[0].field if isinstance(Z[0], TruncSeries) else None
    if F is None:
        raise TypeError("ph_approx expects TruncSeries inputs")
    k = len(arrs)
    S = _sigma(k, B_X)
    if any(len(a) < S for a in arrs):
        raise ValueError(f"series precision below Sigma = {S}")
    arrs = [a[:S] for a in arrs]
    if method == "gauss":
        ells = _ph_gauss_field(F, arrs, B_X)
    else:
        ells = _ph_order_basis(F, None, arrs, B_X)
    return PHSolution(ells, F, None)


def ph_approx_algebra(Z, B_X: int, method: str = "order_basis") -> PHSolution:
    """Pade-Hermite approximant over A with gcd splitting on zero divisors."""
    A: QuotientAlgebra = Z[0].ring
    F = A.field
    k = len(Z)
    S = _sigma(k, B_X)
    arrs = [z.coeffs[:S] for z in Z]
    if any(len(a) < S for a in arrs):
        raise ValueError(f"series precision below Sigma = {S}")
    splits = 0
    while True:
        try:
            if A.m == 1:
                flat = [a[:, 0].copy() for a in arrs]
                ells1 = _ph_gauss_field(F, flat, B_X) if method == "gauss" else \
                    _ph_order_basis(F, None, flat, B_X)
                ells = ells1.reshape(ells1.shape + (1,))
            elif method == "gauss":
                ells = _ph_gauss_algebra(A, arrs, B_X)
            else:
                ells = _ph_order_basis(F, A, arrs, B_X)
            return PHSolution(ells, F, A.p, splits)
        except ZeroDivisorFound as exc:
            g = exc.factor
            cofactor = (A.p // g).monic()
            newA = QuotientAlgebra(cofactor, check=False)
            arrs = [project_array(A, newA, a) for a in arrs]
            A = newA
            splits += 1


# -- order basis -------------------------------------------------------------

def _ph_order_basis(F, A, arrs, B_X):
    """Order basis by one-order-at-a-time elimination; returns the minimal row."""
    k = len(arrs)
    S = len(arrs[0])
    m = None if A is None else A.m
    tail = () if A is None else (m,)
    R = F.zeros((k, S) + tail)
    for i, a in enumerate(arrs):
        R[i] = a
    dmax = S + 1
    basis = F.zeros((k, k, dmax + 1) + tail)
    one = F.one
    for i in range(k):
        if A is None:
            basis[i, i, 0] = one
        else:
            basis[i, i, 0, 0] = one
    deg = np.zeros(k, dtype=np.int64)
    for t in range(S):
        e = R[:, t]
        nz = np.nonzero(e if A is None else np.any(e != 0, axis=-1))[0]
        if len(nz) == 0:
            continue
        piv = int(nz[np.lexsort((nz, deg[nz]))[0]])
        others = nz[nz != piv]
        top = int(deg.max()) + 2
        if len(others):
            if A is None:
                inv = F.inv(e[piv])
                f = F.scale(e[others], inv)
                basis[others, :, :top] = F.red(basis[others, :, :top]
                                              - F.red(f[:, None, None] * basis[piv, :, :top]))
                R[others, t:] = F.red(R[others, t:] - F.red(f[:, None] * R[piv, t:]))
            else:
                inv = _alg_inverse(A, e[piv])
                f = A.mul_arrays(e[others], inv)
                basis[others, :, :top] = F.red(basis[others, :, :top]
                                              - A.mul_arrays(f[:, None, None, :], basis[piv, :, :top]))
                R[others, t:] = F.red(R[others, t:] - A.mul_arrays(f[:, None, :], R[piv, t:]))
        # multiply the pivot row by X
        if deg[piv] + 1 > dmax:
            raise AssertionError("order basis degree overflow")
        basis[piv, :, 1:top + 1] = basis[piv, :, :top].copy()
        basis[piv, :, 0] = 0
        R[piv, t + 1:] = R[piv, t:S - 1].copy()
        R[piv, t] = 0
        deg[piv] += 1
    best = int(np.lexsort((np.arange(k), deg))[0])
    if deg[best] > B_X:
        raise AssertionError("order basis row degree exceeds B_X")
    return basis[best, :, :B_X + 1].copy()


def _alg_inverse(A, v):
    from .algebra import AlgElem
    return AlgElem(A, v.copy()).inverse().rep


# -- Gaussian elimination -----------------------------------------------------

def _ph_matrix(F, arrs, B_X, tail=()):
    """Sigma x (k (B_X+1)) matrix; column i*(B_X+1) + t multiplies X^t Z_i."""
    k = len(arrs)
    S = len(arrs[0])
    M = F.zeros((S, k * (B_X + 1)) + tail)
    for i, a in enumerate(arrs):
        for t in range(B_X + 1):
            M[t:, i * (B_X + 1) + t] = a[: S - t]
    return M


def _ph_gauss_field(F, arrs, B_X):
    M = _ph_matrix(F, arrs, B_X)
    K = nullspace(F, M)
    if K.shape[0] == 0:
        raise AssertionError("underdetermined system with trivial kernel")
    return K[0].reshape(len(arrs), B_X + 1)


def _ph_gauss_algebra(A, arrs, B_X):
    F = A.field
    M = _ph_matrix(F, arrs, B_X, (A.m,))
    rows, cols = M.shape[:2]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nzr = np.nonzero(np.any(M[r:, c] != 0, axis=-1))[0]
        if len(nzr) == 0:
            continue
        i = r + int(nzr[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = _alg_inverse(A, M[r, c])
        M[r, c:] = A.mul_arrays(M[r, c:], inv)
        f = M[:, c].copy()
        f[r] = 0
        others = np.nonzero(np.any(f != 0, axis=-1))[0]
        if len(others):
            M[others, c:] = F.red(M[others, c:] - A.mul_arrays(f[others][:, None, :], M[r, c:][None]))
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in set(pivots)]
    if not free:
        raise AssertionError("underdetermined system with trivial kernel")
    fc = free[0]
    v = F.zeros((cols, A.m))
    v[fc, 0] = F.one
    for row, c in enumerate(pivots):
        v[c] = F.red(-M[row, fc])
    return v.reshape(len(arrs), B_X + 1, A.m)
