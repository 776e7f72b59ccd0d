"""Exact dense linear algebra over a field: echelon forms, kernels, solving.

Reduced row echelon form is unique, so the two code paths below (a plain
column sweep and a recursive blocked elimination for small primes that
pushes the bulk of the work through float64 matrix products) return the
same matrix.
"""
from __future__ import annotations

import numpy as np

from .field import FieldSpec, fmod_float

_BLOCKED_MIN = 96
_BASE_ROWS = 24
_FLOAT_PRIME_LIMIT = 1 << 20


def rref(field: FieldSpec, M):
    """Return (R, pivots): the nonzero rows of the RREF of M and their pivot columns."""
    M = field.coerce(np.asarray(M))
    if M.ndim != 2:
        raise ValueError("rref expects a matrix")
    m, n = M.shape
    if m == 0 or n == 0:
        return field.zeros((0, n)), []
    if field.is_prime and field.modulus < _FLOAT_PRIME_LIMIT and field.small and min(m, n) >= _BLOCKED_MIN:
        R, piv = _rref_float(M.astype(np.float64), float(field.modulus))
        return R.astype(np.int64), piv
    return _rref_generic(field, M)


def _rref_generic(field, M):
    A = M.copy()
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r, c:] = field.scale(A[r, c:], field.inv(A[r, c]))
        f = A[:, c].copy()
        f[r] = 0
        rows = np.nonzero(f)[0]
        if len(rows):
            A[rows, c:] = field.red(A[rows, c:] - field.red(np.outer(f[rows], A[r, c:])))
        pivots.append(c)
        r += 1
    return A[:r].copy(), pivots


def _mulsub_float(B, C, E, p):
    """B - C @ E mod p, with the inner dimension chunked to stay exact."""
    chunk = max(1, int((1 << 52) // ((p - 1) ** 2)))
    for k in range(0, C.shape[1], chunk):
        B -= C[:, k:k + chunk] @ E[k:k + chunk]
        fmod_float(B, p)
    return B


def _rref_float(A, p):
    m, n = A.shape
    if m <= _BASE_ROWS:
        E, piv = _rref_base(A, p)
    else:
        h = m // 2
        E1, pc1 = _rref_float(A[:h], p)
        B = A[h:].copy()
        if pc1:
            _mulsub_float(B, B[:, pc1].copy(), E1, p)
        E2, pc2 = _rref_float(B, p)
        del B
        if pc2:
            _mulsub_float(E1, E1[:, pc2].copy(), E2, p)
        E = np.vstack([E1, E2])
        piv = pc1 + pc2
    if piv and any(piv[k] > piv[k + 1] for k in range(len(piv) - 1)):
        order = np.argsort(piv, kind="stable")
        E = E[order]
        piv = [piv[k] for k in order]
    return E, piv


def _rref_base(A, p):
    A = A.copy()
    m, n = A.shape
    piv = []
    r = 0
    c0 = 0
    while r < m and c0 < n:
        cols = np.nonzero(np.any(A[r:, c0:] != 0, axis=0))[0]
        if len(cols) == 0:
            break
        c = c0 + int(cols[0])
        i = r + int(np.nonzero(A[r:, c])[0][0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = float(pow(int(A[r, c]), -1, int(p)))
        row = A[r, c:] * inv
        fmod_float(row, p)
        A[r, c:] = row
        f = A[:, c].copy()
        f[r] = 0.0
        rows = np.nonzero(f)[0]
        if len(rows):
            sub = A[rows, c:] - np.outer(f[rows], row)
            A[rows, c:] = fmod_float(sub, p)
        piv.append(c)
        r += 1
        c0 = c + 1
    return A[:r], piv


def rank(field: FieldSpec, M) -> int:
    return len(rref(field, M)[1])


def nullspace(field: FieldSpec, M):
    """Basis of {v : M v = 0}, one row per free column, in column order.

    The basis vector attached to free column f has v[f] = 1 and zeros on
    the other free columns.
    """
    M = field.coerce(np.asarray(M))
    n = M.shape[1]
    R, piv = rref(field, M)
    free = [c for c in range(n) if c not in set(piv)]
    K = field.zeros((len(free), n))
    if not free:
        return K
    piv_arr = np.array(piv, dtype=np.int64)
    for k, f in enumerate(free):
        K[k, f] = field.one
        if len(piv):
            K[k, piv_arr] = field.red(-R[:, f])
    return K


def solve(field: FieldSpec, M, b):
    """One solution x of M x = b (free variables set to zero), or None."""
    M = field.coerce(np.asarray(M))
    b = field.coerce(np.asarray(b)).reshape(-1, 1)
    aug = np.hstack([M, b])
    R, piv = rref(field, aug)
    n = M.shape[1]
    if piv and piv[-1] == n:
        return None
    x = field.zeros(n)
    for row, c in enumerate(piv):
        x[c] = R[row, n]
    return x


def inverse(field: FieldSpec, M):
    M = field.coerce(np.asarray(M))
    n = M.shape[0]
    eye = field.zeros((n, n))
    for i in range(n):
        eye[i, i] = field.one
    R, piv = rref(field, np.hstack([M, eye]))
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return R[:, n:].copy()


def independent_rows(field: FieldSpec, M):
    """Indices of the first maximal set of linearly independent rows."""
    M = field.coerce(np.asarray(M))
    _, piv = rref(field, M.T.copy())
    return piv
