"""Truncated power series in X with coefficients in a field or in K[Y]/(p).

A series of precision n is stored as its first n coefficients: an array of
shape (n,) over a field, or (n, m) over an m-dimensional quotient algebra
(one column per basis element 1, y, ..., y^(m-1)). Results of binary
operations carry the smaller precision.
"""
from __future__ import annotations

import numpy as np

from .field import FieldSpec
from .poly import UniPoly, conv2d


def ring_field(ring) -> FieldSpec:
    return ring if isinstance(ring, FieldSpec) else ring.field


def series_mul(ring, a, b, n):
    """Product of coefficient arrays truncated to n terms."""
    n = min(n, len(a), len(b)) if n is not None else len(a) + len(b) - 1
    if isinstance(ring, FieldSpec):
        if a.ndim == 1 and b.ndim == 1:
            return ring.conv_trunc(a, b, n)
        a2 = a if a.ndim == 2 else a.reshape(-1, 1)
        b2 = b if b.ndim == 2 else b.reshape(-1, 1)
        return _pad_rows(ring, conv2d(ring, a2[:n], b2[:n], n), n)
    return ring.series_mul(a, b, n)


def _pad_rows(F, arr, n):
    if arr.shape[0] >= n:
        return arr[:n]
    out = F.zeros((n,) + arr.shape[1:])
    out[: arr.shape[0], : arr.shape[1]] = arr
    return out


def series_inverse(ring, a, n):
    """1/a mod X^n by Newton iteration; a[0] must be invertible."""
    if not isinstance(ring, FieldSpec):
        return ring.series_inv(a, n)
    F = ring
    a = a[:n]
    g = F.zeros(1)
    g[0] = F.inv(a[0])
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        e = series_mul(F, a[:prec], _pad1(F, g, prec), prec)
        e = F.red(-e)
        e[0] = F.add(e[0], 2)
        g = series_mul(F, _pad1(F, g, prec), e, prec)
    return _pad1(F, g, n)


def _pad1(F, g, n):
    if len(g) >= n:
        return g[:n]
    out = F.zeros(n)
    out[: len(g)] = g
    return out


def series_derivative(field: FieldSpec, a):
    """d/dX of a coefficient array; precision drops by one."""
    n = len(a)
    if n <= 1:
        return field.zeros((0,) + a.shape[1:])
    k = field.arange(1, n - 1)
    if a.ndim == 2:
        k = k.reshape(-1, 1)
    return field.red(a[1:] * k)


def series_theta(field: FieldSpec, a):
    """X d/dX of a coefficient array; precision is kept."""
    k = field.arange(0, len(a))
    if a.ndim == 2:
        k = k.reshape(-1, 1)
    return field.red(a * k)


class TruncSeries:
    """A power series known modulo X^precision."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs

    @property
    def field(self) -> FieldSpec:
        return ring_field(self.ring)

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_poly(cls, poly: UniPoly, n: int):
        return cls(poly.field, poly.padded(n))

    @classmethod
    def zero(cls, ring, n):
        F = ring_field(ring)
        shape = (n,) if isinstance(ring, FieldSpec) else (n, ring.m)
        return cls(ring, F.zeros(shape))

    def coeff(self, k):
        return self.coeffs[k]

    def truncate(self, n):
        return TruncSeries(self.ring, self.coeffs[:n].copy())

    def to_poly(self) -> UniPoly:
        if not isinstance(self.ring, FieldSpec):
            raise TypeError("only series over a field convert to UniPoly")
        return UniPoly(self.ring, self.coeffs.copy(), reduce=False)

    def _binary(self, other):
        n = min(self.precision, other.precision)
        return n, self.coeffs[:n], other.coeffs[:n]

    def __add__(self, other):
        n, a, b = self._binary(other)
        return TruncSeries(self.ring, self.field.red(a + b))

    def __sub__(self, other):
        n, a, b = self._binary(other)
        return TruncSeries(self.ring, self.field.red(a - b))

    def __neg__(self):
        return TruncSeries(self.ring, self.field.red(-self.coeffs))

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            n = min(self.precision, other.precision)
            if isinstance(other.ring, FieldSpec) and not isinstance(self.ring, FieldSpec):
                # scalar series times algebra series
                return TruncSeries(self.ring, series_mul(self.field, other.coeffs, self.coeffs, n))
            if isinstance(self.ring, FieldSpec) and not isinstance(other.ring, FieldSpec):
                return TruncSeries(other.ring, series_mul(self.field, self.coeffs, other.coeffs, n))
            return TruncSeries(self.ring, series_mul(self.ring, self.coeffs, other.coeffs, n))
        return TruncSeries(self.ring, self.field.scale(self.coeffs, self.field(other)))

    __rmul__ = __mul__

    def inverse(self, n=None):
        n = self.precision if n is None else min(n, self.precision)
        return TruncSeries(self.ring, series_inverse(self.ring, self.coeffs, n))

    def derivative(self):
        return TruncSeries(self.ring, series_derivative(self.field, self.coeffs))

    def theta(self):
        return TruncSeries(self.ring, series_theta(self.field, self.coeffs))

    def is_zero(self) -> bool:
        return not np.any(self.coeffs != 0)

    def valuation(self):
        flat = self.coeffs if self.coeffs.ndim == 1 else np.any(self.coeffs != 0, axis=1)
        nz = np.nonzero(flat)[0]
        return int(nz[0]) if len(nz) else None

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.precision, other.precision)
        return bool(np.all(self.coeffs[:n] == other.coeffs[:n]))

    def __repr__(self):
        F = self.field
        if self.coeffs.ndim == 1:
            shown = [F.to_str(c) for c in self.coeffs[:8]]
        else:
            shown = [[F.to_str(c) for c in row] for row in self.coeffs[:4]]
        return f"TruncSeries({shown}{'...' if self.precision > 8 else ''}, O(X^{self.precision}))"


def series_matmul(field: FieldSpec, A, B, n):
    """Product of matrices of series, A of shape (n, r, s) and B of shape (n, s, t),
    truncated to n terms."""
    n = min(n, A.shape[0], B.shape[0])
    A = A[:n]
    B = B[:n]
    r, s = A.shape[1], A.shape[2]
    t = B.shape[2]
    F = field
    if F.small:
        p = F.modulus
        size = 1 << (2 * n - 1).bit_length()
        budget = float(p - 1) ** 2 * s * n * max(1.0, np.log2(2 * n))
        if budget < 2.0 ** 49:
            fa = np.fft.rfft(A.astype(np.float64), size, axis=0)
            fb = np.fft.rfft(B.astype(np.float64), size, axis=0)
            fc = np.einsum("fij,fjk->fik", fa, fb)
            c = np.fft.irfft(fc, size, axis=0)[:n]
            return np.rint(c).astype(np.int64) % p
    out = F.zeros((n, r, t))
    for i in range(r):
        for k in range(t):
            acc = F.zeros(n)
            for j in range(s):
                acc = F.red(acc + F.conv_trunc(A[:, i, j], B[:, j, k], n))
            out[:, i, k] = acc
    return out
