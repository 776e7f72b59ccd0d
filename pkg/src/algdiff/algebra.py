"""The quotient algebra A = K[Y]/(p) for squarefree p, a product of fields.

Elements are coefficient vectors in the basis 1, y, ..., y^(m-1), m = deg p.
Division either succeeds or hands back the proper factor gcd(rep, p), which
is what the splitting strategy of the Pade-Hermite solver consumes. The
module also carries the kernels for truncated series over A: an array of
shape (n, m) holds n coefficients.
"""
from __future__ import annotations

import numpy as np

from .arith.field import FieldSpec
from .arith.poly import UniPoly, conv2d
from .errors import ZeroDivisorFound


class QuotientAlgebra:
    def __init__(self, p: UniPoly, check: bool = True):
        if p.deg < 1:
            raise ValueError("the modulus must have degree at least 1")
        self.field: FieldSpec = p.field
        self.p = p.monic()
        self.p.var = "Y"
        self.m = self.p.deg
        if check:
            g = self.p.gcd(self.p.derivative())
            if g.deg > 0:
                raise ValueError(f"modulus {self.p} is not squarefree")
        F = self.field
        m = self.m
        # row j holds y^(m + j) reduced mod p, j = 0 .. m - 2
        R = F.zeros((max(m - 1, 0), m))
        cur = F.red(-self.p.coeffs[:m])
        for j in range(m - 1):
            R[j] = cur
            top = cur[m - 1]
            nxt = F.zeros(m)
            nxt[1:] = cur[:m - 1]
            if top:
                nxt = F.red(nxt - F.scale(self.p.coeffs[:m], top))
            cur = nxt
        self._red = R

    def __eq__(self, other):
        return isinstance(other, QuotientAlgebra) and self.p == other.p

    def __hash__(self):
        return hash(("A", self.p))

    def __repr__(self):
        return f"QuotientAlgebra({self.field}, {self.p})"

    # -- elements ---------------------------------------------------------
    def __call__(self, x) -> "AlgElem":
        if isinstance(x, AlgElem):
            if x.parent != self:
                raise ValueError("element of another algebra")
            return x
        if isinstance(x, UniPoly):
            return AlgElem(self, self.reduce_poly(x))
        if isinstance(x, np.ndarray):
            return AlgElem(self, self.reduce_rows(x.reshape(1, -1))[0])
        v = self.field.zeros(self.m)
        v[0] = self.field(x)
        return AlgElem(self, v)

    def y(self) -> "AlgElem":
        if self.m == 1:
            return self(UniPoly.x(self.field, "Y"))
        v = self.field.zeros(self.m)
        v[1] = self.field.one
        return AlgElem(self, v)

    def zero(self):
        return AlgElem(self, self.field.zeros(self.m))

    def one(self):
        return self(1)

    def reduce_poly(self, q: UniPoly):
        r = q % self.p
        return r.padded(self.m)

    def reduce_rows(self, arr):
        """Reduce rows of width w (w <= 2m - 1) to width m."""
        F = self.field
        m = self.m
        w = arr.shape[-1]
        if w <= m:
            out = F.zeros(arr.shape[:-1] + (m,))
            out[..., :w] = arr
            return out
        if w > 2 * m - 1:
            out = []
            for row in arr.reshape(-1, w):
                out.append(self.reduce_poly(UniPoly(F, row.copy(), "Y")))
            return np.array(out, dtype=arr.dtype).reshape(arr.shape[:-1] + (m,))
        flat = arr.reshape(-1, w)
        low = flat[:, :m]
        high = flat[:, m:]
        res = F.red(low + F.matmul(F.coerce(high), self._red[: w - m]))
        return res.reshape(arr.shape[:-1] + (m,))

    def mul_arrays(self, a, b):
        """Elementwise product of arrays of elements (last axis = basis)."""
        F = self.field
        m = self.m
        a, b = np.broadcast_arrays(a, b)
        shape = a.shape[:-1]
        acc = F.zeros(shape + (2 * m - 1,))
        for i in range(m):
            acc[..., i:i + m] = F.red(acc[..., i:i + m] + F.red(a[..., i:i + 1] * b))
        return self.reduce_rows(acc)

    def mult_matrix(self, e) -> np.ndarray:
        """Matrix M with v @ M = v * e for row vectors v."""
        F = self.field
        m = self.m
        rows = F.zeros((m, m))
        cur = self(e).rep.copy()
        for i in range(m):
            rows[i] = cur
            cur = self.reduce_rows(np.concatenate([F.zeros(1), cur]).reshape(1, -1))[0]
        return rows

    # -- series over A ----------------------------------------------------
    def series_mul(self, a, b, n):
        if a.ndim == 1:
            a = a.reshape(-1, 1)
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        c = conv2d(self.field, a[:n], b[:n], n)
        if c.shape[0] < n:
            pad = self.field.zeros((n, c.shape[1]))
            pad[: c.shape[0]] = c
            c = pad
        return self.reduce_rows(c)

    def series_inv(self, a, n):
        F = self.field
        g = F.zeros((1, self.m))
        g[0] = AlgElem(self, a[0].copy()).inverse().rep
        prec = 1
        while prec < n:
            prec = min(2 * prec, n)
            gp = _pad_rows(F, g, prec)
            e = F.red(-self.series_mul(a[:prec], gp, prec))
            e[0, 0] = F.add(e[0, 0], 2)
            g = self.series_mul(gp, e, prec)
        return _pad_rows(F, g, n)

    def series_from_poly(self, q: UniPoly, n):
        """The constant-in-Y series of a polynomial in X."""
        out = self.field.zeros((n, self.m))
        k = min(n, len(q.coeffs))
        out[:k, 0] = q.coeffs[:k]
        return out

    def eval_bipoly(self, P, phi, n):
        """P(X, phi) mod X^n for phi of shape (n, m), by Horner in Y."""
        F = self.field
        acc = F.zeros((n, self.m))
        for j in range(P.degree_y, -1, -1):
            acc = self.series_mul(acc, phi, n) if j < P.degree_y else acc
            col = P.coeffs[:, j]
            k = min(n, len(col))
            acc[:k, 0] = F.red(acc[:k, 0] + col[:k])
        return acc


def _pad_rows(F, g, n):
    if g.shape[0] >= n:
        return g[:n]
    out = F.zeros((n,) + g.shape[1:])
    out[: g.shape[0]] = g
    return out


class AlgElem:
    __slots__ = ("parent", "rep")

    def __init__(self, parent: QuotientAlgebra, rep):
        self.parent = parent
        self.rep = rep

    @property
    def field(self):
        return self.parent.field

    def poly(self) -> UniPoly:
        return UniPoly(self.field, self.rep.copy(), "Y", reduce=False)

    def _other(self, o):
        if isinstance(o, AlgElem):
            if o.parent != self.parent:
                raise ValueError("elements of different algebras")
            return o
        return self.parent(o)

    def __add__(self, o):
        o = self._other(o)
        return AlgElem(self.parent, self.field.red(self.rep + o.rep))

    __radd__ = __add__

    def __sub__(self, o):
        o = self._other(o)
        return AlgElem(self.parent, self.field.red(self.rep - o.rep))

    def __rsub__(self, o):
        return self._other(o) - self

    def __neg__(self):
        return AlgElem(self.parent, self.field.red(-self.rep))

    def __mul__(self, o):
        if not isinstance(o, AlgElem):
            return AlgElem(self.parent, self.field.scale(self.rep, self.field(o)))
        o = self._other(o)
        return AlgElem(self.parent, self.parent.mul_arrays(self.rep, o.rep))

    __rmul__ = __mul__

    def __pow__(self, e):
        out = self.parent.one()
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def is_zero(self):
        return not np.any(self.rep != 0)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, o):
        try:
            o = self._other(o)
        except (ValueError, TypeError):
            return NotImplemented
        return bool(np.all(self.rep == o.rep))

    def __hash__(self):
        return hash((self.parent, tuple(self.field.scalar(c) for c in self.rep)))

    def inverse(self) -> "AlgElem":
        """a^-1, or raise ZeroDivisorFound carrying gcd(rep, p)."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in A")
        g, s, _ = self.poly().xgcd(self.parent.p)
        if g.deg > 0:
            raise ZeroDivisorFound(g.monic(), f"{self} is a zero divisor")
        return AlgElem(self.parent, self.parent.reduce_poly(s))

    def __truediv__(self, o):
        return self * self._other(o).inverse()

    def __repr__(self):
        return f"AlgElem({self.poly()!s} mod {self.parent.p})".replace("Y", "y")

    def __str__(self):
        return str(self.poly()).replace("Y", "y")


def alg_mul(a: AlgElem, b: AlgElem) -> AlgElem:
    if a.parent != b.parent:
        raise ValueError("elements of different algebras")
    return a * b


def invert_or_split(a: AlgElem):
    """a^-1 as an AlgElem, or the monic proper factor gcd(rep(a), p) as a UniPoly."""
    if a.is_zero():
        raise ZeroDivisionError("invert_or_split of zero")
    try:
        return a.inverse()
    except ZeroDivisorFound as exc:
        return exc.factor


def project(a: AlgElem, p_tilde: UniPoly) -> AlgElem:
    """Image of a in K[Y]/(p_tilde), for a factor p_tilde of the modulus."""
    target = QuotientAlgebra(p_tilde, check=False)
    if not (a.parent.p % target.p).is_zero():
        raise ValueError(f"{p_tilde} does not divide {a.parent.p}")
    if target == a.parent:
        return a
    return target(a.poly())


def project_array(A_from: QuotientAlgebra, A_to: QuotientAlgebra, arr):
    """Project an array of elements (last axis = basis) into a factor algebra."""
    F = A_from.field
    m = A_to.m
    # image of y^j in the target for j < m_from
    imgs = F.zeros((A_from.m, m))
    for j in range(A_from.m):
        imgs[j] = A_to.reduce_poly(UniPoly.monomial(F, j, 1, "Y"))
    flat = arr.reshape(-1, A_from.m)
    out = F.matmul(F.coerce(flat), imgs)
    return out.reshape(arr.shape[:-1] + (m,))


def component_decompose(a: AlgElem):
    return [a.field.scalar(c) for c in a.rep]
