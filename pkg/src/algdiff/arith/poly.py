"""Dense univariate and bivariate polynomials over a ``FieldSpec``.

Coefficient arrays are ascending: ``UniPoly.coeffs[i]`` multiplies X**i and
``BiPoly.coeffs[i, j]`` multiplies X**i Y**j. Both types are immutable and
kept trimmed, so the zero polynomial has an empty coefficient array.
"""
from __future__ import annotations

import math
from fractions import Fraction

import flint
import numpy as np

from .field import FieldSpec

NEG_INF = -math.inf


def _trim1(c):
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return c[:0]
    return c[: nz[-1] + 1]


def _trim2(c):
    if c.size == 0:
        return c.reshape(0, 0)
    rows = np.nonzero(np.any(c != 0, axis=1))[0]
    if len(rows) == 0:
        return c[:0, :0]
    cols = np.nonzero(np.any(c != 0, axis=0))[0]
    return c[: rows[-1] + 1, : cols[-1] + 1]


class UniPoly:
    """A polynomial in one variable (named only for printing)."""

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field: FieldSpec, coeffs=(), var: str = "X", reduce: bool = True):
        self.field = field
        if isinstance(coeffs, np.ndarray) and coeffs.dtype == field.dtype and not reduce:
            c = coeffs
        elif isinstance(coeffs, np.ndarray) and coeffs.dtype == field.dtype:
            c = field.red(coeffs)
        else:
            c = field.array(list(coeffs))
        self.coeffs = _trim1(c)
        self.var = var

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, field, var="X"):
        return cls(field, field.zeros(0), var, reduce=False)

    @classmethod
    def one(cls, field, var="X"):
        return cls.constant(field, 1, var)

    @classmethod
    def constant(cls, field, c, var="X"):
        return cls(field, [c], var)

    @classmethod
    def x(cls, field, var="X"):
        return cls(field, [0, 1], var)

    @classmethod
    def monomial(cls, field, n, c=1, var="X"):
        arr = field.zeros(n + 1)
        arr[n] = field(c)
        return cls(field, arr, var, reduce=False)

    def _new(self, coeffs, reduce=False):
        return UniPoly(self.field, coeffs, self.var, reduce=reduce)

    # -- basic data -------------------------------------------------------
    @property
    def degree(self):
        """Degree, with -inf for the zero polynomial."""
        n = len(self.coeffs)
        return n - 1 if n else NEG_INF

    @property
    def deg(self) -> int:
        """Degree with -1 for zero, convenient for index arithmetic."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def __bool__(self):
        return not self.is_zero()

    def lc(self):
        return self.field.scalar(self.coeffs[-1]) if len(self.coeffs) else self.field.zero

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.field.scalar(self.coeffs[i])
        return self.field.zero

    def to_list(self):
        return [self.field.scalar(c) for c in self.coeffs]

    def padded(self, n):
        """Coefficient array of length n (truncating or zero padding)."""
        out = self.field.zeros(n)
        m = min(n, len(self.coeffs))
        out[:m] = self.coeffs[:m]
        return out

    def valuation(self):
        nz = np.nonzero(self.coeffs)[0]
        return int(nz[0]) if len(nz) else None

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.field == other.field and len(self.coeffs) == len(other.coeffs) and bool(
                np.all(self.coeffs == other.coeffs))
        if isinstance(other, (int, np.integer)) or hasattr(other, "denominator"):
            return self == UniPoly.constant(self.field, other, self.var)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, tuple(self.to_list())))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, UniPoly):
            self.field.check(other.field)
            return other
        return UniPoly.constant(self.field, other, self.var)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return self._new(self.field.red(self.padded(n) + other.padded(n)))

    __radd__ = __add__

    def __neg__(self):
        return self._new(self.field.red(-self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return self._new(self.field.red(self.padded(n) - other.padded(n)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            self.field.check(other.field)
            return self._new(self.field.conv(self.coeffs, other.coeffs))
        return self._new(self.field.scale(self.coeffs, self.field(other)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = UniPoly.one(self.field, self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift_degree(self, k: int):
        """Multiply by X**k (k >= 0) or drop the k lowest terms (k < 0)."""
        if k >= 0:
            if self.is_zero():
                return self
            return self._new(np.concatenate([self.field.zeros(k), self.coeffs]))
        return self._new(self.coeffs[-k:].copy())

    def truncate(self, n: int):
        return self._new(self.coeffs[:n].copy())

    def monic(self):
        if self.is_zero():
            return self
        return self * self.field.inv(self.lc())

    def divmod(self, other: "UniPoly"):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        db = other.deg
        r = self.coeffs.copy()
        if len(r) <= db:
            return UniPoly.zero(F, self.var), self
        q = F.zeros(len(r) - db)
        b = other.coeffs
        inv_lc = F.inv(other.lc())
        for k in range(len(r) - db - 1, -1, -1):
            c = F.mul(r[k + db], inv_lc)
            if c:
                q[k] = c
                r[k:k + db + 1] = F.red(r[k:k + db + 1] - F.scale(b, c))
        return self._new(q), self._new(r[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, x):
        F = self.field
        x = F(x)
        acc = F.zero
        for c in self.coeffs[::-1]:
            acc = F.add(F.mul(acc, x), c)
        return acc

    def eval_many(self, xs):
        """Evaluate at every entry of a field array (vectorised Horner)."""
        F = self.field
        acc = F.zeros(len(xs))
        for c in self.coeffs[::-1]:
            acc = F.red(acc * xs + c)
        return acc

    def derivative(self):
        if len(self.coeffs) <= 1:
            return UniPoly.zero(self.field, self.var)
        k = self.field.arange(1, len(self.coeffs) - 1)
        return self._new(self.field.red(self.coeffs[1:] * k))

    def shift(self, a):
        """p(X + a)."""
        F = self.field
        a = F(a)
        if a == 0 or len(self.coeffs) <= 1:
            return self
        n = len(self.coeffs)
        acc = F.zeros(n)
        for i, c in enumerate(self.coeffs[::-1]):
            # acc <- acc*(X + a) + c, acc has degree i - 1
            new = F.zeros(n)
            new[1:i + 1] = acc[:i]
            new[:i] = F.red(new[:i] + F.scale(acc[:i], a))
            new[0] = F.red(new[0] + c)
            acc = new
        return self._new(acc)

    def compose(self, other: "UniPoly"):
        acc = UniPoly.zero(self.field, self.var)
        for c in self.coeffs[::-1]:
            acc = acc * other + self.field.scalar(c)
        return acc

    def gcd(self, other):
        if self.field.is_rational:
            return _gcd_rational(self, self._coerce(other))
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """(g, s, t) with s*self + t*other = g monic."""
        F = self.field
        other = self._coerce(other)
        r0, r1 = self, other
        s0, s1 = UniPoly.one(F, self.var), UniPoly.zero(F, self.var)
        t0, t1 = UniPoly.zero(F, self.var), UniPoly.one(F, self.var)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        c = F.inv(r0.lc())
        return r0 * c, s0 * c, t0 * c

    def content_gcd(self, others):
        g = self
        for o in others:
            g = g.gcd(o)
        return g

    # -- printing ---------------------------------------------------------
    def __repr__(self):
        return f"UniPoly({self.field}, {self})"

    def __str__(self):
        return format_poly({(i,): c for i, c in enumerate(self.to_list()) if c != 0}, (self.var,), self.field)


def _gcd_rational(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q through FLINT; Euclid on Fractions swells badly."""
    fa = flint.fmpq_poly([flint.fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in a.coeffs])
    fb = flint.fmpq_poly([flint.fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in b.coeffs])
    g = fa.gcd(fb)
    cs = [Fraction(int(c.p), int(c.q)) for c in g.coeffs()]
    return UniPoly(a.field, cs, a.var).monic()


class BiPoly:
    """A polynomial in X and Y: ``coeffs[i, j]`` is the coefficient of X^i Y^j."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs, reduce: bool = True):
        self.field = field
        if isinstance(coeffs, np.ndarray) and coeffs.dtype == field.dtype and coeffs.ndim == 2:
            c = field.red(coeffs) if reduce else coeffs
        else:
            rows = [list(r) for r in coeffs]
            width = max((len(r) for r in rows), default=0)
            c = field.zeros((len(rows), width))
            for i, r in enumerate(rows):
                for j, v in enumerate(r):
                    c[i, j] = field(v)
        self.coeffs = _trim2(c)

    @classmethod
    def zero(cls, field):
        return cls(field, field.zeros((0, 0)), reduce=False)

    @classmethod
    def constant(cls, field, c):
        return cls(field, [[c]])

    @classmethod
    def x(cls, field):
        return cls(field, [[0], [1]])

    @classmethod
    def y(cls, field):
        return cls(field, [[0, 1]])

    @classmethod
    def from_y_coeffs(cls, field, polys):
        """sum_j polys[j](X) * Y**j."""
        nx = max((len(q.coeffs) for q in polys), default=0)
        c = field.zeros((nx, len(polys)))
        for j, q in enumerate(polys):
            c[: len(q.coeffs), j] = q.coeffs
        return cls(field, c, reduce=False)

    @classmethod
    def from_x_coeffs(cls, field, polys):
        """sum_i X**i * polys[i](Y)."""
        ny = max((len(q.coeffs) for q in polys), default=0)
        c = field.zeros((len(polys), ny))
        for i, q in enumerate(polys):
            c[i, : len(q.coeffs)] = q.coeffs
        return cls(field, c, reduce=False)

    @classmethod
    def from_unipoly(cls, poly: UniPoly, var: str = "X"):
        F = poly.field
        if var == "X":
            return cls(F, poly.coeffs.reshape(-1, 1).copy(), reduce=False)
        return cls(F, poly.coeffs.reshape(1, -1).copy(), reduce=False)

    def _new(self, c, reduce=False):
        return BiPoly(self.field, c, reduce=reduce)

    # -- data -------------------------------------------------------------
    @property
    def degree_x(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def degree_y(self) -> int:
        return self.coeffs.shape[1] - 1

    @property
    def bidegree(self):
        return self.degree_x, self.degree_y

    @property
    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        i, j = np.nonzero(self.coeffs)
        return int((i + j).max())

    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def __bool__(self):
        return not self.is_zero()

    def __getitem__(self, ij):
        i, j = ij
        if 0 <= i < self.coeffs.shape[0] and 0 <= j < self.coeffs.shape[1]:
            return self.field.scalar(self.coeffs[i, j])
        return self.field.zero

    def padded(self, nx, ny):
        out = self.field.zeros((nx, ny))
        a = min(nx, self.coeffs.shape[0])
        b = min(ny, self.coeffs.shape[1])
        out[:a, :b] = self.coeffs[:a, :b]
        return out

    def coeff_y(self, j) -> UniPoly:
        """Coefficient of Y**j as a polynomial in X."""
        if 0 <= j < self.coeffs.shape[1]:
            return UniPoly(self.field, self.coeffs[:, j].copy(), "X", reduce=False)
        return UniPoly.zero(self.field, "X")

    def coeff_x(self, i) -> UniPoly:
        if 0 <= i < self.coeffs.shape[0]:
            return UniPoly(self.field, self.coeffs[i, :].copy(), "Y", reduce=False)
        return UniPoly.zero(self.field, "Y")

    def y_coeffs(self):
        return [self.coeff_y(j) for j in range(self.coeffs.shape[1])]

    def lc_y(self) -> UniPoly:
        return self.coeff_y(self.degree_y)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs.shape == other.coeffs.shape and bool(
            np.all(self.coeffs == other.coeffs))

    def __hash__(self):
        return hash((self.field, self.coeffs.shape, tuple(self.field.scalar(c) for c in self.coeffs.reshape(-1))))

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BiPoly):
            self.field.check(other.field)
            return other
        if isinstance(other, UniPoly):
            self.field.check(other.field)
            return BiPoly.from_unipoly(other, other.var if other.var in ("X", "Y") else "X")
        return BiPoly.constant(self.field, other)

    def __add__(self, other):
        other = self._coerce(other)
        nx = max(self.coeffs.shape[0], other.coeffs.shape[0])
        ny = max(self.coeffs.shape[1], other.coeffs.shape[1])
        return self._new(self.field.red(self.padded(nx, ny) + other.padded(nx, ny)))

    __radd__ = __add__

    def __neg__(self):
        return self._new(self.field.red(-self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (BiPoly, UniPoly)):
            other = self._coerce(other)
            return self._new(conv2d(self.field, self.coeffs, other.coeffs))
        return self._new(self.field.scale(self.coeffs, self.field(other)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = BiPoly.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def diff_x(self):
        nx = self.coeffs.shape[0]
        if nx <= 1:
            return BiPoly.zero(self.field)
        k = self.field.arange(1, nx - 1).reshape(-1, 1)
        return self._new(self.field.red(self.coeffs[1:] * k))

    def diff_y(self):
        ny = self.coeffs.shape[1]
        if ny <= 1:
            return BiPoly.zero(self.field)
        k = self.field.arange(1, ny - 1).reshape(1, -1)
        return self._new(self.field.red(self.coeffs[:, 1:] * k))

    def eval_x(self, a) -> UniPoly:
        """P(a, Y)."""
        F = self.field
        a = F(a)
        acc = F.zeros(self.coeffs.shape[1])
        for row in self.coeffs[::-1]:
            acc = F.red(acc * a + row)
        return UniPoly(F, acc, "Y", reduce=False)

    def eval_y(self, b) -> UniPoly:
        """P(X, b)."""
        F = self.field
        b = F(b)
        acc = F.zeros(self.coeffs.shape[0])
        for j in range(self.coeffs.shape[1] - 1, -1, -1):
            acc = F.red(acc * b + self.coeffs[:, j])
        return UniPoly(F, acc, "X", reduce=False)

    def __call__(self, x, y):
        return self.eval_x(x)(y)

    def shift_x(self, a):
        """P(X + a, Y)."""
        F = self.field
        a = F(a)
        if a == 0 or self.coeffs.shape[0] <= 1:
            return self
        n, m = self.coeffs.shape
        acc = F.zeros((n, m))
        for i, row in enumerate(self.coeffs[::-1]):
            new = F.zeros((n, m))
            new[1:i + 1] = acc[:i]
            new[:i] = F.red(new[:i] + F.scale(acc[:i], a))
            new[0] = F.red(new[0] + row)
            acc = new
        return self._new(acc)

    def mul_x_power(self, k):
        if self.is_zero() or k == 0:
            return self
        return self._new(np.concatenate([self.field.zeros((k, self.coeffs.shape[1])), self.coeffs]))

    def swap(self):
        return self._new(self.coeffs.T.copy())

    # -- printing ---------------------------------------------------------
    def __repr__(self):
        return f"BiPoly({self.field}, {self})"

    def __str__(self):
        terms = {}
        for i in range(self.coeffs.shape[0]):
            for j in range(self.coeffs.shape[1]):
                c = self.coeffs[i, j]
                if c != 0:
                    terms[(i, j)] = self.field.scalar(c)
        return format_poly(terms, ("X", "Y"), self.field)


def conv2d(field: FieldSpec, a, b, nrows=None):
    """2-D convolution of coefficient arrays (rows = X, columns = Y).

    Rows are flattened with a stride wide enough to keep columns apart, so
    one 1-D convolution does the work. ``nrows`` truncates in X.
    """
    if a.size == 0 or b.size == 0:
        return field.zeros((0, 0))
    ra, ca = a.shape
    rb, cb = b.shape
    if nrows is not None:
        ra = min(ra, nrows)
        rb = min(rb, nrows)
        a = a[:ra]
        b = b[:rb]
    w = ca + cb - 1
    fa = field.zeros((ra, w))
    fa[:, :ca] = a
    fb = field.zeros((rb, w))
    fb[:, :cb] = b
    flat = field.conv(fa.reshape(-1), fb.reshape(-1))
    rows = ra + rb - 1
    need = rows * w
    if len(flat) < need:
        flat = np.concatenate([flat, field.zeros(need - len(flat))])
    out = flat[:need].reshape(rows, w)
    if nrows is not None:
        out = out[:nrows]
    return out


def format_poly(terms: dict, names, field) -> str:
    """Render {exponent tuple: coefficient} with the given variable names."""
    if not terms:
        return "0"
    parts = []
    for exps in sorted(terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
        c = field.signed(terms[exps])
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
        neg = c < 0
        mag = -c if neg else c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}" if getattr(mag, "denominator", 1) == 1 else f"({mag})*{mono}"
        else:
            body = str(mag)
        parts.append(("-" if neg else "+", body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- resultants -------------------------------------------------------------

def sylvester_det(field: FieldSpec, f, g):
    """det of the Sylvester matrix of coefficient vectors f, g (ascending),
    taken with formal degrees len(f)-1 and len(g)-1."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    if size == 0:
        return field.one
    S = field.zeros((size, size))
    fr = np.asarray(f)[::-1]
    gr = np.asarray(g)[::-1]
    for i in range(n):
        S[i, i:i + m + 1] = fr
    for i in range(m):
        S[n + i, i:i + n + 1] = gr
    return det(field, S)


def det(field: FieldSpec, M):
    """Determinant by Gaussian elimination over the field."""
    A = field.coerce(M.copy())
    n = A.shape[0]
    d = field.one
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if len(nz) == 0:
            return field.zero
        r = c + int(nz[0])
        if r != c:
            A[[c, r]] = A[[r, c]]
            d = field.neg(d)
        piv = field.scalar(A[c, c])
        d = field.mul(d, piv)
        if c + 1 < n:
            inv = field.inv(piv)
            f = field.scale(A[c + 1:, c], inv)
            A[c + 1:, c:] = field.red(A[c + 1:, c:] - field.red(np.outer(f, A[c, c:])))
    return d


def resultant_y(a: BiPoly, b: BiPoly, method: str = "interp") -> UniPoly:
    """Res_Y(a, b) in K[X], Sylvester convention.

    ``method="interp"`` evaluates at deg bound + 1 points and interpolates;
    ``method="bareiss"`` runs fraction-free elimination over K[X].
    """
    F = a.field
    F.check(b.field)
    if a.is_zero() or b.is_zero():
        return UniPoly.zero(F)
    m, n = a.degree_y, b.degree_y
    if m == 0 and n == 0:
        raise ValueError("resultant of two polynomials free of Y")
    if method == "bareiss":
        return _resultant_bareiss(a, b)
    bound = a.degree_x * n + b.degree_x * m
    npts = bound + 1
    if F.is_prime and F.modulus < npts:
        return _resultant_bareiss(a, b)
    xs = F.arange(0, npts)
    vals = []
    for x in xs:
        fa = a.eval_x(x).padded(m + 1)
        fb = b.eval_x(x).padded(n + 1)
        vals.append(sylvester_det(F, fa, fb))
    return interpolate(F, xs, F.array(vals))


def interpolate(field: FieldSpec, xs, ys) -> UniPoly:
    """Newton interpolation through (xs[k], ys[k])."""
    n = len(xs)
    xs_l = [field.scalar(x) for x in xs]
    coef = [field.scalar(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = field.div(field.sub(coef[i], coef[i - 1]), field.sub(xs_l[i], xs_l[i - j]))
    poly = UniPoly.constant(field, coef[-1])
    for k in range(n - 2, -1, -1):
        poly = poly * UniPoly(field, [field.neg(xs_l[k]), 1]) + coef[k]
    return poly


def _resultant_bareiss(a: BiPoly, b: BiPoly) -> UniPoly:
    F = a.field
    m, n = a.degree_y, b.degree_y
    size = m + n
    zero = UniPoly.zero(F)
    S = [[zero] * size for _ in range(size)]
    ac = a.y_coeffs()[::-1]
    bc = b.y_coeffs()[::-1]
    for i in range(n):
        for k in range(m + 1):
            S[i][i + k] = ac[k]
    for i in range(m):
        for k in range(n + 1):
            S[n + i][i + k] = bc[k]
    return bareiss_det(F, S)


def bareiss_det(field, S) -> UniPoly:
    """Fraction-free determinant of a square matrix of UniPoly entries."""
    n = len(S)
    if n == 0:
        return UniPoly.one(field)
    A = [row[:] for row in S]
    sign = 1
    prev = UniPoly.one(field)
    for k in range(n - 1):
        if A[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not A[r][k].is_zero()), None)
            if swap is None:
                return UniPoly.zero(field)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]).exact_div(prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def discriminant(P: BiPoly) -> UniPoly:
    """Res_Y(P, dP/dY)."""
    return resultant_y(P, P.diff_y())
