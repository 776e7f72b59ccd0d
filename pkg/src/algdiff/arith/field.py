"""Exact coefficient fields: prime fields F_p and the rationals Q.

Elements of F_p are plain ints in [0, p). Arrays over F_p use int64 when
p < 2**31 (so a product of two residues fits in 63 bits) and Python ints
in object arrays otherwise. Rationals are ``fractions.Fraction`` stored in
object arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import flint
import numpy as np
from sympy import isprime

from ..errors import FieldMismatch

_INT64_LIMIT = 1 << 31
# float64 FFT products stay exact while sum |a_i b_j| * log2(n) is below this
_FFT_BUDGET = float(1 << 49)
_FFT_MIN = 48
# float64 BLAS is exact as long as every partial dot product is below 2**53
_BLAS_LIMIT = 1 << 20


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: ``FieldSpec.prime(p)`` or ``FieldSpec.rational()``."""

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if not isinstance(self.modulus, int) or self.modulus < 2 or not isprime(self.modulus):
                raise ValueError(f"modulus must be a prime, got {self.modulus!r}")
            if self.modulus >= 1 << 63:
                raise ValueError("modulus must fit in a machine word")
        elif self.kind == "rational":
            if self.modulus is not None:
                raise ValueError("the rational field takes no modulus")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", int(p))

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls("rational", None)

    # -- basic properties -------------------------------------------------
    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    @property
    def p(self) -> int:
        return self.modulus

    @property
    def characteristic(self) -> int:
        return self.modulus if self.is_prime else 0

    @property
    def size(self):
        """Number of elements, or None for Q."""
        return self.modulus if self.is_prime else None

    @property
    def dtype(self):
        if self.is_prime and self.modulus < _INT64_LIMIT:
            return np.int64
        return object

    @property
    def small(self) -> bool:
        """True when arrays are int64."""
        return self.dtype is np.int64

    def check(self, other: "FieldSpec"):
        if self != other:
            raise FieldMismatch(f"field mismatch: {self} vs {other}")

    def __str__(self):
        return f"GF({self.modulus})" if self.is_prime else "QQ"

    def to_json(self) -> dict:
        if self.is_prime:
            return {"kind": "prime", "modulus": self.modulus}
        return {"kind": "rational"}

    @classmethod
    def from_json(cls, d: dict) -> "FieldSpec":
        if d.get("kind") == "prime":
            return cls.prime(int(d["modulus"]))
        if d.get("kind") == "rational":
            return cls.rational()
        raise ValueError(f"bad field description {d!r}")

    # -- scalars ----------------------------------------------------------
    def __call__(self, x):
        if self.is_prime:
            p = self.modulus
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise ZeroDivisionError(f"{x} has no image in GF({p})")
                return x.numerator * pow(x.denominator, -1, p) % p
            return int(x) % p
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, np.integer)):
            return Fraction(int(x))
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    @property
    def zero(self):
        return 0 if self.is_prime else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_prime else Fraction(1)

    def inv(self, x):
        if self.is_prime:
            x = int(x) % self.modulus
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(x, -1, self.modulus)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def mul(self, a, b):
        if self.is_prime:
            return int(a) * int(b) % self.modulus
        return a * b

    def add(self, a, b):
        if self.is_prime:
            return (int(a) + int(b)) % self.modulus
        return a + b

    def sub(self, a, b):
        if self.is_prime:
            return (int(a) - int(b)) % self.modulus
        return a - b

    def neg(self, a):
        if self.is_prime:
            return -int(a) % self.modulus
        return -a

    def scalar(self, x):
        """Normalise a scalar that came out of an array."""
        return int(x) if self.is_prime else Fraction(x)

    def to_str(self, x) -> str:
        return str(int(x)) if self.is_prime else str(Fraction(x))

    def from_str(self, s: str):
        s = s.strip()
        if self.is_prime:
            return self(Fraction(s))
        return Fraction(s)

    def signed(self, x):
        """Symmetric representative, used only for display."""
        if self.is_prime:
            x = int(x)
            return x - self.modulus if x > self.modulus // 2 else x
        return x

    # -- arrays -----------------------------------------------------------
    def zeros(self, shape):
        if self.small:
            return np.zeros(shape, dtype=np.int64)
        z = self.zero
        return np.full(shape, z, dtype=object)

    def array(self, values):
        vals = np.asarray(values, dtype=object)
        out = np.empty(vals.shape, dtype=object)
        flat = out.reshape(-1)
        for k, v in enumerate(vals.reshape(-1)):
            flat[k] = self(v)
        return out.astype(np.int64) if self.small else out

    def coerce(self, arr):
        """Make sure ``arr`` has this field's dtype (no reduction)."""
        if self.small:
            return np.asarray(arr, dtype=np.int64)
        return np.asarray(arr, dtype=object)

    def red(self, arr):
        if self.is_prime:
            return arr % self.modulus
        return arr

    def scale(self, arr, c):
        if self.is_prime:
            return arr * (int(c) % self.modulus) % self.modulus
        return arr * c

    def inv_array(self, arr):
        if self.is_prime:
            if np.any(arr % self.modulus == 0):
                raise ZeroDivisionError("inverse of zero")
            if self.small:
                return _powmod_array(arr, self.modulus - 2, self.modulus)
            return np.array([pow(int(v), -1, self.modulus) for v in arr.reshape(-1)],
                            dtype=object).reshape(arr.shape)
        if np.any(arr == 0):
            raise ZeroDivisionError("inverse of zero")
        return np.array([1 / Fraction(v) for v in arr.reshape(-1)], dtype=object).reshape(arr.shape)

    def random_array(self, rng, shape, height: int = 9):
        """Uniform elements of F_p, or integers in [-height, height] over Q."""
        if self.is_prime:
            if self.small:
                return rng.integers(0, self.modulus, size=shape, dtype=np.int64)
            vals = [int.from_bytes(rng.bytes(16), "little") % self.modulus for _ in range(int(np.prod(shape)))]
            return np.array(vals, dtype=object).reshape(shape)
        vals = rng.integers(-height, height + 1, size=shape)
        return self.array(vals)

    def random_element(self, rng, nonzero: bool = False, height: int = 9):
        while True:
            x = self.random_array(rng, (1,), height)[0]
            if not nonzero or x != 0:
                return self.scalar(x)

    def arange(self, start, count):
        """The field images of start, start+1, ..., start+count-1."""
        if self.small:
            return (np.arange(count, dtype=np.int64) + start) % self.modulus
        return self.array([start + k for k in range(count)])

    # -- products ---------------------------------------------------------
    def conv(self, a, b):
        """Full linear convolution of two coefficient vectors."""
        na, nb = len(a), len(b)
        if na == 0 or nb == 0:
            return self.zeros(0)
        if self.is_rational:
            return _conv_rational(a, b)
        p = self.modulus
        if not self.small:
            return np.convolve(np.asarray(a, dtype=object), np.asarray(b, dtype=object)) % p
        return _conv_mod(a, b, p)

    def conv_trunc(self, a, b, n):
        if n <= 0:
            return self.zeros(0)
        return self.conv(a[:n], b[:n])[:n]

    def matmul(self, A, B):
        """Exact matrix product over the field."""
        if self.is_rational:
            return A @ B
        p = self.modulus
        if not self.small:
            return (A @ B) % p
        if A.shape[1] == 0:
            return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        if p < _BLAS_LIMIT:
            return _matmul_float(A, B, p).astype(np.int64)
        chunk = max(1, ((1 << 63) - 1) // ((p - 1) ** 2) - 1)
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for k in range(0, A.shape[1], chunk):
            out = (out + A[:, k:k + chunk] @ B[k:k + chunk] % p) % p
        return out

    def dot(self, a, b):
        if self.is_rational:
            return sum((x * y for x, y in zip(a, b)), Fraction(0))
        if self.small and self.modulus < _BLAS_LIMIT:
            return int(_matmul_float(np.asarray(a).reshape(1, -1), np.asarray(b).reshape(-1, 1), self.modulus)[0, 0])
        return int(sum(int(x) * int(y) for x, y in zip(a, b)) % self.modulus)


def _powmod_array(a, e, p):
    result = np.ones_like(a)
    base = a % p
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def _matmul_float(A, B, p):
    """A @ B mod p through float64 BLAS, chunking the inner dimension."""
    chunk = max(1, int((1 << 52) // ((p - 1) ** 2)))
    Af = np.asarray(A, dtype=np.float64)
    Bf = np.asarray(B, dtype=np.float64)
    out = None
    for k in range(0, Af.shape[1], chunk):
        part = Af[:, k:k + chunk] @ Bf[k:k + chunk]
        part -= p * np.floor(part * (1.0 / p))
        out = part if out is None else out + part
        if out is not part:
            out -= p * np.floor(out * (1.0 / p))
    return out


def fmod_float(x, p):
    """Reduce a float64 array of exact integers modulo p, in place."""
    x -= p * np.floor(x * (1.0 / p))
    return x


def _conv_mod(a, b, p):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = len(a) + len(b) - 1
    m = min(len(a), len(b))
    bound = float(p - 1) ** 2 * m
    if m < _FFT_MIN:
        if bound < 2.0 ** 63:
            return np.convolve(a, b) % p
        return np.convolve(a.astype(object), b.astype(object)) % p
    logn = max(1.0, math.log2(n))
    if bound * logn < _FFT_BUDGET:
        return _fft_conv(a, b, n) % p
    # split into limbs small enough for the float budget
    k = 1
    bits = p.bit_length()
    while True:
        k_next = k + 1
        limbs = -(-bits // k_next)
        if limbs * float(1 << (2 * k_next)) * m * logn >= _FFT_BUDGET:
            break
        k = k_next
        if k >= bits:
            break
    return _fft_conv_limbs(a, b, n, p, k)


def _fft_size(n):
    return 1 << (n - 1).bit_length()


def _fft_conv(a, b, n):
    size = _fft_size(n)
    fa = np.fft.rfft(a.astype(np.float64), size)
    fb = np.fft.rfft(b.astype(np.float64), size)
    c = np.fft.irfft(fa * fb, size)[:n]
    return np.rint(c).astype(np.int64)


def _fft_conv_limbs(a, b, n, p, k):
    size = _fft_size(n)
    mask = (1 << k) - 1
    limbs = -(-p.bit_length() // k)
    fa = [np.fft.rfft(((a >> (k * i)) & mask).astype(np.float64), size) for i in range(limbs)]
    fb = [np.fft.rfft(((b >> (k * i)) & mask).astype(np.float64), size) for i in range(limbs)]
    out = np.zeros(n, dtype=np.int64)
    for w in range(2 * limbs - 1):
        acc = None
        for i in range(max(0, w - limbs + 1), min(w, limbs - 1) + 1):
            t = fa[i] * fb[w - i]
            acc = t if acc is None else acc + t
        c = np.rint(np.fft.irfft(acc, size)[:n]).astype(np.int64) % p
        out = (out + c * pow(2, k * w, p)) % p
    return out


def _conv_rational(a, b):
    da = math.lcm(*[Fraction(x).denominator for x in a])
    db = math.lcm(*[Fraction(x).denominator for x in b])
    A = flint.fmpz_poly([int(Fraction(x) * da) for x in a])
    B = flint.fmpz_poly([int(Fraction(x) * db) for x in b])
    C = [int(c) for c in (A * B).coeffs()]
    C += [0] * (len(a) + len(b) - 1 - len(C))
    d = da * db
    return np.array([Fraction(c, d) for c in C], dtype=object)


QQ = FieldSpec.rational()


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime(p)
