"""Helpers for multimodular computations over Q: primes, CRT, rational reconstruction."""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

from sympy import prevprime

TOP_PRIME = 2147483647  # largest prime below 2^31: keeps int64 arithmetic


def primes_from(start: int = TOP_PRIME):
    p = start
    while p > 1000:
        yield p
        p = prevprime(p)


def reduce_fractions(values, p):
    """Images of rationals mod p, or None when some denominator vanishes mod p."""
    out = []
    for v in values:
        v = Fraction(v)
        d = v.denominator % p
        if d == 0:
            return None
        out.append(v.numerator % p * pow(d, -1, p) % p)
    return out


def crt_pair(r1, m1, r2, m2):
    """x mod m1*m2 with x = r1 mod m1 and x = r2 mod m2 (coprime moduli)."""
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t, m1 * m2


def rational_reconstruct(u: int, m: int):
    """a/b with a = b*u mod m and |a|, |b| <= sqrt(m/2); None if none exists."""
    bound = isqrt(m // 2)
    r0, r1 = m, u % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    f = Fraction(r1, s1)
    if (f.numerator - f.denominator * u) % m != 0:
        return None
    return f


def lift_vector(residues, modulus):
    """Rational reconstruction of every entry, or None if one fails."""
    out = []
    for u in residues:
        f = rational_reconstruct(u, modulus)
        if f is None:
            return None
        out.append(f)
    return out

