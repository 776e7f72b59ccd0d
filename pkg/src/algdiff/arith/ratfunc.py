"""Elements of K(X) as reduced fractions num/den with den monic.

Backed by FLINT polynomials (fmpq_poly over Q, nmod_poly or fmpz_mod_poly
over F_p). The reference backend of the resolvent runs entirely on this
class, so it shares no polynomial code with the series path.
"""
from __future__ import annotations

from fractions import Fraction

import flint

from .field import FieldSpec
from .poly import UniPoly


class _Flint:
    """Conversion between UniPoly and the matching FLINT polynomial type."""

    _cache: dict = {}

    def __init__(self, field: FieldSpec):
        self.field = field
        if field.is_rational:
            self.make = lambda cs: flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in cs])
        elif field.modulus < 2 ** 63:
            p = field.modulus
            self.make = lambda cs: flint.nmod_poly([int(c) for c in cs], p)
        else:
            ctx = flint.fmpz_mod_poly_ctx(field.modulus)
            self.make = lambda cs: ctx([int(c) for c in cs])

    @classmethod
    def of(cls, field):
        ctx = cls._cache.get(field)
        if ctx is None:
            ctx = cls._cache[field] = cls(field)
        return ctx

    def from_unipoly(self, q: UniPoly):
        cs = q.to_list()
        if self.field.is_rational:
            cs = [Fraction(c) for c in cs]
        return self.make(cs)

    def to_unipoly(self, f) -> UniPoly:
        F = self.field
        if F.is_rational:
            cs = [Fraction(int(c.p), int(c.q)) for c in f.coeffs()]
        else:
            cs = [int(c) for c in f.coeffs()]
        return UniPoly(F, cs)

    def scalar(self, c):
        return self.make([Fraction(c)] if self.field.is_rational else [int(c)])


def _monic_pair(num, den):
    c = den.leading_coefficient()
    if c != 1:
        inv = 1 / c
        num, den = num * inv, den * inv
    return num, den


class RatFunc:
    __slots__ = ("ctx", "n", "d")

    def __init__(self, num: UniPoly, den: UniPoly | None = None, reduced: bool = False):
        ctx = _Flint.of(num.field)
        n = ctx.from_unipoly(num)
        d = ctx.scalar(1) if den is None else ctx.from_unipoly(den)
        self._set(ctx, n, d, reduced)

    def _set(self, ctx, n, d, reduced):
        if d == 0:
            raise ZeroDivisionError("zero denominator")
        self.ctx = ctx
        if n == 0:
            self.n, self.d = n, ctx.scalar(1)
            return
        if not reduced:
            g = n.gcd(d)
            if g.degree() > 0:
                n, d = n // g, d // g
        self.n, self.d = _monic_pair(n, d)

    @classmethod
    def _raw(cls, ctx, n, d, reduced=False):
        obj = cls.__new__(cls)
        obj._set(ctx, n, d, reduced)
        return obj

    @property
    def field(self):
        return self.ctx.field

    @property
    def num(self) -> UniPoly:
        return self.ctx.to_unipoly(self.n)

    @property
    def den(self) -> UniPoly:
        return self.ctx.to_unipoly(self.d)

    @classmethod
    def const(cls, field, c):
        return cls(UniPoly.constant(field, c), reduced=True)

    def is_zero(self):
        return self.n == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, o):
        if not isinstance(o, RatFunc):
            return NotImplemented
        return self.n == o.n and self.d == o.d

    def __add__(self, o):
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.d == o.d:
            return RatFunc._raw(self.ctx, self.n + o.n, self.d)
        g = self.d.gcd(o.d)
        if g.degree() == 0:
            return RatFunc._raw(self.ctx, self.n * o.d + o.n * self.d, self.d * o.d, reduced=True)
        a = o.d // g
        b = self.d // g
        return RatFunc._raw(self.ctx, self.n * a + o.n * b, self.d * a)

    def __neg__(self):
        return RatFunc._raw(self.ctx, -self.n, self.d, reduced=True)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, RatFunc):
            o = RatFunc(o) if isinstance(o, UniPoly) else RatFunc.const(self.field, o)
        if self.is_zero() or o.is_zero():
            return RatFunc._raw(self.ctx, self.ctx.make([]), self.ctx.scalar(1), reduced=True)
        g1 = self.n.gcd(o.d)
        g2 = o.n.gcd(self.d)
        return RatFunc._raw(self.ctx, (self.n // g1) * (o.n // g2), (self.d // g2) * (o.d // g1),
                            reduced=True)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc._raw(self.ctx, self.d, self.n, reduced=True)

    def __truediv__(self, o):
        return self * o.inverse()

    def derivative(self):
        n, d = self.n, self.d
        return RatFunc._raw(self.ctx, n.derivative() * d - n * d.derivative(), d * d)

    def __repr__(self):
        return f"({self.num})/({self.den})"
