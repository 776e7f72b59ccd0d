"""Linear differential operators sum_i c_i(X) D^i with D = d/dX or theta = X d/dX.

Coefficients sit to the left of the derivation. Two operators that differ by
a nonzero scalar or polynomial factor on the left annihilate the same
series, so ``canonical`` divides out the polynomial content and makes the
leading coefficient of the top-order term's polynomial equal to 1.
"""
from __future__ import annotations

import json
from functools import lru_cache

import numpy as np

from .arith.field import FieldSpec
from .arith.parse import ParseError, unipoly_from_json, unipoly_to_json
from .arith.poly import UniPoly
from .arith.series import TruncSeries, series_derivative, series_mul, series_theta

_VARS = {"d_dx": "Dx", "theta": "Tx"}
_JSON_VARS = {"Dx": "d_dx", "Tx": "theta"}


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def stirling1_signed(n: int, k: int) -> int:
    """Coefficients of the falling factorial t(t-1)...(t-n+1) = sum_k s(n,k) t^k."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return stirling1_signed(n - 1, k - 1) - (n - 1) * stirling1_signed(n - 1, k)


class DiffOp:
    __slots__ = ("field", "var", "coeffs")

    def __init__(self, field: FieldSpec, coeffs, var: str = "theta"):
        if var not in _VARS:
            raise ValueError(f"unknown operator variable {var!r}")
        self.field = field
        self.var = var
        cs = [c if isinstance(c, UniPoly) else UniPoly(field, c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    # -- data -------------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        """Maximal degree in X of the coefficients."""
        return max((c.deg for c in self.coeffs), default=-1)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.var == other.var and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, tuple(self.coeffs)))

    # -- normal forms -----------------------------------------------------
    def canonical(self) -> "DiffOp":
        if self.is_zero():
            return self
        g = self.coeffs[0]
        for c in self.coeffs[1:]:
            g = g.gcd(c)
        cs = [c.exact_div(g) if g.deg > 0 else c for c in self.coeffs]
        s = self.field.inv(cs[-1].lc())
        return DiffOp(self.field, [c * s for c in cs], self.var)

    def is_canonical(self) -> bool:
        return self == self.canonical()

    def to_dx(self) -> "DiffOp":
        """The same operator written in d/dX."""
        if self.var == "d_dx":
            return self
        F = self.field
        out = [UniPoly.zero(F) for _ in self.coeffs]
        for j, c in enumerate(self.coeffs):
            for k in range(j + 1):
                s = stirling2(j, k)
                if s:
                    out[k] = out[k] + c.shift_degree(k) * s
        return DiffOp(F, out, "d_dx")

    def to_theta(self) -> "DiffOp":
        """theta-form of X^k L, with k the least shift making it polynomial in theta."""
        if self.var == "theta":
            return self
        F = self.field
        k0 = 0
        for b, c in enumerate(self.coeffs):
            if not c.is_zero():
                k0 = max(k0, b - c.valuation())
        out = [UniPoly.zero(F) for _ in self.coeffs]
        for b, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            q = c.shift_degree(k0 - b)
            for k in range(b + 1):
                s = stirling1_signed(b, k)
                if s:
                    out[k] = out[k] + q * s
        return DiffOp(F, out, "theta")

    def convert(self, var: str) -> "DiffOp":
        return self.to_dx() if var == "d_dx" else self.to_theta()

    def shift_x(self, a) -> "DiffOp":
        """The operator after X -> X + a (written in d/dX)."""
        op = self.to_dx()
        return DiffOp(self.field, [c.shift(a) for c in op.coeffs], "d_dx")

    def mul_x_power(self, k: int) -> "DiffOp":
        return DiffOp(self.field, [c.shift_degree(k) for c in self.coeffs], self.var)

    # -- action on series -------------------------------------------------
    def apply(self, f: TruncSeries) -> TruncSeries:
        """L(f); the precision drops by the order for d/dX and is kept for theta."""
        F = self.field
        n = f.precision - (self.order if self.var == "d_dx" else 0)
        if n <= 0:
            return TruncSeries(f.ring, f.coeffs[:0].copy())
        cur = f.coeffs
        acc = None
        for i, c in enumerate(self.coeffs):
            if i:
                cur = series_derivative(F, cur) if self.var == "d_dx" else series_theta(F, cur)
            if c.is_zero():
                continue
            term = series_mul(F, c.padded(n), cur[:n], n) if f.coeffs.ndim == 1 else \
                series_mul(F, c.padded(n).reshape(-1, 1), cur[:n], n)
            acc = term if acc is None else F.red(acc + term)
        if acc is None:
            acc = F.zeros((n,) + f.coeffs.shape[1:])
        return TruncSeries(f.ring, acc)

    # -- formats ----------------------------------------------------------
    def to_json(self) -> dict:
        return {"var": _VARS[self.var], "field": self.field.to_json(),
                "coeffs": [unipoly_to_json(c) for c in self.coeffs]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, d, field: FieldSpec | None = None) -> "DiffOp":
        try:
            return cls._from_json(d, field)
        except (KeyError, TypeError, AttributeError, json.JSONDecodeError) as exc:
            raise ParseError(f"malformed operator JSON: {exc}") from exc

    @classmethod
    def _from_json(cls, d, field):
        if isinstance(d, str):
            d = json.loads(d)
        if "field" in d:
            F = FieldSpec.from_json(d["field"])
            if field is not None:
                field.check(F)
        elif field is not None:
            F = field
        else:
            raise ValueError("operator JSON carries no field")
        var = _JSON_VARS.get(d.get("var"))
        if var is None:
            raise ValueError(f"bad operator variable {d.get('var')!r}")
        return cls(F, [unipoly_from_json(c, F) for c in d["coeffs"]], var)

    def __str__(self):
        if self.is_zero():
            return "0"
        sym = _VARS[self.var]
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            d = "" if i == 0 else (sym if i == 1 else f"{sym}^{i}")
            cs = str(c)
            if not d:
                parts.append(cs)
            elif cs == "1":
                parts.append(d)
            elif cs == "-1":
                parts.append("-" + d)
            elif len(c.coeffs) == 1 or (np.count_nonzero(c.coeffs) == 1 and not cs.startswith("-")):
                parts.append(f"{cs}*{d}")
            else:
                parts.append(f"({cs})*{d}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"DiffOp({self.field}, {self})"
