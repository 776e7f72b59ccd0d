"""Text and JSON formats for polynomials.

Text grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/")? unary)*      # "/" only by a constant
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") INT)?
    atom   := INT | "X" | "Y" | "(" expr ")"

JSON: {"field": {...}, "coeffs": [[...], ...]} with row i holding the
coefficients of X^i Y^0, X^i Y^1, ... as decimal strings.
"""
from __future__ import annotations

import json
import re

from .field import FieldSpec
from .poly import BiPoly, UniPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()])|([XYxy]))")


class ParseError(ValueError):
    pass


def _tokens(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, op, var = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif op is not None:
            out.append(("op", "^" if op == "**" else op))
        else:
            out.append(("var", var.upper()))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, field, tokens):
        self.F = field
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r}, got {t[1]!r}")

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                acc = acc * self.unary()
            elif (kind, val) == ("op", "/"):
                self.take()
                den = self.unary()
                if den.total_degree > 0 or den.is_zero():
                    raise ParseError("division is only allowed by a nonzero constant")
                acc = acc * self.F.inv(den[0, 0])
            elif kind in ("num", "var") or (kind, val) == ("op", "("):
                acc = acc * self.unary()
            else:
                return acc

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            base = base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return BiPoly.constant(self.F, val)
        if kind == "var":
            return BiPoly.x(self.F) if val == "X" else BiPoly.y(self.F)
        if (kind, val) == ("op", "("):
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"unexpected token {val!r}")


def parse_bipoly(text: str, field: FieldSpec) -> BiPoly:
    """Parse ``"Y^2 - X*(1+X)"`` into a BiPoly over ``field``."""
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty polynomial")
    p = _Parser(field, toks)
    out = p.expr()
    if p.i != len(toks):
        raise ParseError(f"trailing input near token {p.i}")
    return out


def parse_unipoly(text: str, field: FieldSpec, var: str = "X") -> UniPoly:
    P = parse_bipoly(text, field)
    if P.degree_y > 0:
        raise ParseError("expected a polynomial in one variable")
    return P.coeff_y(0) if not P.is_zero() else UniPoly.zero(field)


def bipoly_to_json(P: BiPoly) -> dict:
    F = P.field
    rows = [[F.to_str(c) for c in row] for row in P.coeffs]
    return {"field": F.to_json(), "coeffs": rows}


def bipoly_from_json(d, field: FieldSpec | None = None) -> BiPoly:
    if isinstance(d, str):
        d = json.loads(d)
    F = FieldSpec.from_json(d["field"]) if "field" in d else field
    if F is None:
        raise ValueError("polynomial JSON carries no field")
    if field is not None:
        field.check(F)
    rows = [[F.from_str(str(c)) for c in row] for row in d["coeffs"]]
    return BiPoly(F, rows)


def unipoly_to_json(p: UniPoly) -> list:
    return [p.field.to_str(c) for c in p.coeffs]


def unipoly_from_json(lst, field: FieldSpec, var: str = "X") -> UniPoly:
    return UniPoly(field, [field.from_str(str(c)) for c in lst], var)
