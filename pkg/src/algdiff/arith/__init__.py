"""Exact fields, dense polynomials, truncated series and linear algebra."""
from .field import FieldSpec, GF, QQ
from .poly import BiPoly, UniPoly, conv2d, discriminant, resultant_y
from .series import TruncSeries, series_derivative, series_theta
from .parse import ParseError, bipoly_from_json, bipoly_to_json, parse_bipoly
from . import linalg


def poly_mul(a, b):
    """Exact product of two polynomials or series of the same kind."""
    if type(a) is not type(b):
        raise TypeError("poly_mul expects operands of the same kind")
    return a * b


def shift_x(P, a):
    """P(X + a, Y)."""
    return P.shift_x(a)


def series_derive(f, var_form="d_dx"):
    """d/dX (precision drops by one) or X d/dX (precision kept)."""
    if f.precision < 1:
        raise ValueError("series of zero precision")
    if var_form == "d_dx":
        return f.derivative()
    if var_form == "theta":
        return f.theta()
    raise ValueError(f"unknown derivation {var_form!r}")


__all__ = [
    "FieldSpec", "GF", "QQ", "BiPoly", "UniPoly", "TruncSeries", "conv2d", "discriminant",
    "resultant_y", "series_derivative", "series_theta", "ParseError", "bipoly_from_json",
    "bipoly_to_json", "parse_bipoly", "linalg", "poly_mul", "shift_x", "series_derive",
]
