from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from algdiff.arith import poly_mul, series_derive, shift_x
from algdiff.arith.field import GF, QQ, FieldSpec
from algdiff.arith.linalg import inverse, nullspace, rank
from algdiff.arith.parse import (ParseError, bipoly_from_json, bipoly_to_json, parse_bipoly,
                                 parse_unipoly)
from algdiff.arith.poly import BiPoly, UniPoly, discriminant, resultant_y
from algdiff.arith.series import TruncSeries
from algdiff.errors import FieldMismatch

from conftest import F7, F9973, FIELDS, bipolys, unipolys

X, Y = sympy.symbols("X Y")


def to_sympy(P: BiPoly):
    return sum(sympy.Rational(str(P.coeffs[i, j])) * X**i * Y**j
               for i in range(P.coeffs.shape[0]) for j in range(P.coeffs.shape[1]))


def uni_to_sympy(p: UniPoly):
    return sum(sympy.Rational(str(c)) * X**i for i, c in enumerate(p.coeffs))


# -- fields ---------------------------------------------------------------

def test_field_rejects_composite():
    with pytest.raises(ValueError):
        GF(9)


def test_field_canonical_scalars():
    assert F7(-1) == 6
    assert QQ("-4/6") == Fraction(-2, 3)
    assert F7.inv(3) * 3 % 7 == 1


def test_field_json_roundtrip():
    for F in FIELDS:
        assert FieldSpec.from_json(F.to_json()) == F


# -- products -------------------------------------------------------------

def test_mul_difference_of_squares():
    a, b = UniPoly(QQ, [1, 1]), UniPoly(QQ, [1, -1])
    assert poly_mul(a, b) == UniPoly(QQ, [1, 0, -1])


def test_mul_identity_bipoly():
    P = parse_bipoly("Y^2-1-X", QQ)
    assert poly_mul(P, BiPoly.constant(QQ, 1)) == P


def test_mul_mod7():
    assert poly_mul(UniPoly(F7, [1, 3]), UniPoly(F7, [2, 5])) == UniPoly(F7, [2, 4, 1])


def test_mul_series_precision_is_min():
    f = TruncSeries(QQ, QQ.array([1, 1, 1, 1]))
    g = TruncSeries(QQ, QQ.array([1, 2]))
    assert (f * g).precision == 2


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        UniPoly(F7, [1]) * UniPoly(QQ, [1])


@pytest.mark.parametrize("F", FIELDS)
@given(data=st.data())
def test_ring_axioms_unipoly(F, data):
    a, b, c = (data.draw(unipolys(F)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@pytest.mark.parametrize("F", FIELDS)
@given(data=st.data())
def test_ring_axioms_bipoly(F, data):
    a, b, c = (data.draw(bipolys(F)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@pytest.mark.parametrize("F", FIELDS)
@given(data=st.data())
def test_ring_axioms_series(F, data):
    n = data.draw(st.integers(1, 8))
    mk = lambda: TruncSeries(F, F.array(data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))))
    a, b, c = mk(), mk(), mk()
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(a=bipolys(QQ), b=bipolys(QQ))
def test_bipoly_product_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


def test_large_products_fft_path():
    rng = np.random.default_rng(0)
    for F in (F9973, GF(2147483647)):
        a = F.random_array(rng, 3000)
        b = F.random_array(rng, 2500)
        want = np.convolve(a.astype(object), b.astype(object)) % F.modulus
        assert np.array_equal(F.conv(a, b).astype(object), want)


# -- resultants -----------------------------------------------------------

def test_resultant_examples():
    P = parse_bipoly("Y^2-(1+X)", QQ)
    assert resultant_y(P, parse_bipoly("2*Y", QQ)) == UniPoly(QQ, [-4, -4])
    assert resultant_y(parse_bipoly("Y-X", QQ), parse_bipoly("Y+X", QQ)) == UniPoly(QQ, [0, 2])
    assert discriminant(P) == UniPoly(QQ, [-4, -4])


def test_resultant_needs_y():
    with pytest.raises(ValueError):
        resultant_y(parse_bipoly("X+1", QQ), parse_bipoly("X", QQ))


def sylvester_det(f, g):
    """Res_Y(f, g) as the determinant of the Sylvester matrix (sympy Matrix)."""
    fc = sympy.Poly(f, Y).all_coeffs()
    gc = sympy.Poly(g, Y).all_coeffs()
    m, n = len(fc) - 1, len(gc) - 1
    rows = [[0] * i + fc + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + gc + [0] * (m - 1 - i) for i in range(m)]
    return sympy.Matrix(rows).det()


def test_sylvester_oracle_sign():
    # sympy.resultant returns -5 here; the Sylvester determinant is lc^3 * g(0) = 5
    assert sylvester_det(Y, Y**3 + 5) == 5
    assert resultant_y(parse_bipoly("Y", QQ), parse_bipoly("Y^3+5", QQ)) == UniPoly(QQ, [5])


@given(a=bipolys(QQ, 2, 3), b=bipolys(QQ, 2, 3))
def test_resultant_matches_sylvester(a, b):
    if a.degree_y < 1 and b.degree_y < 1:
        return
    if a.is_zero() or b.is_zero():
        return
    want = sylvester_det(to_sympy(a), to_sympy(b))
    assert sympy.expand(uni_to_sympy(resultant_y(a, b)) - want) == 0


@given(a=bipolys(QQ, 2, 3))
def test_discriminant_zero_iff_common_factor(a):
    if a.degree_y < 1:
        return
    sep = sympy.gcd(to_sympy(a), sympy.diff(to_sympy(a), Y))
    nontrivial = sympy.degree(sep, Y) > 0
    assert discriminant(a).is_zero() == nontrivial


def test_engineered_inseparable():
    P = parse_bipoly("(Y-X)^2*(Y+1)", QQ)
    assert discriminant(P).is_zero()
    assert not discriminant(parse_bipoly("(Y-X)*(Y+1)", QQ)).is_zero()


# -- shifts and derivatives ----------------------------------------------

def test_shift_examples():
    assert shift_x(parse_bipoly("Y^2-X", QQ), 1) == parse_bipoly("Y^2-X-1", QQ)
    P = parse_bipoly("Y^3+X*Y-2", F7)
    assert shift_x(P, 0) == P
    assert shift_x(parse_bipoly("X^2", QQ), 1) == parse_bipoly("X^2+2*X+1", QQ)


@pytest.mark.parametrize("F", FIELDS)
@given(data=st.data())
def test_shift_roundtrip(F, data):
    P = data.draw(bipolys(F))
    a = F(data.draw(st.integers(-5, 5)))
    assert P.shift_x(a).shift_x(F.neg(a)) == P


def test_series_derive_examples():
    f = TruncSeries(QQ, QQ.array([1, 1, Fraction(1, 2)]))
    assert series_derive(f, "d_dx") == TruncSeries(QQ, QQ.array([1, 1]))
    g = TruncSeries(QQ, QQ.array([0, 0, 3, 0, 0]))
    assert series_derive(g, "theta") == TruncSeries(QQ, QQ.array([0, 0, 6, 0, 0]))
    c = TruncSeries(F7, F7.array([4, 0, 0]))
    assert series_derive(c, "theta").is_zero()
    with pytest.raises(ValueError):
        series_derive(TruncSeries(QQ, QQ.zeros(0)), "d_dx")


@pytest.mark.parametrize("F", FIELDS)
@given(data=st.data())
def test_leibniz(F, data):
    n = data.draw(st.integers(2, 8))
    g = TruncSeries(F, F.array(data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))))
    h = TruncSeries(F, F.array(data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))))
    lhs = (g * h).derivative()
    rhs = g.derivative() * h.truncate(n - 1) + g.truncate(n - 1) * h.derivative()
    assert lhs == rhs


# -- parsing and JSON -----------------------------------------------------

def test_parse_and_json_roundtrip():
    P = parse_bipoly("Y^2 - X*(1+X)", QQ)
    assert P == BiPoly(QQ, [[0, 0, 1], [-1, 0, 0], [-1, 0, 0]])
    d = bipoly_to_json(P)
    assert all(isinstance(c, str) for row in d["coeffs"] for c in row)
    assert bipoly_from_json(d) == P
    Q = parse_bipoly("3*X*Y", F7)
    assert bipoly_from_json(bipoly_to_json(Q)) == Q


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_bipoly("Y^^2", QQ)
    with pytest.raises(ParseError):
        parse_bipoly("Z+1", QQ)
    assert parse_unipoly("1+X^2", QQ) == UniPoly(QQ, [1, 0, 1])


# -- linear algebra -------------------------------------------------------

@pytest.mark.parametrize("F", [QQ, F9973])
def test_nullspace_and_inverse(F):
    rng = np.random.default_rng(3)
    M = F.random_array(rng, (5, 8))
    K = nullspace(F, M)
    assert K.shape[0] == 8 - rank(F, M)
    assert not np.any(F.matmul(M, K.T) != 0)
    A = F.random_array(rng, (4, 4))
    if rank(F, A) == 4:
        I = F.matmul(A, inverse(F, A))
        assert np.array_equal(I, F.array(np.eye(4, dtype=int)))
