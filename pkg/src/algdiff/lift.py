"""Newton iteration for power series roots of P(X, Y) = 0.

The algebra case lifts the generic root phi in A[[X]], A = K[Y]/(P(0, Y)),
with phi(0) = y. A K-rational simple root y0 of P(0, Y) is the special case
A = K[Y]/(Y - y0), so both entry points share one iteration.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import QuotientAlgebra
from .arith.field import FieldSpec
from .arith.poly import BiPoly, UniPoly
from .arith.series import TruncSeries
from .errors import HypothesisError


@dataclass
class LiftedRoot:
    series: TruncSeries
    poly: BiPoly
    basepoint: object = 0
    algebra: QuotientAlgebra | None = None

    @property
    def precision(self):
        return self.series.precision

    def coefficients(self):
        """Coefficient array: shape (n,) in the scalar case, (n, m) over A."""
        return self.series.coeffs


def hb_holds_at(P: BiPoly, a) -> bool:
    """lc_Y(P)(a) != 0 and P(a, Y) separable, i.e. lc * disc does not vanish at a."""
    if P.lc_y()(a) == 0:
        return False
    q = P.eval_x(a)
    if q.deg < 1:
        return False
    return q.gcd(q.derivative()).deg == 0


def smallest_good_shift(P: BiPoly, limit: int = 10000):
    """Smallest nonnegative integer a where lc * disc of P does not vanish."""
    F = P.field
    top = limit if F.is_rational else min(limit, F.modulus)
    for a in range(top):
        if hb_holds_at(P, a):
            return a
    return None


def check_hb(P: BiPoly):
    """Raise a HypothesisError naming what fails at X = 0 and a good shift."""
    if P.degree_y < 1:
        raise HypothesisError("H", "P must have positive degree in Y")
    if P.lc_y()(0) == 0:
        raise HypothesisError("H_b", "leading coefficient vanishes at 0", smallest_good_shift(P))
    if not hb_holds_at(P, 0):
        raise HypothesisError("H_b", "discriminant vanishes at 0", smallest_good_shift(P))


def _newton(A: QuotientAlgebra, P: BiPoly, phi, n):
    """Extend phi (shape (k, m), k >= 1, exact mod X^k) to precision n."""
    F = A.field
    PY = P.diff_y()
    k = phi.shape[0]
    # g = 1 / P_Y(X, phi) mod X^k
    g = A.series_inv(A.eval_bipoly(PY, phi, k), k)
    while k < n:
        k2 = min(2 * k, n)
        ph = _pad(F, phi, k2)
        e = A.eval_bipoly(P, ph, k2)
        ph = F.red(ph - A.series_mul(_pad(F, g, k2), e, k2))
        if k2 < n:
            gp = _pad(F, g, k2)
            t = F.red(-A.series_mul(gp, A.eval_bipoly(PY, ph, k2), k2))
            t[0, 0] = F.add(t[0, 0], 2)
            g = A.series_mul(gp, t, k2)
        phi = ph
        k = k2
    return phi[:n]


def _pad(F, a, n):
    if a.shape[0] >= n:
        return a[:n]
    out = F.zeros((n,) + a.shape[1:])
    out[: a.shape[0]] = a
    return out


def newton_lift(P: BiPoly, precision: int, start: LiftedRoot | None = None) -> LiftedRoot:
    """phi in A[[X]] with phi(0) = y and P(X, phi) = 0 mod X^precision."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    check_hb(P)
    F = P.field
    A = QuotientAlgebra(P.eval_x(0))
    if start is not None and start.algebra == A and start.poly == P:
        phi = start.series.coeffs
        if phi.shape[0] >= precision:
            return LiftedRoot(TruncSeries(A, phi[:precision].copy()), P, 0, A)
    else:
        phi = F.zeros((1, A.m))
        phi[0] = A.y().rep
    phi = _newton(A, P, phi, precision)
    return LiftedRoot(TruncSeries(A, phi), P, 0, A)


def lift_scalar_root(P: BiPoly, y0, precision: int) -> LiftedRoot:
    """The root alpha in K[[X]] with alpha(0) = y0, for a simple root y0 of P(0, Y)."""
    F: FieldSpec = P.field
    y0 = F(y0)
    p0 = P.eval_x(0)
    if p0(y0) != 0:
        raise HypothesisError("root", f"{y0} is not a root of P(0, Y)")
    if p0.derivative()(y0) == 0:
        raise HypothesisError("root", f"{y0} is a multiple root of P(0, Y)")
    A = QuotientAlgebra(UniPoly(F, [F.neg(y0), 1], "Y"), check=False)
    phi = F.zeros((1, 1))
    phi[0, 0] = y0
    phi = _newton(A, P, phi, precision)
    return LiftedRoot(TruncSeries(F, phi[:, 0].copy()), P, 0, None)


def defect(P: BiPoly, root: LiftedRoot):
    """P(X, series) mod X^precision as a coefficient array (zero for a valid lift)."""
    n = root.precision
    if root.algebra is not None:
        return root.algebra.eval_bipoly(P, root.series.coeffs, n)
    F = P.field
    A = QuotientAlgebra(UniPoly(F, [0, 1], "Y"), check=False)
    return A.eval_bipoly(P, root.series.coeffs.reshape(-1, 1), n)[:, 0]
