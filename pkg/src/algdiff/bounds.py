"""Degree, order and precision bounds used by the algorithms.

Everything here is integer arithmetic on the degrees of P, kept apart from
the algorithms so that the formulas can be checked on their own.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class DegreeProfile:
    D: int
    D_X: int
    D_Y: int

    def __post_init__(self):
        if self.D_Y < 1:
            raise ValueError("D_Y must be at least 1")
        if not max(self.D_X, self.D_Y) <= self.D <= self.D_X + self.D_Y:
            raise ValueError(f"inconsistent degrees {self}")

    @property
    def Delta(self) -> int:
        return self.D_X + self.D_Y - self.D

    @classmethod
    def of(cls, P) -> "DegreeProfile":
        return cls(P.total_degree, P.degree_x, P.degree_y)


@dataclass(frozen=True)
class BoundSet:
    B_X: int
    B_d: int
    Sigma: int
    sigma: int

    @classmethod
    def make(cls, D_X: int, D_Y: int, B_X: int, B_d: int) -> "BoundSet":
        return cls(B_X, B_d, big_sigma(B_X, B_d), sigma(D_X, D_Y, B_X, B_d))


def eta(D_X: int, D_Y: int, r: int) -> int:
    """Degree bound for the numerator and denominator of the resolvent's A_i."""
    if not 1 <= r <= D_Y:
        raise ValueError(f"order r={r} outside 1..{D_Y}")
    if D_X < 0:
        raise ValueError("D_X must be nonnegative")
    return ((2 * r - 1) * D_Y + 2 * r * r - 4 * r + 3) * D_X - r * (r - 1) // 2


def wk_degree_bounds(D_X: int, D_Y: int, k: int):
    """(deg_X, deg_Y) bounds for the numerator W_k of d^k alpha / dX^k."""
    return (2 * D_X - 1) * k - D_X, 2 * (D_Y - 1) * k - D_Y + 2


def thm2_bounds(D_X: int, D_Y: int):
    """(N_X, N_d, recurrence order, recurrence degree) for the quadratic telescoper."""
    if D_Y < 1:
        raise ValueError("D_Y must be at least 1")
    return 3 * D_X * D_Y, 6 * D_Y, 3 * D_Y * (D_X + 2), 6 * D_Y


def table_rows(N_X: int, N_d: int) -> int:
    """Number of rational functions X^i d_X^j d_Y^k F with i <= N_X, j + k <= N_d."""
    return (N_X + 1) * comb(N_d + 2, 2)


def table_cols(D_X: int, D_Y: int, N_X: int, N_d: int) -> int:
    """Size of the monomial box holding their numerators."""
    return (D_Y * (N_d + 1) + 1) * (N_X + 1 + D_X * (N_d + 1))


def thm3_bound(profile: DegreeProfile) -> int:
    d = profile.Delta
    return 2 * profile.D_X * profile.D_Y + profile.D_Y - d * d - d + 1


def thm4_presets(D_X: int, D_Y: int):
    if D_Y < 2:
        raise ValueError("the presets need D_Y >= 2")
    B = 4 * D_X * D_Y + D_Y - 2 * D_X - 2
    return [(4 * D_X * D_Y * D_Y, D_Y), (5 * D_X * D_Y, 5 * D_Y), (B, B)]


def big_sigma(B_X: int, B_d: int) -> int:
    """Truncation order for the Pade-Hermite problem."""
    return B_X * B_d + B_X + B_d


def sigma(D_X: int, D_Y: int, B_X: int, B_d: int) -> int:
    """Precision at which L(alpha) = 0 mod X^sigma certifies L(alpha) = 0."""
    return 4 * D_X * D_Y * B_d + B_X * D_Y - 2 * D_X * B_d


def certificate_precision(D_X: int, D_Y: int, B_X: int, B_d: int) -> int:
    """Precision that certifies an operator of order B_d and degree B_X.

    sigma exceeds the resultant degree bound by 2 D_X (D_Y - 1); for D_Y = 1
    the two coincide, so one more term is needed there.
    """
    s = sigma(D_X, D_Y, B_X, max(B_d, 1))
    return s + 1 if D_Y == 1 else s


def heuristic_params(D_X: int, D_Y: int, D: int | None = None):
    """Parameter pairs that work in practice: the experimental (B_X, B_d) and the
    square (B, B) with B from the minimal-degree bound."""
    if D is None:
        D = D_X + D_Y
    B = thm3_bound(DegreeProfile(D, D_X, D_Y))
    return [(3 * D_X * D_Y + 6 * D_Y, 6 * D_Y), (B, B)]


def monomial_count(delta: int, delta_X: int, delta_Y: int) -> int:
    """Monomials X^i Y^j with i <= delta_X, j <= delta_Y, i + j <= delta."""
    if not (max(delta_X, delta_Y) <= delta <= delta_X + delta_Y + 1):
        raise ValueError("need max(dX, dY) <= d <= dX + dY + 1")
    return (delta_X + 1) * (delta_Y + 1) - comb(delta_X + delta_Y - delta + 1, 2)


def theta_space_bounds(P_profile: DegreeProfile, d: int):
    """(total, X, Y) degree bounds of numerators G in G/P^(d+1)."""
    D, D_X, D_Y = P_profile.D, P_profile.D_X, P_profile.D_Y
    return (d + 1) * D + d, (d + 1) * D_X + d, (d + 1) * D_Y


def conjectured_min_degree(D_X: int, D_Y: int) -> int:
    """Observed bound on the minimal coefficient degree for bidegree (D_X, D_Y)."""
    if D_Y == 1:
        return D_X + 1
    return 2 * D_X * D_Y - 2 - (D_X - D_Y)


def conjectured_min_order_total(D: int):
    """Observed value D(D^2 - 5D/2 + 5/2) for total degree D (an integer)."""
    return (D * (2 * D * D - 5 * D + 5)) // 2


def conjectured_min_order_bidegree(D: int) -> int:
    return D * (2 * D * D - 3 * D + 3)


def all_bounds(D_X: int, D_Y: int, D: int | None = None, r: int | None = None) -> dict:
    """Every formula for the given degrees, as a JSON-ready dict."""
    if D is None:
        D = D_X + D_Y
    prof = DegreeProfile(D, D_X, D_Y)
    out = {"D": D, "D_X": D_X, "D_Y": D_Y, "Delta": prof.Delta}
    rr = D_Y if r is None else r
    out["eta"] = {"r": rr, "value": eta(D_X, D_Y, rr)}
    N_X, N_d, ro, rd = thm2_bounds(D_X, D_Y)
    out["thm2"] = {"N_X": N_X, "N_d": N_d, "rec_order": ro, "rec_deg": rd,
                   "rows": table_rows(N_X, N_d), "cols": table_cols(D_X, D_Y, N_X, N_d)}
    out["thm3_bound"] = thm3_bound(prof)
    if D_Y >= 2:
        out["thm4_presets"] = [
            {"B_X": bx, "B_d": bd, "Sigma": big_sigma(bx, bd), "sigma": sigma(D_X, D_Y, bx, bd)}
            for bx, bd in thm4_presets(D_X, D_Y)
        ]
    out["heuristic"] = [{"B_X": bx, "B_d": bd} for bx, bd in heuristic_params(D_X, D_Y, D)]
    return out
