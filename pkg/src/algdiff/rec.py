"""Recurrences for the coefficients of D-finite series and fast expansion.

A theta-form operator sum_j c_j(X) theta^j with c_j = sum_a c_ja X^a acts on
u = sum u_n X^n as sum_n (sum_a q_a(n - a) u_{n-a}) X^n, q_a(t) = sum_j c_ja t^j.
Shifting the index gives r_0(n) u_n + ... + r_s(n) u_{n+s} = 0 with
r_i(n) = q_{A-i}(n + i), A the top X-degree and s = A - (lowest X-degree).

Unrolling needs u_0..u_{rho+s}, rho the largest nonnegative integer root of
r_s. Over F_p the leading values r_s(n) can vanish at indices that are not
roots over Q (n is only known mod p), so unrolling treats every such index as
a gap and fills it with a Newton correction computed from the exact prefix.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np
from sympy import Poly, Rational, Symbol

from .algebra import QuotientAlgebra
from .arith.field import FieldSpec
from .arith.poly import BiPoly, UniPoly
from .diffop import DiffOp
from .errors import HypothesisError
from .lift import check_hb, lift_scalar_root, newton_lift

_n = Symbol("n")


class Recurrence:
    """r_0(n) u_n + ... + r_s(n) u_{n+s} = 0 for n >= 0."""

    def __init__(self, field: FieldSpec, r):
        self.field = field
        self.r = [c if isinstance(c, UniPoly) else UniPoly(field, c, "n") for c in r]
        while self.r and self.r[-1].is_zero():
            self.r.pop()
        if not self.r:
            raise ValueError("zero recurrence")

    @property
    def s(self) -> int:
        return len(self.r) - 1

    order = s

    @property
    def degree(self) -> int:
        return max(c.deg for c in self.r)

    def __eq__(self, o):
        return isinstance(o, Recurrence) and self.field == o.field and self.r == o.r

    def normalized(self) -> "Recurrence":
        """Scalar content removed: integer coefficients with gcd 1 and r_s leading
        coefficient positive over Q, r_s monic over F_p."""
        F = self.field
        if F.is_rational:
            vals = [Fraction(c) for p in self.r for c in p.coeffs]
            den = lcm(*[v.denominator for v in vals])
            num = gcd(*[int(v * den) for v in vals])
            scale = Fraction(den, num)
            if self.r[-1].lc() < 0:
                scale = -scale
        else:
            scale = F.inv(self.r[-1].lc())
        return Recurrence(F, [p * scale for p in self.r])

    def residuals(self, u, start: int = 0, stop: int | None = None):
        """sum_i r_i(n) u_{n+i} for n in [start, stop), u a 1-D or 2-D coefficient array."""
        F = self.field
        u = np.asarray(u)
        stop = len(u) - self.s if stop is None else min(stop, len(u) - self.s)
        if stop <= start:
            return F.zeros((0,) + u.shape[1:])
        cnt = stop - start
        acc = F.zeros((cnt,) + u.shape[1:])
        for i, p in enumerate(self.r):
            v = eval_progression(p, start, cnt)
            if u.ndim == 2:
                v = v.reshape(-1, 1)
            acc = F.red(acc + F.red(v * u[start + i:start + i + cnt]))
        return acc

    def satisfied_by(self, u, start: int = 0) -> bool:
        return not np.any(self.residuals(u, start) != 0)

    def to_json(self) -> dict:
        F = self.field
        return {"field": F.to_json(),
                "r": [[F.to_str(c) for c in p.coeffs] for p in self.r]}

    def __str__(self):
        parts = []
        for i, p in enumerate(self.r):
            if p.is_zero():
                continue
            u = "u(n)" if i == 0 else f"u(n+{i})"
            parts.append(f"({p})*{u}")
        return " + ".join(parts) + " = 0"

    def __repr__(self):
        return f"Recurrence({self.field}, s={self.s}: {self})"


def diffop_to_recurrence(L: DiffOp) -> Recurrence:
    """The recurrence satisfied by the coefficients of every series L annihilates."""
    if L.is_zero():
        raise ValueError("zero operator")
    F = L.field
    T = L.to_theta()
    A = max(c.deg for c in T.coeffs)
    a_min = min(c.valuation() for c in T.coeffs if not c.is_zero())
    q = []
    for a in range(A + 1):
        q.append(UniPoly(F, [c[a] for c in T.coeffs], "n"))
    s = A - a_min
    r = [q[A - i].shift(i) for i in range(s + 1)]
    return Recurrence(F, r).normalized()


def largest_nonneg_int_root(r_s: UniPoly, N: int | None = None) -> int:
    """Largest integer root >= 0 of r_s over Q, -1 if none; always -1 over F_p."""
    if r_s.is_zero():
        raise ValueError("zero polynomial")
    F = r_s.field
    if not F.is_rational:
        return -1
    coeffs = [Rational(Fraction(c).numerator, Fraction(c).denominator) for c in r_s.coeffs]
    roots = Poly(list(reversed(coeffs)), _n).ground_roots()
    best = -1
    for x in roots:
        if x.is_integer and x >= 0:
            best = max(best, int(x))
    return best


def eval_progression(r: UniPoly, start: int, count: int, method: str = "differences"):
    """r(start), r(start+1), ..., r(start+count-1) as a field array.

    ``differences`` evaluates at deg+1 points and propagates the difference
    table with running sums; ``horner`` evaluates every point directly.
    """
    F = r.field
    if count < 1:
        raise ValueError("count must be at least 1")
    d = r.deg
    if d < 0:
        return F.zeros(count)
    if method == "horner" or count <= d + 1:
        pts = F.arange(start, count)
        acc = F.zeros(count)
        for c in r.coeffs[::-1]:
            acc = F.red(acc * pts)
            acc = F.red(acc + c)
        return acc
    seed = eval_progression(r, start, d + 1, "horner")
    # leading differences Delta^k r(start), k = 0..d
    diffs = []
    row = seed
    for _ in range(d + 1):
        diffs.append(row[0])
        row = F.red(row[1:] - row[:-1])
    # D_k(t+1) = D_k(t) + D_{k+1}(t); D_d is constant
    cur = np.full(count, diffs[d], dtype=F.dtype) if F.small else F.array([diffs[d]] * count)
    for k in range(d - 1, -1, -1):
        nxt = F.zeros(count)
        nxt[0] = diffs[k]
        if count > 1:
            nxt[1:] = np.cumsum(cur[:-1])
            nxt[1:] = F.red(nxt[1:] + diffs[k])
        cur = nxt
    return cur


@dataclass
class ExpansionPlan:
    rec: Recurrence
    rho: int
    initial: np.ndarray
    N: int
    P: BiPoly | None = None
    algebra: QuotientAlgebra | None = None

    def __post_init__(self):
        need = min(self.N, max(self.rho, -1) + 1 + self.rec.s)
        if len(self.initial) < need:
            raise ValueError(f"initial segment has {len(self.initial)} terms, need {need}")


# gaps closer than this share one Newton correction
_CLUSTER = 256


@dataclass
class UnrollStats:
    patches: int = 0
    patched_terms: int = 0


def _patch(A: QuotientAlgebra, P: BiPoly, U, m: int, w: int):
    """Coefficients m..m+w of the root from its exact prefix U[:m] (needs w < m).

    One Newton step: delta = -P(X, phi) / P_Y(X, phi) with phi = U[:m]; P(X, phi)
    has valuation >= m, so only P_Y mod X^(w+1) matters.
    """
    F = A.field
    n = m + w + 1
    phi = F.zeros((n, A.m))
    phi[:m] = U[:m]
    val = A.eval_bipoly(P, phi, n)[m:]
    py = A.eval_bipoly(P.diff_y(), phi[:w + 1], w + 1)
    return F.red(-A.series_mul(val, A.series_inv(py, w + 1), w + 1))


def unroll(plan: ExpansionPlan, stats: UnrollStats | None = None):
    """u_0..u_{N-1}: initial segment, then the recurrence, patching every index
    where the leading coefficient vanishes."""
    rec, N = plan.rec, plan.N
    F = rec.field
    s = rec.s
    init = np.asarray(plan.initial)
    scalar = init.ndim == 1
    width = 1 if scalar else init.shape[1]
    U = F.zeros((N, width))
    k0 = min(N, len(init))
    U[:k0] = init[:k0].reshape(k0, width)
    n0 = max(k0 - s, 0)
    n1 = N - s
    if n1 <= n0:
        return U[:, 0] if scalar else U
    cnt = n1 - n0
    R = F.zeros((cnt, s + 1))
    for i, p in enumerate(rec.r):
        R[:, i] = eval_progression(p, n0, cnt)
    lead = R[:, s].copy()
    gap = lead == 0
    if np.any(gap):
        if plan.P is None:
            raise HypothesisError("rec", "leading coefficient vanishes and no polynomial to patch from")
        A = plan.algebra
        if A is None:
            raise HypothesisError("rec", "patching needs the algebra carrying the root")
    safe = lead.copy()
    safe[gap] = F.one
    invs = F.inv_array(safe)
    neg = F.red(-R[:, :s])
    gaps = (np.nonzero(gap)[0] + n0 + s).tolist()
    gi = 0
    filled = k0 - 1
    small = F.small
    p = F.modulus if small else None
    for t in range(cnt):
        n = t + n0
        m = n + s
        if m <= filled:
            continue
        if gap[t]:
            # cluster of gaps reachable by one Newton step from the prefix U[:m]
            while gi < len(gaps) and gaps[gi] < m:
                gi += 1
            last = m
            j = gi
            while j < len(gaps) and gaps[j] - m < min(m, _CLUSTER):
                last = gaps[j]
                j += 1
            w = min(last - m, N - 1 - m)
            U[m:m + w + 1] = _patch(plan.algebra, plan.P, U, m, w)
            filled = m + w
            gi = j
            if stats is not None:
                stats.patches += 1
                stats.patched_terms += w + 1
            continue
        if small:
            acc = neg[t] @ U[n:m] % p
            U[m] = acc * invs[t] % p
        else:
            acc = F.red(neg[t].dot(U[n:m])) if s else F.zeros(width)
            U[m] = F.red(acc * invs[t])
        filled = m
    return U[:, 0] if scalar else U


# -- end-to-end expansion --------------------------------------------------

def _scalar_algebra(F, y0):
    return QuotientAlgebra(UniPoly(F, [F.neg(F(y0)), 1], "Y"), check=False)


def newton_expand(P: BiPoly, root, N: int):
    """First N coefficients by Newton iteration: 1-D for a scalar root, (N, m) for the algebra."""
    if root == "algebra":
        return newton_lift(P, N).series.coeffs
    return lift_scalar_root(P, root, N).series.coeffs


def operator_for(P: BiPoly, source: str = "resolvent", seed=None) -> DiffOp:
    """An operator associated to P: the resolvent, the preset-2 AlgToDiff operator,
    or the certified heuristic AlgToDiffP(P, B, B, d/dX)."""
    if source == "resolvent":
        from .resolvent import resolvent
        op, _ = resolvent(P, "series", "theta", seed=seed)
        return op
    if source == "algtodiff":
        from .algtodiff import alg_to_diff
        from .bounds import thm4_presets
        B_X, B_d = thm4_presets(P.degree_x, P.degree_y)[1]
        return alg_to_diff(P, B_X, B_d, "theta").op
    if source == "heuristic":
        from .algtodiff import alg_to_diff_prob, heuristic_params
        B_X, B_d = heuristic_params(P, "thm3")
        return alg_to_diff_prob(P, B_X, B_d, "d_dx", seed=seed).op
    raise ValueError(f"unknown operator source {source!r}")


def make_plan(P: BiPoly, root, N: int, op: DiffOp | None = None, source: str = "resolvent",
              seed=None) -> ExpansionPlan:
    """Operator -> recurrence -> rho -> Newton initial segment."""
    F = P.field
    if op is None:
        op = operator_for(P, source, seed)
    else:
        F.check(op.field)
    rec = diffop_to_recurrence(op)
    rho = largest_nonneg_int_root(rec.r[-1], N)
    k = min(N, max(rho, -1) + 1 + rec.s)
    k = max(k, 1)
    if root == "algebra":
        check_hb(P)
        A = QuotientAlgebra(P.eval_x(0))
        initial = newton_lift(P, k).series.coeffs
    else:
        A = _scalar_algebra(F, root)
        initial = lift_scalar_root(P, root, k).series.coeffs
    return ExpansionPlan(rec, rho, initial, N, P, A)


def expand(P: BiPoly, root, N: int, via: str = "recurrence", op: DiffOp | None = None,
           source: str = "resolvent", seed=None, stats: UnrollStats | None = None):
    """First N coefficients of a root of P (scalar root y0 or 'algebra')."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if via == "newton":
        return newton_expand(P, root, N)
    if via != "recurrence":
        raise ValueError(f"unknown method {via!r}")
    plan = make_plan(P, root, N, op, source, seed)
    return unroll(plan, stats)


def recurrence_dumps(rec: Recurrence) -> str:
    return json.dumps(rec.to_json())
