"""Witness search by exact interval intersection, plus the pivot reduction.

The solution set of one constraint ||lambda*t - alpha|| <= eps inside a
window is a finite union of closed intervals; intersecting these unions
across coordinates yields every admissible t exactly.  Interval endpoints
are shaved conservatively (inner approximation) when lambda or alpha are
enclosures, so any t reported here verifies rigorously; a razor-thin
intersection lost to shaving is recovered by precision escalation.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .errors import (BudgetExceeded, DomainError, PrecisionExhausted,
                     ZeroLambda)
from .forms import LinearFormSystem
from .hypothesis import DEFAULT_BUDGET
from .instances import KroneckerInstance
from .scalar import (HALF, Q, Scalar, ceil_scalar, dist_to_nearest_int,
                     floor_scalar, qceil, qfloor)


class FeasibleSet:
    """Sorted disjoint closed intervals with rational endpoints in a window."""

    __slots__ = ("window", "intervals")

    def __init__(self, window, intervals=()):
        w0, w1 = Q(window[0]), Q(window[1])
        if w1 < w0:
            raise DomainError("window endpoints out of order")
        self.window = (w0, w1)
        self.intervals = self._normalize(intervals)

    def _normalize(self, intervals):
        w0, w1 = self.window
        clipped = []
        for a, b in intervals:
            a, b = max(Q(a), w0), min(Q(b), w1)
            if a <= b:
                clipped.append((a, b))
        clipped.sort()
        merged = []
        for a, b in clipped:
            if merged and a <= merged[-1][1]:
                if b > merged[-1][1]:
                    merged[-1] = (merged[-1][0], b)
            else:
                merged.append((a, b))
        return [tuple(iv) for iv in merged]

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def __len__(self):
        return len(self.intervals)

    def __eq__(self, other):
        return (isinstance(other, FeasibleSet)
                and self.window == other.window
                and self.intervals == other.intervals)

    def __repr__(self):
        return f"FeasibleSet({self.window}, {self.intervals})"

    @staticmethod
    def full(window) -> "FeasibleSet":
        return FeasibleSet(window, [window])

    def intersect(self, other: "FeasibleSet") -> "FeasibleSet":
        if self.window != other.window:
            raise DomainError("feasible sets live in different windows")
        out = []
        i = j = 0
        a, b = self.intervals, other.intervals
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        res = FeasibleSet(self.window)
        res.intervals = res._normalize(out)
        return res


def intersect(a: FeasibleSet, b: FeasibleSet) -> FeasibleSet:
    return a.intersect(b)


def coordinate_feasible_set(lam: Scalar, alpha: Scalar, eps, window
                            ) -> FeasibleSet:
    """Inner approximation of {t in window : ||lam*t - alpha|| <= eps}."""
    eps = Q(eps)
    w0, w1 = Q(window[0]), Q(window[1])
    sgn = lam.sign()
    if sgn is None:
        raise PrecisionExhausted("sign of a coordinate factor undecided")
    if sgn == 0:
        d = dist_to_nearest_int(alpha)
        if d.hi <= eps:
            return FeasibleSet((w0, w1), [(w0, w1)])
        if d.lo > eps:
            return FeasibleSet((w0, w1))
        raise PrecisionExhausted("degenerate coordinate straddles epsilon")

    # integer offsets whose bands can meet the window (outer estimate)
    p = lam * w0
    q = lam * w1
    plo, phi = min(p.lo, q.lo), max(p.hi, q.hi)
    k_min = qfloor(plo - alpha.hi - eps) - 1
    k_max = qceil(phi - alpha.lo + eps) + 1

    out = []
    for k in range(k_min, k_max + 1):
        e1 = (alpha + (k - eps)) / lam
        e2 = (alpha + (k + eps)) / lam
        if sgn > 0:
            a, b = e1.hi, e2.lo
        else:
            a, b = e2.hi, e1.lo
        if a <= b:
            out.append((a, b))
    return FeasibleSet((w0, w1), out)


@dataclass
class Witness:
    """An admissible t with independently recomputed residual enclosures."""

    t: object  # exact rational
    residuals: list[Scalar]
    window: tuple

    def to_json(self):
        return {
            "t": str(self.t),
            "residuals": [r.to_json() for r in self.residuals],
            "window": [str(self.window[0]), str(self.window[1])],
        }


def verify_witness(inst: KroneckerInstance, t, bits=None):
    """Recompute residuals ||lambda_j t - alpha_j|| from scratch.

    Returns (residuals, ok); ok means every residual upper bound is
    provably <= eps_j.
    """
    t = Q(t)
    lams = inst.lambdas(bits)
    alphas = inst.alphas(bits)
    eps = inst.eps_rationals()
    residuals = [dist_to_nearest_int(l * t - a) for l, a in zip(lams, alphas)]
    ok = all(r.hi <= e for r, e in zip(residuals, eps))
    return residuals, ok


def feasible_region(inst: KroneckerInstance, T, bits=None) -> FeasibleSet:
    """Exact intersection of all coordinate feasible sets over [tau, tau+T]."""
    tau = inst.tau_rational()
    window = (tau, tau + Q(T))
    lams = inst.lambdas(bits)
    alphas = inst.alphas(bits)
    eps = inst.eps_rationals()
    sets = [coordinate_feasible_set(l, a, e, window)
            for l, a, e in zip(lams, alphas, eps)]
    sets.sort(key=len)
    region = FeasibleSet.full(window)
    for s in sets:
        region = region.intersect(s)
        if region.is_empty:
            break
    return region


def find_t(inst: KroneckerInstance, T, bits=None) -> Optional[Witness]:
    """Midpoint of the first surviving feasible interval, or None."""
    region = feasible_region(inst, T, bits)
    if region.is_empty:
        return None
    a, b = region.intervals[0]
    t = (a + b) / 2
    residuals, ok = verify_witness(inst, t, bits)
    if not ok:
        # inner approximation guarantees this; reaching here means a bug
        raise AssertionError("witness failed independent verification")
    return Witness(t, residuals, region.window)


def find_integer_point(sys: LinearFormSystem, alpha: Sequence[Scalar],
                       eps: Sequence, tau: Sequence, T: Sequence,
                       budget: int = DEFAULT_BUDGET) -> Optional[tuple]:
    """Lexicographically smallest integer q in the window boxes solving
    ||L_j(q) - alpha_j|| <= eps_j, or None."""
    if not (len(tau) == len(T) == sys.m):
        raise DomainError("window vectors must have m entries")
    eps = [Q(e) for e in eps]
    ranges = []
    count = 1
    for t0, ti in zip(tau, T):
        lo, hi = qceil(Q(t0)), qfloor(Q(t0) + Q(ti))
        if hi < lo:
            return None
        ranges.append(range(lo, hi + 1))
        count *= hi - lo + 1
    if count > budget:
        raise BudgetExceeded(f"window box has {count} points")
    for q in product(*ranges):
        vals = sys.eval_forms(q)
        ok = True
        for v, a, e in zip(vals, alpha, eps):
            d = dist_to_nearest_int(v - a)
            if d.hi <= e:
                continue
            if d.lo > e:
                ok = False
                break
            raise PrecisionExhausted("residual straddles epsilon at "
                                     f"q={q}")
        if ok:
            return tuple(q)
    return None


@dataclass
class ReductionRecord:
    """Pivot-normalized data turning the t-problem into an integer one.

    The lift t = (alpha_pivot + q) / lambda_pivot makes the pivot residual
    identically zero: lambda_pivot * t - alpha_pivot = q, an integer.
    """

    pivot: int  # index into the original coordinates
    theta: list[Scalar]  # lambda_i / lambda_pivot, pivot omitted
    beta: list[Scalar]  # alpha_i - theta_i * alpha_pivot, pivot omitted
    tau_prime: Scalar
    T1: Scalar
    delta0: Scalar
    shift: tuple  # ceil(tau' + X) with X = T1/4, Corollary-1 style
    lam_pivot: Scalar
    alpha_pivot: Scalar

    def lift(self, q: int) -> Scalar:
        return (self.alpha_pivot + q) / self.lam_pivot

    def reduced_system(self) -> LinearFormSystem:
        return LinearFormSystem([self.theta])


def reduce_theorem1(inst: KroneckerInstance, delta=None, bits=None
                    ) -> ReductionRecord:
    """Divide through by the coordinate maximizing |lambda_i| / eps_i."""
    from .bounds import gamma

    lams = inst.lambdas(bits)
    alphas = inst.alphas(bits)
    eps = inst.eps_rationals()
    for i, l in enumerate(lams):
        s = l.sign()
        if s == 0:
            raise ZeroLambda(f"lambda[{i}] is zero")
        if s is None:
            raise PrecisionExhausted(f"sign of lambda[{i}] undecided")

    pivot = 0
    pivot_key = abs(lams[0]) / eps[0]
    for i in range(1, len(lams)):
        key = abs(lams[i]) / eps[i]
        r = key.gt(pivot_key)
        if r is None:
            raise PrecisionExhausted("pivot choice undecided")
        if r:
            pivot, pivot_key = i, key

    if delta is None:
        delta = inst.delta_rational()
    if delta is None:
        raise DomainError("reduction needs a delta (given or from instance)")
    delta = delta if isinstance(delta, Scalar) else Scalar(Q(delta))

    lp = lams[pivot]
    ap = alphas[pivot]
    abs_lp = abs(lp)
    theta = [lams[i] / lp for i in range(len(lams)) if i != pivot]
    beta = [alphas[i] - (lams[i] / lp) * ap
            for i in range(len(lams)) if i != pivot]

    d0 = delta / abs_lp
    # cap at 1/2: the distance to the nearest integer never exceeds it
    if d0.ge(HALF):
        delta0 = Scalar(HALF)
    elif d0.le(HALF):
        delta0 = d0
    else:
        raise PrecisionExhausted("delta0 cap comparison undecided")

    N = inst.N
    g1 = 2 * N * gamma(N)
    T1 = 2 / (Scalar(g1) * delta0)

    tau = inst.tau_rational()
    t_star = 1 / (Scalar(gamma(N)) * delta)
    # image of [tau, tau+T*] under q(t) = lam_pivot * t - alpha_pivot
    e1 = lp * tau - ap
    e2 = lp * (Scalar(tau) + t_star) - ap
    tau_prime = e1 if lp.sign() > 0 else e2

    x = T1 / 4
    shift = (ceil_scalar(tau_prime + x),)

    return ReductionRecord(pivot, theta, beta, tau_prime, T1, delta0,
                           shift, lp, ap)


def find_t_via_reduction(inst: KroneckerInstance, delta=None, bits=None,
                         budget: int = DEFAULT_BUDGET):
    """Route Theorem-1 search through the integer-point problem and lift.

    Returns (record, q, t) where q/t are None when the reduced search
    finds nothing in its window.
    """
    rec = reduce_theorem1(inst, delta, bits)
    tau_q = Scalar(qceil(rec.tau_prime.hi))  # conservative integer window
    lo = qceil(rec.tau_prime.hi)
    hi = qfloor((rec.tau_prime + rec.T1).lo)
    if hi < lo:
        return rec, None, None
    q = find_integer_point(rec.reduced_system(), rec.beta,
                           inst.eps_rationals()[:rec.pivot]
                           + inst.eps_rationals()[rec.pivot + 1:],
                           [Q(lo)], [Q(hi - lo)], budget)
    if q is None:
        return rec, None, None
    t = rec.lift(q[0])
    return rec, q[0], t
