"""Dual form pairs and the finite transference condition check.

The dual construction turns an m x n system with accuracy weights eps
and range weights X into d = m + n pairs of forms (f_k, g_k) whose
pairing is the identity; building it and checking F^T G = I validates
the bookkeeping.  The solvability condition itself is evaluated directly
on the system: for every nonzero integer u in a finite cutoff box,
||sum u_j alpha_j|| must not exceed
gamma1 * max(max_i X_i ||R_i(u)||, max_j eps_j |u_j|).
Outside the box the right side already exceeds 1/2, so the finite check
is complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .bounds import gamma1
from .errors import (BudgetExceeded, DimensionMismatch, DomainError,
                     PrecisionExhausted)
from .forms import LinearFormSystem
from .hypothesis import DEFAULT_BUDGET, IntBox, _canonical_vectors
from .scalar import Q, Scalar, dist_to_nearest_int, qfloor

PROBE_BUDGET = 10 ** 7


@dataclass
class DualPair:
    """Coefficient matrices of the f (over z) and g (over w) forms."""

    F: list  # d x d Scalars, row k = coefficients of f_k
    G: list  # d x d Scalars, row k = coefficients of g_k
    sys: LinearFormSystem
    eps: list
    X: list

    @property
    def d(self) -> int:
        return len(self.F)


def build_dual_pair(sys: LinearFormSystem, eps: Sequence, X: Sequence
                    ) -> DualPair:
    """Assemble the dual forms in variables z = (x, y), w = (v, u)."""
    m, n, d = sys.m, sys.n, sys.d
    if len(eps) != n:
        raise DimensionMismatch("one eps per form required")
    if len(X) != m:
        raise DimensionMismatch("one X per variable required")
    eps = [Q(e) for e in eps]
    X = [Q(x) for x in X]
    if any(e <= 0 for e in eps) or any(x <= 0 for x in X):
        raise DomainError("eps and X must be positive")

    zero = Scalar(Q(0))
    F = [[zero] * d for _ in range(d)]
    G = [[zero] * d for _ in range(d)]
    for k in range(n):
        inv = Scalar(1 / eps[k])
        for i in range(m):
            F[k][i] = sys.theta[i][k] * inv
        F[k][m + k] = inv
        G[k][m + k] = Scalar(eps[k])
    for k in range(n, d):
        i = k - n
        F[k][i] = Scalar(1 / X[i])
        G[k][i] = Scalar(X[i])
        for j in range(n):
            G[k][m + j] = sys.theta[i][j] * Scalar(-X[i])
    return DualPair(F, G, sys, eps, X)


def verify_duality_identity(pair: DualPair) -> bool:
    """True iff F^T G is exactly the identity (rational mode only)."""
    d = pair.d
    for a in range(d):
        for b in range(d):
            s = Scalar(Q(0))
            for k in range(d):
                s = s + pair.F[k][a] * pair.G[k][b]
            want = Q(1) if a == b else Q(0)
            if not (s.is_exact and s.lo == want):
                return False
    return True


def condition_cutoff_box(eps: Sequence, g1) -> IntBox:
    """Box outside which the condition holds automatically.

    For |u_j| > 1/(2*gamma1*eps_j) the right side of the condition
    exceeds 1/2, which bounds every ||.|| value.
    """
    g1 = Q(g1)
    if g1 <= 0:
        raise DomainError("gamma1 must be positive")
    return IntBox([qfloor(1 / (2 * g1 * Q(e))) for e in eps])


@dataclass
class ConditionReport:
    gamma1_used: object
    checked_box: IntBox
    holds: bool
    violator: Optional[tuple]
    complete: bool = True

    def to_json(self):
        return {
            "gamma1_used": str(self.gamma1_used),
            "checked_box": self.checked_box.to_json(),
            "holds": self.holds,
            "violator": list(self.violator) if self.violator else None,
            "complete": self.complete,
        }


def check_condition(sys: LinearFormSystem, alpha: Sequence[Scalar],
                    eps: Sequence, X: Sequence, g1,
                    budget: int = DEFAULT_BUDGET) -> ConditionReport:
    """Evaluate the transference condition on every nonzero u in the box.

    Both sides are invariant under u -> -u, so only canonical vectors are
    visited; the reported violator is the first one in canonical
    lexicographic order.
    """
    g1 = Q(g1)
    eps = [Q(e) for e in eps]
    X = [Q(x) for x in X]
    box = condition_cutoff_box(eps, g1)
    count = box.point_count()
    if count > budget:
        raise BudgetExceeded(f"cutoff box has {count} points")

    g1s = Scalar(g1)
    for u in _canonical_vectors(box.bounds):
        s = Scalar(Q(0))
        for uj, a in zip(u, alpha):
            if uj:
                s = s + a * uj
        lhs = dist_to_nearest_int(s)
        rhs_lo = max(e * abs(uj) for e, uj in zip(eps, u))
        rhs = Scalar(rhs_lo)
        for xi, r in zip(X, sys.eval_transposed(u)):
            term = dist_to_nearest_int(r) * xi
            rhs = Scalar(max(rhs.lo, term.lo), max(rhs.hi, term.hi))
        rhs = g1s * rhs
        r = lhs.le(rhs)
        if r is None:
            raise PrecisionExhausted(f"condition undecided at u={u}")
        if not r:
            return ConditionReport(g1, box, False, tuple(u))
    return ConditionReport(g1, box, True, None)


def exhaustive_solution_search(sys: LinearFormSystem,
                               alpha: Sequence[Scalar], eps: Sequence,
                               X: Sequence,
                               budget: int = PROBE_BUDGET) -> Optional[tuple]:
    """Lexicographically smallest a with |a_i| <= X_i solving the system."""
    eps = [Q(e) for e in eps]
    bounds = [qfloor(Q(x)) for x in X]
    count = 1
    for b in bounds:
        count *= 2 * b + 1
    if count > budget:
        raise BudgetExceeded(f"search box has {count} points")
    for a in product(*(range(-b, b + 1) for b in bounds)):
        ok = True
        for v, al, e in zip(sys.eval_forms(a), alpha, eps):
            d = dist_to_nearest_int(v - al)
            if d.hi <= e:
                continue
            if d.lo > e:
                ok = False
                break
            raise PrecisionExhausted(f"residual straddles epsilon at a={a}")
        if ok:
            return tuple(a)
    return None


def necessity_probe(sys: LinearFormSystem, alpha: Sequence[Scalar],
                    eps: Sequence, X: Sequence,
                    budget: int = PROBE_BUDGET) -> dict:
    """If the system is solvable, the condition with gamma1 = d must hold."""
    a = exhaustive_solution_search(sys, alpha, eps, X, budget)
    if a is None:
        return {"outcome": "NoSolution", "solution": None, "condition": None}
    report = check_condition(sys, alpha, eps, X, gamma1(sys.d, "A"), budget)
    if report.holds:
        return {"outcome": "SolutionAndConditionHold", "solution": a,
                "condition": report}
    return {"outcome": "CounterexampleToPartA", "solution": a,
            "condition": report}


def sufficiency_probe(sys: LinearFormSystem, alpha: Sequence[Scalar],
                      eps: Sequence, X: Sequence,
                      budget: int = PROBE_BUDGET) -> dict:
    """If the condition with the small gamma1 holds, a solution must exist."""
    report = check_condition(sys, alpha, eps, X, gamma1(sys.d, "B"), budget)
    if not report.holds:
        return {"outcome": "ConditionFails", "solution": None,
                "condition": report}
    a = exhaustive_solution_search(sys, alpha, eps, X, budget)
    if a is not None:
        return {"outcome": "ConditionHoldsSolutionFound", "solution": a,
                "condition": report}
    return {"outcome": "CounterexampleToPartB", "solution": None,
            "condition": report}
