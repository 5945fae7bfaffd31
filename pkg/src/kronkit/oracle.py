"""Brute-force references used by tests and example generation.

Everything here is deliberately plain: nested loops over the whole
search space, no pruning, no sharing with the optimized paths beyond the
scalar primitives.  Slow and trusted.
"""

from __future__ import annotations

from itertools import product
from typing import Optional

from .errors import BudgetExceeded
from .hypothesis import IntBox, canonicalize
from .scalar import Q, Scalar
from .witness import verify_witness

ORACLE_BUDGET = 10 ** 6


def grid_witness_oracle(inst, T, step) -> Optional[object]:
    """First grid point tau, tau+step, ... in the window passing
    verification, or None.

    With step <= min_j eps_j / (4 max_j |lambda_j|), any feasible
    interval of length >= 2*step contains a grid point, so a None answer
    on such instances is conclusive.
    """
    tau = inst.tau_rational()
    T = Q(T)
    step = Q(step)
    t = tau
    while t <= tau + T:
        _, ok = verify_witness(inst, t)
        if ok:
            return t
        t += step
    return None


def exhaustive_min_oracle(lambdas, box: IntBox):
    """Plain full-box minimum of |sum m_j lambda_j| with canonical argmin."""
    count = box.point_count()
    if count > ORACLE_BUDGET:
        raise BudgetExceeded(f"oracle box has {count} points")
    best = None
    for m in product(*(range(-b, b + 1) for b in box.bounds)):
        if not any(m):
            continue
        s = Scalar(Q(0))
        for mj, lam in zip(m, lambdas):
            if mj:
                s = s + lam * mj
        v = abs(s)
        c = canonicalize(m)
        if best is None:
            best = (v, c)
            continue
        if c == best[1]:
            # the mirror image of the incumbent; same value by symmetry
            continue
        r = v.lt(best[0])
        if r is True:
            best = (v, c)
        elif r is False:
            if v.same_exact(best[0]) and c < best[1]:
                best = (v, c)
        else:
            from .errors import PrecisionExhausted
            raise PrecisionExhausted(f"oracle cannot order minima at m={m}")
    return best


def exhaustive_solution_oracle(sys, alpha, eps, X,
                               budget: int = ORACLE_BUDGET):
    """Plain scan for the lexicographically smallest a with |a_i| <= X_i
    and ||L_j(a) - alpha_j|| <= eps_j, or None."""
    import math

    from .scalar import dist_to_nearest_int

    eps = [Q(e) for e in eps]
    bounds = [math.floor(Q(x)) for x in X]
    count = 1
    for b in bounds:
        count *= 2 * b + 1
    if count > budget:
        raise BudgetExceeded(f"oracle box has {count} points")
    for a in product(*(range(-b, b + 1) for b in bounds)):
        ok = True
        for j in range(sys.n):
            s = Scalar(Q(0))
            for i in range(sys.m):
                if a[i]:
                    s = s + sys.theta[i][j] * a[i]
            if not dist_to_nearest_int(s - alpha[j]).hi <= eps[j]:
                ok = False
                break
        if ok:
            return tuple(a)
    return None
