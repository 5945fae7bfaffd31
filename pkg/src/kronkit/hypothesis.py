"""Complete minimization of form values over integer boxes.

Verifies the Diophantine hypotheses by enumerating every nonzero integer
vector in a box and minimizing either |sum m_j lambda_j| or its distance
to the nearest integer.  Since the objective is symmetric under negation,
only canonical vectors (first nonzero entry positive) are visited; the
reported minimizer is always canonical and, among ties, lexicographically
smallest.

Three strategies share one contract: a pruned depth-first sweep, a
meet-in-the-middle search for large exact boxes, and the plain nested
loops living in the oracle module for cross-checking.
"""

from __future__ import annotations

from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .errors import BudgetExceeded, DomainError, PrecisionExhausted
from .forms import LinearFormSystem
from .scalar import Q, Scalar, dist_to_nearest_int, qceil, qfloor

DEFAULT_BUDGET = 10 ** 9
MITM_THRESHOLD = 10 ** 6


@dataclass(frozen=True)
class IntBox:
    """Symmetric integer box |m_j| <= bounds[j]."""

    bounds: tuple

    def __init__(self, bounds):
        bounds = tuple(int(b) for b in bounds)
        if any(b < 0 for b in bounds):
            raise DomainError("box bounds must be non-negative")
        object.__setattr__(self, "bounds", bounds)

    def __len__(self):
        return len(self.bounds)

    def point_count(self) -> int:
        c = 1
        for b in self.bounds:
            c *= 2 * b + 1
        return c

    def to_json(self):
        return list(self.bounds)


def canonicalize(vec: Sequence[int]) -> tuple:
    """Normalize so the first nonzero entry is positive."""
    for v in vec:
        if v > 0:
            return tuple(vec)
        if v < 0:
            return tuple(-x for x in vec)
    return tuple(vec)


def _dist_lb(lo, hi):
    """Lower bound of ||x|| over [lo, hi], exact rationals."""
    if hi - lo >= 1 or qfloor(hi) >= qceil(lo):
        return Q(0)
    flo = lo - qfloor(lo)
    fhi = hi - qfloor(hi)
    return min(min(flo, 1 - flo), min(fhi, 1 - fhi))


def _abs_lb(lo, hi):
    if lo <= 0 <= hi:
        return Q(0)
    return min(abs(lo), abs(hi))


class _Search:
    """Depth-first canonical enumeration with interval pruning."""

    def __init__(self, values: Sequence[Scalar], box: IntBox, mode: str):
        self.vals = list(values)
        self.box = box.bounds
        self.N = len(self.vals)
        self.mode = mode
        mags = [max(abs(v.lo), abs(v.hi)) for v in self.vals]
        tails = [Q(0)] * (self.N + 1)
        for k in range(self.N - 1, -1, -1):
            tails[k] = tails[k + 1] + self.box[k] * mags[k]
        self.tails = tails
        self.best = None  # (value: Scalar, minimizer: tuple)

    def run_first_range(self, lo: int, hi: int):
        for m0 in range(lo, hi + 1):
            s = self.vals[0] * m0 if m0 else Scalar(Q(0))
            self._rec(1, s, (m0,), m0 != 0)
        return self.best

    def _rec(self, k, s, vec, nonzero_seen):
        if k == self.N:
            if nonzero_seen:
                self._offer(s, vec)
            return
        if self.best is not None and self._prunable(s, k):
            return
        lam = self.vals[k]
        lo = 0 if not nonzero_seen else -self.box[k]
        for m in range(lo, self.box[k] + 1):
            t = s + lam * m if m else s
            self._rec(k + 1, t, vec + (m,), nonzero_seen or m != 0)

    def _prunable(self, s, k) -> bool:
        lo = s.lo - self.tails[k]
        hi = s.hi + self.tails[k]
        lb = _abs_lb(lo, hi) if self.mode == "abs" else _dist_lb(lo, hi)
        return lb >= self.best[0].hi

    def _offer(self, s, vec):
        v = abs(s) if self.mode == "abs" else dist_to_nearest_int(s)
        if self.best is None:
            self.best = (v, vec)
            return
        r = v.lt(self.best[0])
        if r is None:
            raise PrecisionExhausted(
                f"cannot order candidate minima near {vec}")
        if r:
            self.best = (v, vec)


def _better(a, b):
    """Deterministic merge of two (value, minimizer) results."""
    if a is None:
        return b
    if b is None:
        return a
    r = b[0].lt(a[0])
    if r is True:
        return b
    if r is False:
        if a[0].same_exact(b[0]) and b[1] < a[1]:
            return b
        return a
    raise PrecisionExhausted("cannot order candidate minima across workers")


def _dfs_min(values, box, mode, workers):
    b0 = box.bounds[0]
    if workers <= 1 or b0 == 0:
        return _Search(values, box, mode).run_first_range(0, b0)
    # contiguous chunks of the outermost coordinate, merged in order
    k = min(workers, b0 + 1)
    step = (b0 + 1 + k - 1) // k
    ranges = [(i, min(i + step - 1, b0)) for i in range(0, b0 + 1, step)]

    def job(rng):
        return _Search(values, box, mode).run_first_range(*rng)

    with ThreadPoolExecutor(max_workers=k) as ex:
        results = list(ex.map(job, ranges))
    best = None
    for r in results:
        best = _better(best, r)
    return best


def _mitm_min_abs(values, box):
    """Meet in the middle for exact values: sort one half, search the other."""
    qs = [v.lo for v in values]
    N = len(qs)
    h = (N + 1) // 2
    by_sum = {}
    for vec in product(*(range(-b, b + 1) for b in box.bounds[h:])):
        s = sum(q * m for q, m in zip(qs[h:], vec)) if vec else Q(0)
        by_sum.setdefault(s, []).append(vec)
    keys = sorted(by_sum)

    best = None
    for veca in product(*(range(-b, b + 1) for b in box.bounds[:h])):
        sa = sum(q * m for q, m in zip(qs[:h], veca))
        a_zero = not any(veca)
        idx = bisect_left(keys, -sa)
        for j in (idx - 1, idx):
            if not (0 <= j < len(keys)):
                continue
            val = abs(sa + keys[j])
            for vecb in by_sum[keys[j]]:
                if a_zero and not any(vecb):
                    continue
                cand = (Scalar(val), canonicalize(veca + vecb))
                best = _better(best, cand)
    return best


def _minimize(values, box, mode, strategy, workers, budget):
    values = list(values)
    if len(values) != len(box):
        raise DomainError("value vector and box dimension mismatch")
    count = box.point_count()
    if count > budget:
        raise BudgetExceeded(f"box has {count} points, budget {budget}")
    if count <= 1:
        raise DomainError("box contains no nonzero point")
    exact = all(v.is_exact for v in values)
    if strategy == "auto":
        strategy = "mitm" if (exact and mode == "abs"
                              and count > MITM_THRESHOLD) else "dfs"
    if strategy == "mitm":
        if not exact or mode != "abs":
            raise DomainError("meet-in-the-middle requires exact values "
                              "and the absolute-value objective")
        return _mitm_min_abs(values, box)
    if strategy == "dfs":
        return _dfs_min(values, box, mode, workers)
    raise DomainError(f"unknown strategy {strategy!r}")


def min_abs_form_over_box(lambdas: Sequence[Scalar], box: IntBox,
                          strategy: str = "auto", workers: int = 1,
                          budget: int = DEFAULT_BUDGET):
    """Minimum of |sum m_j lambda_j| over nonzero m in the box."""
    return _minimize(lambdas, box, "abs", strategy, workers, budget)


def min_dist_form_over_box(thetas: Sequence[Scalar], box: IntBox,
                           strategy: str = "auto", workers: int = 1,
                           budget: int = DEFAULT_BUDGET):
    """Minimum of ||sum m_j theta_j|| over nonzero m in the box."""
    return _minimize(thetas, box, "dist", strategy, workers, budget)


def min_max_transposed_over_box(sys: LinearFormSystem,
                                deltas: Sequence[Scalar], box: IntBox,
                                budget: int = DEFAULT_BUDGET):
    """Minimum over nonzero u of max_i ||R_i(u)|| / delta_i."""
    if len(box) != sys.n:
        raise DomainError("box must range over the n transposed coordinates")
    if len(deltas) != sys.m:
        raise DomainError("one delta per transposed form required")
    deltas = [d if isinstance(d, Scalar) else Scalar(Q(d)) for d in deltas]
    for d in deltas:
        if not d.gt(0):
            raise DomainError("deltas must be positive")
    count = box.point_count()
    if count > budget:
        raise BudgetExceeded(f"box has {count} points, budget {budget}")

    best = None
    for u in _canonical_vectors(box.bounds):
        rs = sys.eval_transposed(u)
        val = None
        for r, d in zip(rs, deltas):
            term = dist_to_nearest_int(r) / d
            if val is None:
                val = term
            else:
                val = Scalar(max(val.lo, term.lo), max(val.hi, term.hi))
        best = _better(best, (val, tuple(u)))
    if best is None:
        raise DomainError("box contains no nonzero point")
    return best


def _canonical_vectors(bounds):
    """All canonical nonzero vectors in the box, lexicographic order."""

    def rec(k, vec, nonzero):
        if k == len(bounds):
            if nonzero:
                yield vec
            return
        lo = 0 if not nonzero else -bounds[k]
        for m in range(lo, bounds[k] + 1):
            yield from rec(k + 1, vec + (m,), nonzero or m != 0)

    yield from rec(0, (), False)


@dataclass
class HypothesisCertificate:
    """Outcome of one complete box minimization against a threshold."""

    delta_hat: Scalar
    minimizer: tuple
    box: IntBox
    verdict: str  # Holds | Fails | Undecided
    threshold: Scalar
    rigor: str = "Proven"

    def to_json(self):
        return {
            "delta_hat": self.delta_hat.to_json(),
            "minimizer": list(self.minimizer),
            "box": self.box.to_json(),
            "verdict": self.verdict,
            "threshold": self.threshold.to_json(),
            "rigor": self.rigor,
        }


def check_theorem1_hypothesis(inst, strategy: str = "auto", workers: int = 1,
                              budget: int = DEFAULT_BUDGET,
                              max_bits: Optional[int] = None
                              ) -> HypothesisCertificate:
    """Decide the box-minimum hypothesis for a Kronecker instance.

    Escalates the working precision (doubling, up to max_bits) whenever
    enclosures cannot separate the candidates or settle the verdict.
    """
    from .bounds import box_theorem1
    from .scalar import MAX_BITS, with_escalation

    _, m_floor = box_theorem1(inst.N, inst.eps_rationals())
    box = IntBox(m_floor)
    cap = max_bits if max_bits is not None else max(MAX_BITS,
                                                   inst.precision_bits)

    def attempt(bits):
        lambdas = inst.lambdas(bits)
        delta_hat, minimizer = _minimize(lambdas, box, "abs", strategy,
                                         workers, budget)
        if inst.delta is not None:
            thr = inst.delta_scalar(bits)
            r = delta_hat.ge(thr)
            if r is None:
                raise PrecisionExhausted("delta_hat straddles the threshold")
            verdict = "Holds" if r else "Fails"
        else:
            sgn = delta_hat.sign()
            if sgn is None:
                raise PrecisionExhausted("delta_hat sign undecided")
            thr = delta_hat
            verdict = "Holds" if sgn > 0 else "Fails"
        return HypothesisCertificate(delta_hat, minimizer, box, verdict, thr)

    return with_escalation(attempt, inst.precision_bits, cap)
