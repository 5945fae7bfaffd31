import random

import pytest

from gen_helpers import random_witness_instance, sqrt2_instance
from kronkit.errors import ZeroLambda
from kronkit.forms import LinearFormSystem
from kronkit.hypothesis import check_theorem1_hypothesis
from kronkit.instances import KroneckerInstance
from kronkit.oracle import grid_witness_oracle
from kronkit.scalar import Q, Real, Scalar, qceil
from kronkit.witness import (FeasibleSet, coordinate_feasible_set,
                             feasible_region, find_integer_point, find_t,
                             find_t_via_reduction, intersect,
                             reduce_theorem1, verify_witness)


def rat(*a):
    return Scalar(Q(*a))


class TestCoordinateFeasibleSet:
    def test_unit_lambda(self):
        s = coordinate_feasible_set(rat(1), rat(1, 2), Q(1, 4), (Q(0), Q(1)))
        assert s.intervals == [(Q(1, 4), Q(3, 4))]

    def test_lambda_two(self):
        s = coordinate_feasible_set(rat(2), rat(0), Q(1, 4), (Q(0), Q(1)))
        assert s.intervals == [(Q(0), Q(1, 8)), (Q(3, 8), Q(5, 8)),
                               (Q(7, 8), Q(1))]

    def test_negative_lambda_matches_positive(self):
        pos = coordinate_feasible_set(rat(2), rat(0), Q(1, 4),
                                      (Q(0), Q(1)))
        neg = coordinate_feasible_set(rat(-2), rat(0), Q(1, 4),
                                      (Q(0), Q(1)))
        assert pos.intervals == neg.intervals

    def test_degenerate_empty(self):
        s = coordinate_feasible_set(rat(0), rat(2, 5), Q(3, 10),
                                    (Q(0), Q(1)))
        assert s.is_empty

    def test_degenerate_full(self):
        s = coordinate_feasible_set(rat(0), rat(1, 5), Q(3, 10),
                                    (Q(0), Q(1)))
        assert s.intervals == [(Q(0), Q(1))]


class TestIntersect:
    def test_basic(self):
        w = (Q(0), Q(2))
        a = FeasibleSet(w, [(Q(0), Q(1))])
        b = FeasibleSet(w, [(Q(1, 2), Q(2))])
        assert intersect(a, b).intervals == [(Q(1, 2), Q(1))]

    def test_multi(self):
        w = (Q(0), Q(1))
        a = FeasibleSet(w, [(Q(0), Q(1, 8)), (Q(3, 8), Q(5, 8))])
        b = FeasibleSet(w, [(Q(1, 4), Q(3, 4))])
        assert intersect(a, b).intervals == [(Q(3, 8), Q(5, 8))]

    def test_empty(self):
        w = (Q(0), Q(1))
        a = FeasibleSet(w, [(Q(0), Q(1))])
        assert intersect(a, FeasibleSet(w)).is_empty

    def test_commutative(self):
        rng = random.Random(2)
        w = (Q(0), Q(10))
        for _ in range(50):
            ivs1 = [(Q(rng.randint(0, 90), 10),) * 2 for _ in range(4)]
            ivs1 = [(a[0], a[0] + Q(rng.randint(0, 20), 10)) for a in ivs1]
            ivs2 = [(Q(rng.randint(0, 90), 10),) * 2 for _ in range(4)]
            ivs2 = [(a[0], a[0] + Q(rng.randint(0, 20), 10)) for a in ivs2]
            a, b = FeasibleSet(w, ivs1), FeasibleSet(w, ivs2)
            assert intersect(a, b) == intersect(b, a)

    def test_normalization_idempotent(self):
        w = (Q(0), Q(5))
        raw = [(Q(3), Q(4)), (Q(1), Q(2)), (Q(2), Q(3)), (Q(6), Q(7))]
        once = FeasibleSet(w, raw)
        twice = FeasibleSet(w, once.intervals)
        assert once == twice
        assert once.intervals == [(Q(1), Q(4))]


class TestFindT:
    def test_trivial(self):
        inst = KroneckerInstance(
            lam=[Real.rational(1)], alpha=[Real.rational(Q(1, 2))],
            eps=[Real.rational(Q(1, 4))])
        w = find_t(inst, Q(1))
        assert w.t == Q(1, 2)
        assert w.residuals[0].lo == 0

    def test_analytic_infeasible(self):
        inst = KroneckerInstance(
            lam=[Real.rational(1), Real.rational(1)],
            alpha=[Real.rational(0), Real.rational(Q(1, 2))],
            eps=[Real.rational(Q(1, 5))] * 2)
        for T in (1, 10, 100):
            assert find_t(inst, Q(T)) is None

    def test_sqrt2_agrees_with_grid_oracle(self):
        inst = sqrt2_instance(eps=Q(3, 10))
        w = find_t(inst, Q(8))
        assert w is not None
        step = Q(1, 10 ** 4)
        t = grid_witness_oracle(inst, Q(8), step)
        assert t is not None
        _, ok = verify_witness(inst, w.t)
        assert ok


class TestVerifyWitness:
    def test_exact_hit(self):
        inst = KroneckerInstance(
            lam=[Real.rational(1)], alpha=[Real.rational(Q(1, 2))],
            eps=[Real.rational(Q(1, 4))])
        res, ok = verify_witness(inst, Q(1, 2))
        assert ok and res[0].lo == 0

    def test_miss(self):
        inst = KroneckerInstance(
            lam=[Real.rational(1)], alpha=[Real.rational(Q(1, 2))],
            eps=[Real.rational(Q(1, 4))])
        res, ok = verify_witness(inst, Q(4, 5))
        assert not ok and res[0].lo == Q(3, 10)


class TestFindIntegerPoint:
    def test_boundary_acceptance(self):
        sys_ = LinearFormSystem([[rat(1, 2)]])
        q = find_integer_point(sys_, [rat(1, 4)], [Q(1, 4)], [Q(0)], [Q(4)])
        assert q == (0,)

    def test_none(self):
        sys_ = LinearFormSystem([[rat(1, 3)]])
        q = find_integer_point(sys_, [rat(1, 2)], [Q(1, 10)], [Q(0)],
                               [Q(2)])
        assert q is None

    def test_identity(self):
        # residuals are measured modulo 1, so with an integer
        # coefficient every q solves it and the lex-first point wins
        sys_ = LinearFormSystem([[rat(1)]])
        q = find_integer_point(sys_, [rat(5)], [Q(1, 10)], [Q(0)], [Q(10)])
        assert q == (0,)


class TestReduction:
    def test_pivot_choice(self):
        inst = KroneckerInstance(
            lam=[Real.parse("sqrt(2)"), Real.rational(1)],
            alpha=[Real.rational(0)] * 2,
            eps=[Real.rational(Q(1, 20))] * 2)
        rec = reduce_theorem1(inst, delta=Q(1, 100))
        assert rec.pivot == 0

    def test_pivot_second(self):
        rec = reduce_theorem1(sqrt2_instance(), delta=Q(1, 100))
        assert rec.pivot == 1
        # theta = 1/sqrt(2)
        th = rec.theta[0]
        assert th.lo ** 2 < Q(1, 2) < th.hi ** 2

    def test_lift_zeroes_pivot_residual(self):
        rec = reduce_theorem1(sqrt2_instance(), delta=Q(1, 100))
        t = rec.lift(3)
        assert float(t.mid) == pytest.approx(2.4749, abs=1e-4)
        prod = rec.lam_pivot * Scalar(t.mid) - rec.alpha_pivot
        # at the midpoint of the lift enclosure the product is within
        # enclosure width of the integer 3
        assert abs(float(prod.mid) - 3) < 1e-30

    def test_zero_lambda_rejected(self):
        inst = KroneckerInstance(
            lam=[Real.rational(0), Real.rational(1)],
            alpha=[Real.rational(0)] * 2,
            eps=[Real.rational(Q(1, 20))] * 2)
        with pytest.raises(ZeroLambda):
            reduce_theorem1(inst, delta=Q(1, 100))

    def test_reduction_soundness_rational(self):
        rng = random.Random(17)
        hits = 0
        for _ in range(50):
            n = rng.randint(2, 3)
            lam = [Q(rng.randint(1, 12), rng.randint(1, 6))
                   * rng.choice([-1, 1]) for _ in range(n)]
            eps = [Q(1, 8) + Q(rng.randint(0, 23), 64) for _ in range(n)]
            tau = Q(rng.randint(-20, 20), 4)
            delta = Q(1, rng.randint(20, 80))
            alpha_p = Q(rng.randint(-10, 10), 7)
            probe = KroneckerInstance(
                lam=[Real.rational(x) for x in lam],
                alpha=[Real.rational(alpha_p)] * n,
                eps=[Real.rational(e) for e in eps],
                tau=Real.rational(tau), delta=Real.rational(delta))
            rec0 = reduce_theorem1(probe, delta=delta)
            p = rec0.pivot
            q0 = qceil(rec0.tau_prime.hi)
            t0 = (alpha_p + q0) / lam[p]
            alpha = []
            for i in range(n):
                if i == p:
                    alpha.append(alpha_p)
                else:
                    eta = eps[i] / 2 * rng.choice([-1, 1])
                    alpha.append(lam[i] * t0 - eta)
            inst = KroneckerInstance(
                lam=[Real.rational(x) for x in lam],
                alpha=[Real.rational(a) for a in alpha],
                eps=[Real.rational(e) for e in eps],
                tau=Real.rational(tau), delta=Real.rational(delta))
            rec, q, t = find_t_via_reduction(inst)
            assert q is not None
            assert t.is_exact
            res, ok = verify_witness(inst, t.lo)
            assert ok
            assert res[rec.pivot].is_exact and res[rec.pivot].lo == 0
            hits += 1
        assert hits == 50


class TestProperties:
    def test_sweep_matches_grid_oracle(self):
        rng = random.Random(23)
        for _ in range(100):
            inst, T = random_witness_instance(rng)
            eps = inst.eps_rationals()
            lam_mag = max(abs(l.arg) for l in inst.lam)
            step = min(eps) / (4 * lam_mag)
            w = find_t(inst, T)
            if w is None:
                assert grid_witness_oracle(inst, T, step) is None
            else:
                _, ok = verify_witness(inst, w.t)
                assert ok
                region = feasible_region(inst, T)
                longest = max(b - a for a, b in region.intervals)
                if longest >= 2 * step:
                    assert grid_witness_oracle(inst, T, step) is not None

    def test_window_translation_covariance(self):
        rng = random.Random(29)
        for _ in range(50):
            inst, T = random_witness_instance(rng)
            s = Q(rng.randint(-8, 8), 3)
            t = Q(rng.randint(0, 40), 5)
            shifted = KroneckerInstance(
                lam=inst.lam,
                alpha=[Real.rational(a.arg + l.arg * s)
                       for a, l in zip(inst.alpha, inst.lam)],
                eps=inst.eps, tau=inst.tau)
            _, ok1 = verify_witness(inst, t)
            _, ok2 = verify_witness(shifted, t + s)
            assert ok1 == ok2

    def test_intersection_order_independent(self):
        inst = sqrt2_instance(eps=Q(3, 10))
        region = feasible_region(inst, Q(8))
        # recompute with reversed constraint order
        window = (Q(0), Q(8))
        sets = [coordinate_feasible_set(l, a, e, window)
                for l, a, e in zip(inst.lambdas(), inst.alphas(),
                                   inst.eps_rationals())]
        acc = FeasibleSet.full(window)
        for s in reversed(sets):
            acc = acc.intersect(s)
        assert acc == region
