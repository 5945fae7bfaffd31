import pytest

from gen_helpers import sqrt2_instance
from kronkit.errors import BudgetExceeded
from kronkit.forms import LinearFormSystem
from kronkit.hypothesis import IntBox
from kronkit.instances import KroneckerInstance
from kronkit.oracle import (exhaustive_min_oracle, exhaustive_solution_oracle,
                            grid_witness_oracle)
from kronkit.scalar import Q, Real, Scalar


def rat(*a):
    return Scalar(Q(*a))


class TestGridWitnessOracle:
    def test_first_feasible_grid_point(self):
        inst = KroneckerInstance(
            lam=[Real.rational(1)], alpha=[Real.rational(Q(1, 2))],
            eps=[Real.rational(Q(1, 4))])
        t = grid_witness_oracle(inst, Q(1), Q(1, 100))
        assert t == Q(1, 4)

    def test_infeasible(self):
        inst = KroneckerInstance(
            lam=[Real.rational(1), Real.rational(1)],
            alpha=[Real.rational(0), Real.rational(Q(1, 2))],
            eps=[Real.rational(Q(1, 5))] * 2)
        assert grid_witness_oracle(inst, Q(2), Q(1, 50)) is None

    def test_sqrt2_feasible(self):
        inst = sqrt2_instance(eps=Q(3, 10))
        assert grid_witness_oracle(inst, Q(8), Q(1, 100)) is not None


class TestExhaustiveMinOracle:
    def test_sqrt2(self):
        s2 = Real.parse("sqrt(2)").scalar(128)
        v, m = exhaustive_min_oracle([rat(1), s2], IntBox((3, 3)))
        assert m == (3, -2)
        assert float(v.mid) == pytest.approx(0.171573, abs=1e-6)

    def test_one_dim(self):
        v, m = exhaustive_min_oracle([rat(1)], IntBox((1,)))
        assert v.lo == 1 and m == (1,)

    def test_exact_dependence(self):
        v, m = exhaustive_min_oracle([rat(2), rat(1)], IntBox((2, 2)))
        assert v.lo == 0 and m == (1, -2)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            exhaustive_min_oracle([rat(1)] * 8, IntBox((6,) * 8))


class TestExhaustiveSolutionOracle:
    def test_achievable(self):
        sys_ = LinearFormSystem([[rat(1, 3)]])
        alpha = sys_.eval_forms([2])
        a = exhaustive_solution_oracle(sys_, alpha, [Q(1, 8)], [Q(4)])
        assert a is not None
        # any solution at or lexicographically before (2,)
        assert a <= (2,)

    def test_unachievable(self):
        sys_ = LinearFormSystem([[rat(0)]])
        a = exhaustive_solution_oracle(sys_, [rat(1, 2)], [Q(1, 4)],
                                       [Q(2)])
        assert a is None

    def test_matches_optimized_scan(self):
        import random

        from gen_helpers import random_linear_system
        from kronkit.transference import exhaustive_solution_search

        rng = random.Random(41)
        for _ in range(50):
            sys_, alpha, eps, X = random_linear_system(rng)
            assert (exhaustive_solution_oracle(sys_, alpha, eps, X)
                    == exhaustive_solution_search(sys_, alpha, eps, X))
