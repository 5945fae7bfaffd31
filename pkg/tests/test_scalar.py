import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kronkit.errors import AmbiguousEnclosure, DomainError
from kronkit.scalar import (HALF, Q, Real, Scalar, dist_to_nearest_int,
                            nearest_int, parse_rational)

rationals = st.fractions(min_value=-100, max_value=100)


def q(f):
    return Q(f.numerator, f.denominator)


class TestDistToNearestInt:
    def test_seven_thirds(self):
        assert dist_to_nearest_int(Scalar(Q(7, 3))).lo == Q(1, 3)

    def test_negative(self):
        assert dist_to_nearest_int(Scalar(Q(-3, 10))).lo == Q(3, 10)

    def test_point_enclosure(self):
        x = Scalar(Q(6, 5), Q(6, 5))
        assert dist_to_nearest_int(x).lo == Q(1, 5)

    def test_wide_enclosure_folds(self):
        d = dist_to_nearest_int(Scalar(Q(0), Q(3)))
        assert d.lo == 0 and d.hi == HALF

    def test_straddles_integer(self):
        d = dist_to_nearest_int(Scalar(Q(9, 10), Q(11, 10)))
        assert d.lo == 0 and d.hi == Q(1, 10)

    def test_straddles_half(self):
        d = dist_to_nearest_int(Scalar(Q(2, 5), Q(3, 5)))
        assert d.lo == Q(2, 5) and d.hi == HALF

    @given(rationals, st.integers(min_value=-50, max_value=50))
    def test_periodicity(self, x, k):
        x = q(x)
        a = dist_to_nearest_int(Scalar(x))
        b = dist_to_nearest_int(Scalar(x + k))
        assert a.lo == b.lo

    @given(rationals)
    def test_range_and_symmetry(self, x):
        x = q(x)
        d = dist_to_nearest_int(Scalar(x))
        assert 0 <= d.lo <= HALF
        assert dist_to_nearest_int(Scalar(-x)).lo == d.lo

    def test_enclosure_soundness_bulk(self):
        rng = random.Random(7)
        for _ in range(1000):
            x = Q(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 4))
            pad = Q(rng.randint(0, 100), 10 ** 6)
            exact = dist_to_nearest_int(Scalar(x)).lo
            enc = dist_to_nearest_int(Scalar(x - pad, x + pad))
            assert enc.lo <= exact <= enc.hi


class TestNearestInt:
    def test_basic(self):
        assert nearest_int(Scalar(Q(12, 5))) == 2

    def test_tie_to_even(self):
        assert nearest_int(Scalar(Q(-3, 2))) == -2
        assert nearest_int(Scalar(Q(5, 2))) == 2

    def test_seventy_sqrt2(self):
        s2 = Real.parse("sqrt(2)").scalar(64)
        assert nearest_int(s2 * 70) == 99

    def test_ambiguous(self):
        with pytest.raises(AmbiguousEnclosure):
            nearest_int(Scalar(Q(1, 4), Q(3, 4)))


class TestArithmetic:
    def test_interval_mul_signs(self):
        a = Scalar(Q(-2), Q(3))
        b = Scalar(Q(-1), Q(5))
        assert (a * b).lo == Q(-10) and (a * b).hi == Q(15)

    def test_division_by_zero_interval(self):
        with pytest.raises(DomainError):
            Scalar(Q(1)) / Scalar(Q(-1), Q(1))

    def test_abs_straddle(self):
        v = abs(Scalar(Q(-3), Q(2)))
        assert v.lo == 0 and v.hi == 3

    def test_proven_comparisons(self):
        a = Scalar(Q(1), Q(2))
        b = Scalar(Q(3), Q(4))
        assert a.lt(b) is True and b.lt(a) is False
        assert Scalar(Q(1), Q(3)).lt(Scalar(Q(2), Q(4))) is None

    @given(rationals, rationals)
    def test_exact_arithmetic_matches(self, x, y):
        x, y = q(x), q(y)
        assert (Scalar(x) + Scalar(y)).lo == x + y
        assert (Scalar(x) * Scalar(y)).lo == x * y


class TestRealPresets:
    def test_decimal_parsing_exact(self):
        assert parse_rational("0.05") == Q(1, 20)
        assert parse_rational("1/20") == Q(1, 20)
        assert parse_rational("-2.5e-3") == Q(-1, 400)

    def test_sqrt_enclosure_contains_root(self):
        s = Real.parse("sqrt(2)").scalar(128)
        assert s.lo * s.lo < 2 < s.hi * s.hi
        assert s.width < Q(1, 2 ** 120)

    def test_precision_tightens(self):
        wide = Real.parse("log(3)").scalar(32)
        tight = Real.parse("log(3)").scalar(256)
        assert tight.width < wide.width
        assert wide.lo <= tight.lo and tight.hi <= wide.hi

    def test_perfect_square_collapses(self):
        r = Real.parse("sqrt(9)")
        assert r.is_rational and r.arg == 3

    def test_invalid_presets(self):
        with pytest.raises(DomainError):
            Real.parse("sqrt(1)")
        with pytest.raises(DomainError):
            Real.parse("log(1)")

    def test_known_constants(self):
        pi = Real.parse("pi").scalar(128)
        assert pi.contains(Q(3141592653589793, 10 ** 15)) or \
            (pi.lo < Q(3142, 1000) and pi.hi > Q(3141, 1000))
        phi = Real.parse("phi").scalar(128)
        # phi^2 = phi + 1
        sq = phi * phi
        assert sq.lo < (phi + 1).hi and sq.hi > (phi + 1).lo
