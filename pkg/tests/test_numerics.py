import math
import random

import mpmath
import pytest

from dilogverify.numerics import (
    EPS,
    InvalidInputError,
    Tolerance,
    compensated_sum,
    constant,
    rel_residual,
)


class TestCompensatedSum:
    def test_empty(self):
        assert compensated_sum([]) == 0.0

    def test_cancellation_is_exact(self):
        assert compensated_sum([1.0, -1.0, 1e-16]) == 1e-16

    def test_basel_partial_sum(self):
        total = compensated_sum(1.0 / (k * k) for k in range(1, 10**6 + 1))
        assert abs(total - math.pi**2 / 6) <= 1e-6

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidInputError):
            compensated_sum([1.0, math.nan])
        with pytest.raises(InvalidInputError):
            compensated_sum([math.inf, -math.inf])

    def test_permutations_match_high_precision(self):
        rng = random.Random(20240611)
        terms = [rng.uniform(-1.0, 1.0) for _ in range(1000)]
        with mpmath.workdps(60):
            exact = mpmath.fsum(mpmath.mpf(t) for t in terms)
        for _ in range(20):
            rng.shuffle(terms)
            got = compensated_sum(terms)
            assert abs(mpmath.mpf(got) - exact) <= 1e-15 * abs(exact)

    def test_beats_naive_fold(self):
        terms = [1e16, 1.0, -1e16] * 100
        assert sum(terms) != 100.0
        assert compensated_sum(terms) == 100.0


class TestRelResidual:
    def test_examples(self):
        assert rel_residual(5.0, 5.0) == 0.0
        assert rel_residual(0.0, 0.0) == 0.0
        assert rel_residual(1e6, 1e6 * (1 + 1e-12)) == pytest.approx(1e-12, rel=1e-3)

    def test_small_values_are_absolute(self):
        assert rel_residual(2e-3, 1e-3) == pytest.approx(1e-3)

    def test_symmetric(self):
        rng = random.Random(7)
        for _ in range(500):
            a = rng.uniform(-10, 10) * 10 ** rng.randint(-5, 5)
            b = rng.uniform(-10, 10) * 10 ** rng.randint(-5, 5)
            assert rel_residual(a, b) == rel_residual(b, a)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(InvalidInputError):
            rel_residual(bad, 1.0)
        with pytest.raises(InvalidInputError):
            rel_residual(1.0, bad)


class TestConstants:
    @pytest.mark.parametrize("name", ["pi", "sqrt2", "L", "kg"])
    def test_correctly_rounded(self, name):
        with mpmath.workdps(50):
            exact = {
                "pi": mpmath.pi,
                "sqrt2": mpmath.sqrt(2),
                "L": mpmath.log(1 + mpmath.sqrt(2)),
                "kg": mpmath.pi / (2 * mpmath.log(1 + mpmath.sqrt(2))),
            }[name]
            assert constant(name) == float(exact)

    def test_literal_digits(self):
        assert constant("L") == pytest.approx(0.88137358701954302523, abs=1e-16)
        assert constant("kg") == pytest.approx(1.7822139781913691118, abs=1e-15)

    def test_kg_definition_closes(self):
        pi = constant("pi")
        assert abs(constant("kg") * 2 * constant("L") - pi) <= 4 * math.ulp(pi)

    def test_exp_l(self):
        target = 1 + constant("sqrt2")
        assert abs(math.exp(constant("L")) - target) <= 4 * math.ulp(target)

    def test_unknown(self):
        with pytest.raises(LookupError):
            constant("e")


class TestTolerance:
    def test_validation(self):
        with pytest.raises(InvalidInputError):
            Tolerance(0.0, 0.0)
        with pytest.raises(InvalidInputError):
            Tolerance(-1e-3, 1e-3)
        with pytest.raises(InvalidInputError):
            Tolerance(math.nan, 1e-3)

    def test_bound_and_threshold(self):
        t = Tolerance(1e-12, 1e-8)
        assert t.bound(10.0) == pytest.approx(1e-7)
        assert t.bound(0.0) == 1e-12
        assert t.threshold == 1e-8

    def test_coerce(self):
        default = Tolerance(1e-3, 0.0)
        assert Tolerance.coerce(None, default) is default
        assert Tolerance.coerce(1e-9, default) == Tolerance(1e-9, 1e-9)
        t = Tolerance(EPS, EPS)
        assert Tolerance.coerce(t, default) is t
