import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate

from dilogverify.numerics import InvalidInputError, ResourceLimitError, Tolerance
from dilogverify.quadrature import (
    LOG_TANH_TAIL,
    Integrand,
    _WG,
    _WGK,
    _XGK,
    arcsin_over_sqrt_integral,
    integrate_adaptive,
    integrate_decaying_tail,
    integrate_log_endpoint,
    log_tanh,
    log_tanh_integral,
    sqrt_arcsin_integral,
)

L = 0.881373587019543
R = math.sqrt(2) - 1

# mpmath quad at 40 digits
SQRT_ARCSIN_R = 0.13972533877880770996
ARCSIN_OVER_SQRT_R = 0.4226454250941609183
LOG_TANH_0_1 = -1.0980880168335138525
LOG_TANH_0_HALF_L = -0.81105512504200890905
LOG_TANH_HALF_L_INF = -0.4226454250941609183

LOG_TANH_CORPUS = [(0.0, 1.0), (0.0, L / 2), (L / 2, math.inf), (0.0, math.inf), (0.1, 2.0)]


class TestRule:
    def test_gauss_nodes_and_weights(self):
        x, w = np.polynomial.legendre.leggauss(7)
        ours = sorted([-_XGK[1], -_XGK[3], -_XGK[5], 0.0, _XGK[5], _XGK[3], _XGK[1]])
        np.testing.assert_allclose(ours, x, atol=1e-15)
        np.testing.assert_allclose(sorted([_WG[0], _WG[1], _WG[2]] * 2 + [_WG[3]]), sorted(w), atol=1e-15)

    def test_weights_sum_to_interval_length(self):
        assert 2 * sum(_WGK[:7]) + _WGK[7] == pytest.approx(2.0, abs=1e-15)
        assert 2 * sum(_WG[:3]) + _WG[3] == pytest.approx(2.0, abs=1e-15)

    @pytest.mark.parametrize("degree", range(14))
    def test_polynomial_exactness_single_panel(self, degree):
        r = integrate_adaptive(lambda x: x**degree, 0.0, 1.0, Tolerance(1e-14, 0.0))
        assert r.evals == 15
        assert abs(r.value - 1.0 / (degree + 1)) <= 1e-14

    def test_linear(self):
        r = integrate_adaptive(lambda x: x, 0.0, 1.0)
        assert abs(r.value - 0.5) <= 1e-14 and r.err_est >= 0

    def test_degree_30_needs_refinement(self):
        r = integrate_adaptive(lambda x: x**30, 0.0, 1.0, Tolerance(1e-14, 0.0))
        assert r.evals > 15
        assert abs(r.value - 1.0 / 31) <= 1e-14


class TestAdaptive:
    def test_sqrt_arcsin(self):
        assert abs(sqrt_arcsin_integral(1.0, R).value - SQRT_ARCSIN_R) <= 1e-13

    def test_arcsin_over_sqrt_equals_chi2(self):
        assert abs(arcsin_over_sqrt_integral(1.0, R).value - ARCSIN_OVER_SQRT_R) <= 1e-9

    @pytest.mark.parametrize("a,b", [(0.5, 1.6), (2.0, -0.4), (1.0, 0.9)])
    def test_sqrt_arcsin_against_scipy(self, a, b):
        ref, _ = sp_integrate.quad(lambda x: math.sqrt(a * a - x * x) * math.asin(b * x), 0.0, a,
                                   epsabs=1e-13, epsrel=1e-12, limit=200)
        assert sqrt_arcsin_integral(a, b, 1e-12).value == pytest.approx(ref, abs=1e-11)

    def test_claimed_error_is_honest(self):
        f = lambda x: math.exp(-x) * math.cos(7 * x)
        exact = (1 - math.exp(-3) * (math.cos(21) - 7 * math.sin(21))) / 50
        for t in (1e-4, 1e-7, 1e-10, 1e-13):
            r = integrate_adaptive(f, 0.0, 3.0, Tolerance(t, 0.0))
            assert abs(r.value - exact) <= r.err_est

    def test_split_additivity(self):
        f = lambda x: math.sin(x) / (1 + x * x)
        whole = integrate_adaptive(f, 0.0, 5.0)
        for cut in (0.3, 1.7, 4.2):
            left = integrate_adaptive(f, 0.0, cut)
            right = integrate_adaptive(f, cut, 5.0)
            assert abs(left.value + right.value - whole.value) <= whole.err_est + left.err_est + right.err_est

    def test_deterministic(self):
        f = lambda x: 1 / (1 + 25 * x * x)
        assert integrate_adaptive(f, -1.0, 1.0) == integrate_adaptive(f, -1.0, 1.0)

    def test_accepts_integrand_object(self):
        r = integrate_adaptive(Integrand(math.cos, 0.0, 1.0), 0.0, 1.0)
        assert r.value == pytest.approx(math.sin(1.0), abs=1e-14)

    @pytest.mark.parametrize("lo,hi", [(1.0, 1.0), (2.0, 1.0), (0.0, math.inf), (math.nan, 1.0)])
    def test_bad_interval(self, lo, hi):
        with pytest.raises(InvalidInputError):
            integrate_adaptive(math.sin, lo, hi)

    def test_non_integrable_hits_limit(self):
        with pytest.raises(ResourceLimitError) as info:
            integrate_adaptive(lambda x: 1.0 / x if x else 1e300, 0.0, 1.0, Tolerance(1e-12, 0.0))
        assert info.value.err_est > 0

    def test_non_finite_integrand(self):
        with pytest.raises(InvalidInputError):
            integrate_adaptive(lambda x: math.nan, 0.0, 1.0)

    def test_bad_arcsin_arguments(self):
        with pytest.raises(InvalidInputError):
            sqrt_arcsin_integral(1.0, 1.0)
        with pytest.raises(InvalidInputError):
            arcsin_over_sqrt_integral(-1.0, 0.5)

    def test_integrand_kinds_validated(self):
        with pytest.raises(InvalidInputError):
            Integrand(math.sin, singularity="pole")
        with pytest.raises(InvalidInputError):
            Integrand(math.sin, decay="power")


class TestLogEndpoint:
    def test_log(self):
        r = integrate_log_endpoint(math.log, 0.0, 1.0)
        assert abs(r.value + 1.0) <= 1e-10

    def test_inverse_sqrt(self):
        r = integrate_log_endpoint(lambda x: 1 / math.sqrt(x), 0.0, 1.0)
        assert abs(r.value - 2.0) <= 1e-10

    def test_log_tanh_head(self):
        assert abs(log_tanh_integral(0.0, L / 2).value - LOG_TANH_0_HALF_L) <= 1e-12

    def test_log_tanh_unit_interval(self):
        loose = log_tanh_integral(0.0, 1.0, 1e-9).value
        tight = log_tanh_integral(0.0, 1.0, 1e-13).value
        assert abs(loose - tight) <= 1e-9
        assert abs(tight - LOG_TANH_0_1) <= 1e-12

    def test_inverse_sqrt_endpoint_matches_substitution(self):
        # s = 1 - x puts the 1/sqrt(1 - x^2) endpoint at s = 0
        reflected = integrate_log_endpoint(
            Integrand(lambda s: math.asin(R * (1 - s)) / math.sqrt(s * (2 - s)), 0.0, 1.0,
                      singularity="algebraic_at_lo"),
            0.0, 1.0, Tolerance(1e-12, 1e-12),
        )
        substituted = arcsin_over_sqrt_integral(1.0, R)
        assert abs(reflected.value - substituted.value) <= 1e-9

    def test_never_evaluates_endpoint(self):
        seen = []

        def f(x):
            seen.append(x)
            return math.log(x)

        integrate_log_endpoint(f, 0.0, 1.0)
        assert min(seen) > 0.0


class TestDecayingTail:
    def test_exponential(self):
        assert abs(integrate_decaying_tail(lambda x: math.exp(-x), 0.0).value - 1.0) <= 1e-12

    def test_shifted_rate(self):
        f = Integrand(lambda x: math.exp(-3 * x), 2.0, math.inf, decay="exponential_tail", decay_rate=3.0)
        r = integrate_decaying_tail(f, 2.0)
        miss = abs(r.value - math.exp(-6) / 3)
        assert miss <= r.err_est and miss <= 1e-12

    def test_log_tanh_tail(self):
        r = integrate_decaying_tail(LOG_TANH_TAIL, L / 2)
        assert abs(r.value - LOG_TANH_HALF_L_INF) <= 1e-12
        assert abs(r.value - LOG_TANH_HALF_L_INF) <= r.err_est

    def test_whole_half_line(self):
        assert abs(log_tanh_integral(0.0, math.inf).value + math.pi**2 / 8) <= 1e-12

    def test_log_tanh_is_stable(self):
        assert log_tanh(40.0) == pytest.approx(-2 * math.exp(-80), rel=1e-12)
        assert log_tanh(1e-8) == pytest.approx(math.log(1e-8), rel=1e-12)


@pytest.mark.parametrize("lo,hi", LOG_TANH_CORPUS)
def test_halving_tolerance_is_monotone(lo, hi):
    prev = None
    t = 1e-4
    while t > 1e-13:
        r = log_tanh_integral(lo, hi, Tolerance(t, t))
        if prev is not None:
            assert r.err_est <= prev.err_est
            assert abs(r.value - prev.value) <= prev.err_est
        prev = r
        t /= 2


@pytest.mark.parametrize("cut", [0.05, 0.3, 0.44, 1.5])
def test_log_tanh_split(cut):
    whole = log_tanh_integral(0.0, 2.0)
    left = log_tanh_integral(0.0, cut)
    right = log_tanh_integral(cut, 2.0)
    assert abs(left.value + right.value - whole.value) <= whole.err_est + left.err_est + right.err_est
