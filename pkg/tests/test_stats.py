"""Numerical kernel tests against independent oracles.

The normal CDF is checked against mpmath at 50 digits, the quantile against
plain bisection of the CDF, quadrature against scipy.integrate.quad, and
the bivariate upper tail against Owen's T-function identity plus a Monte
Carlo oracle.
"""

import math

import mpmath
import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import owens_t
from scipy.stats import truncnorm

from qdm.stats import (
    FLAT,
    EndpointModel,
    FlatPrior,
    NormalBelief,
    adaptive_simpson,
    bivariate_upper_tail,
    chunk_sizes,
    expect_over_belief,
    posterior,
    standard_error,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
    substreams,
)

mpmath.mp.dps = 50


def bisect_quantile(p, lo=-40.0, hi=40.0):
    """Independent quantile oracle: bisection on std_normal_cdf."""
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if std_normal_cdf(mid) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def owen_upper_tail(a, b, rho):
    """Independent bivariate oracle via Owen's T function (a, b nonzero)."""
    den = math.sqrt(1.0 - rho * rho)
    delta = 0.0 if a * b > 0 or (a * b == 0 and a + b >= 0) else 1.0
    phi2 = (0.5 * (std_normal_cdf(a) + std_normal_cdf(b) - delta)
            - owens_t(a, (b - rho * a) / (a * den))
            - owens_t(b, (a - rho * b) / (b * den)))
    return 1.0 - std_normal_cdf(a) - std_normal_cdf(b) + phi2


class TestStdNormalCdf:
    def test_symmetry_at_zero(self):
        assert std_normal_cdf(0.0) == 0.5

    def test_frozen_points(self):
        # High-precision oracle values: mpmath.ncdf(1.2816) = 0.90001155...,
        # mpmath.ncdf(-1.96) = 0.02499789...
        assert std_normal_cdf(1.2816) == pytest.approx(0.90, abs=1e-4)
        assert std_normal_cdf(-1.96) == pytest.approx(0.0250, abs=1e-4)

    def test_against_mpmath(self):
        for z in np.arange(-8.0, 8.01, 0.25):
            oracle = float(mpmath.ncdf(mpmath.mpf(float(z))))
            assert abs(std_normal_cdf(float(z)) - oracle) < 1e-12

    def test_monotone(self):
        grid = np.linspace(-10, 10, 401)
        values = [std_normal_cdf(float(z)) for z in grid]
        assert all(b >= a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("bad", [float("nan"), float("inf"), float("-inf")])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(ValueError):
            std_normal_cdf(bad)


class TestStdNormalQuantile:
    def test_median(self):
        assert std_normal_quantile(0.5) == 0.0

    def test_frozen_points_from_bisection_oracle(self):
        # bisect_quantile gives 1.959964 and 0.524401.
        assert std_normal_quantile(0.975) == pytest.approx(1.95996, abs=1e-4)
        assert std_normal_quantile(0.70) == pytest.approx(0.52440, abs=1e-4)

    def test_agrees_with_bisection(self):
        for p in (0.001, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999):
            assert std_normal_quantile(p) == pytest.approx(bisect_quantile(p), abs=1e-10)

    def test_round_trip(self):
        for p in np.arange(0.001, 0.9995, 0.001):
            assert abs(std_normal_cdf(std_normal_quantile(float(p))) - p) < 1e-10

    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.1, 1.5, float("nan")])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(ValueError):
            std_normal_quantile(bad)


class TestEndpointModel:
    def test_standard_error_values(self):
        # 6 * sqrt(2/80); this is the width that puts the example GO/STOP
        # boundaries at 2.50 and 1.78.
        assert standard_error(EndpointModel(6.0, 80, 80)) == pytest.approx(0.9486832981, abs=1e-9)
        assert standard_error(EndpointModel(6.0, 200, 200)) == pytest.approx(0.6, abs=1e-12)
        assert standard_error(EndpointModel(1.0, 2, 2)) == pytest.approx(1.0, abs=1e-12)

    def test_unequal_arms(self):
        assert standard_error(EndpointModel(2.0, 50, 100)) == pytest.approx(
            2.0 * math.sqrt(1 / 50 + 1 / 100), abs=1e-12)

    @pytest.mark.parametrize("sigma,nt,nc", [(0.0, 80, 80), (-1.0, 80, 80),
                                             (6.0, 1, 80), (6.0, 80, 0)])
    def test_invariants(self, sigma, nt, nc):
        with pytest.raises(ValueError):
            EndpointModel(sigma, nt, nc)


class TestPosterior:
    def test_flat_prior_identity(self):
        post = posterior(FLAT, 2.6, 0.9487)
        assert post == NormalBelief(2.6, 0.9487)

    def test_equal_precision_halves_the_estimate(self):
        for s, est in ((1.0, 3.0), (0.5, -2.0), (2.5, 10.0)):
            post = posterior(NormalBelief(0.0, s), est, s)
            assert post.mean == pytest.approx(est / 2, abs=1e-12)

    def test_conjugate_example_against_weighted_mc(self):
        # Oracle: draw from the prior, weight by the likelihood of the
        # observation, and summarise; the exact answer is N(2, 1/sqrt(2)).
        rng = np.random.default_rng(1234)
        draws = rng.normal(1.0, 1.0, size=400_000)
        weights = np.exp(-0.5 * (3.0 - draws) ** 2)
        w_mean = np.average(draws, weights=weights)
        w_sd = math.sqrt(np.average((draws - w_mean) ** 2, weights=weights))
        post = posterior(NormalBelief(1.0, 1.0), 3.0, 1.0)
        assert post.mean == pytest.approx(2.0, abs=1e-12)
        assert post.sd == pytest.approx(1 / math.sqrt(2), abs=1e-12)
        assert w_mean == pytest.approx(post.mean, abs=0.01)
        assert w_sd == pytest.approx(post.sd, abs=0.01)

    def test_precision_adds(self):
        for prior_sd, se in ((1.0, 1.0), (0.5, 2.0), (3.0, 0.25)):
            post = posterior(NormalBelief(0.7, prior_sd), 1.9, se)
            assert 1 / post.sd ** 2 == pytest.approx(1 / prior_sd ** 2 + 1 / se ** 2,
                                                     rel=1e-13)

    def test_rejects_bad_se(self):
        with pytest.raises(ValueError):
            posterior(FLAT, 1.0, 0.0)
        with pytest.raises(ValueError):
            posterior(NormalBelief(0, 1), 1.0, -2.0)


class TestBivariateUpperTail:
    def test_independence_reduces_to_product(self):
        for a in (-2.0, -0.5, 0.0, 1.0, 2.5):
            for b in (-2.0, -0.5, 0.0, 1.0, 2.5):
                expected = (1 - std_normal_cdf(a)) * (1 - std_normal_cdf(b))
                assert abs(bivariate_upper_tail(a, b, 0.0) - expected) < 1e-12

    def test_perfect_correlation(self):
        for a, b in ((-1.0, 0.5), (0.3, 0.3), (2.0, -3.0)):
            assert bivariate_upper_tail(a, b, 1.0) == pytest.approx(
                1 - std_normal_cdf(max(a, b)), abs=1e-14)
        assert bivariate_upper_tail(-1.0, -0.5, -1.0) == pytest.approx(
            std_normal_cdf(0.5) - std_normal_cdf(-1.0), abs=1e-14)
        assert bivariate_upper_tail(1.0, 0.5, -1.0) == 0.0

    def test_against_owen_oracle(self):
        for rho in (-0.95, -0.5, 0.3, 0.8653, 0.99):
            for a in (-2.0, -0.3, 0.7, 1.8):
                for b in (-1.5, -0.333, 0.4, 2.2):
                    assert bivariate_upper_tail(a, b, rho) == pytest.approx(
                        owen_upper_tail(a, b, rho), abs=1e-8)

    def test_program_metric_point(self):
        # Frozen from the Owen oracle (0.4812615588); feeds the conditional
        # assurance check. The Monte Carlo oracle at 1e7 draws agrees.
        value = bivariate_upper_tail(-0.048, -0.333, 0.8653)
        assert value == pytest.approx(0.481262, abs=2e-6)
        rng = np.random.default_rng(777)
        n = 10_000_000
        z1 = rng.standard_normal(n)
        z2 = 0.8653 * z1 + math.sqrt(1 - 0.8653 ** 2) * rng.standard_normal(n)
        mc = float(np.mean((z1 > -0.048) & (z2 > -0.333)))
        assert value == pytest.approx(mc, abs=4 * math.sqrt(mc * (1 - mc) / n))

    def test_rejects_bad_correlation(self):
        with pytest.raises(ValueError):
            bivariate_upper_tail(0.0, 0.0, 1.5)
        with pytest.raises(ValueError):
            bivariate_upper_tail(0.0, 0.0, -1.0001)


class TestAdaptiveSimpson:
    def test_against_scipy_quad(self):
        cases = [
            (lambda x: math.exp(-x * x) * math.cos(3 * x), -2.0, 5.0),
            (lambda x: 1.0 / (1.0 + x * x), 0.0, 10.0),
            (std_normal_pdf, -8.0, 8.0),
        ]
        for f, a, b in cases:
            oracle, _ = quad(f, a, b, epsabs=1e-12)
            assert adaptive_simpson(f, a, b, tol=1e-10) == pytest.approx(oracle, abs=1e-8)

    def test_empty_interval(self):
        assert adaptive_simpson(math.sin, 1.0, 1.0) == 0.0


class TestExpectOverBelief:
    def test_normalisation(self):
        for belief in (NormalBelief(0, 1), NormalBelief(3.2, 2.0), NormalBelief(-5, 0.1)):
            assert expect_over_belief(lambda x: 1.0, belief) == pytest.approx(1.0, abs=1e-9)
        assert expect_over_belief(lambda x: 1.0, NormalBelief(3.2, 2.0),
                                  truncation=(0.0, 4.0)) == pytest.approx(1.0, abs=1e-9)

    def test_identity_gives_mean(self):
        assert expect_over_belief(lambda x: x, NormalBelief(3.2, 2.0)) == pytest.approx(
            3.2, abs=1e-6)

    def test_step_at_mean(self):
        f = lambda x: 1.0 if x > 1.7 else 0.0
        assert expect_over_belief(f, NormalBelief(1.7, 0.8)) == pytest.approx(0.5, abs=1e-6)

    def test_truncated_mean_matches_truncnorm(self):
        belief = NormalBelief(3.2, 2.0)
        lo, hi = 0.0, 4.0
        oracle = truncnorm.mean((lo - 3.2) / 2.0, (hi - 3.2) / 2.0, loc=3.2, scale=2.0)
        value = expect_over_belief(lambda x: x, belief, truncation=(lo, hi))
        assert value == pytest.approx(float(oracle), abs=1e-6)

    def test_cdf_shaped_f_vs_quad(self):
        f = lambda x: std_normal_cdf((x - 1.0) / 0.7)
        belief = NormalBelief(0.5, 1.3)
        oracle, _ = quad(lambda x: f(x) * std_normal_pdf((x - 0.5) / 1.3) / 1.3,
                         0.5 - 12 * 1.3, 0.5 + 12 * 1.3, epsabs=1e-12)
        assert expect_over_belief(f, belief) == pytest.approx(oracle, abs=1e-6)

    def test_monotone_in_belief_mean(self):
        f = lambda x: std_normal_cdf((x - 2.0) / 0.5)
        values = [expect_over_belief(f, NormalBelief(m, 1.0)) for m in np.arange(0, 4.1, 0.25)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_rejects_flat(self):
        with pytest.raises(ValueError):
            expect_over_belief(lambda x: 1.0, FLAT)

    def test_rejects_empty_truncation(self):
        with pytest.raises(ValueError):
            expect_over_belief(lambda x: 1.0, NormalBelief(0, 1), truncation=(2.0, 2.0))


class TestSeededSubstreams:
    def test_bit_reproducible(self):
        a = [rng.standard_normal(5) for rng in substreams(99, 3)]
        b = [rng.standard_normal(5) for rng in substreams(99, 3)]
        for x, y in zip(a, b):
            assert np.array_equal(x, y)

    def test_streams_differ(self):
        one, two = substreams(99, 2)
        assert not np.array_equal(one.standard_normal(8), two.standard_normal(8))

    def test_chunk_sizes(self):
        assert chunk_sizes(10, 3) == [4, 3, 3]
        assert chunk_sizes(6, 6) == [1] * 6
        assert sum(chunk_sizes(1_000_001, 7)) == 1_000_001
        with pytest.raises(ValueError):
            chunk_sizes(5, 0)

    def test_belief_singleton(self):
        assert FlatPrior() is FLAT
