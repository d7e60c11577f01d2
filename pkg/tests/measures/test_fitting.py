"""Tests for power-law and log-normal fitting."""
import numpy as np
import pytest

from src.measures import (
    MeasureError,
    compare_fits,
    fit_log_normal,
    fit_power_law,
    gaussian_shape,
    sample_discrete_power_law,
)


class TestSampler:
    """Tests for the discrete power-law sampler."""

    def test_support_starts_at_xmin(self):
        x = sample_discrete_power_law(2.5, 5000, xmin=3, rng=np.random.default_rng(0))
        assert x.dtype == np.int64
        assert x.min() >= 3

    def test_point_mass_at_xmin(self):
        from scipy import special

        x = sample_discrete_power_law(2.5, 20000, rng=np.random.default_rng(1))
        expected = 1.0 / special.zeta(2.5, 1.0)
        assert np.mean(x == 1) == pytest.approx(expected, abs=0.02)

    def test_rejects_shallow_exponent(self):
        with pytest.raises(MeasureError):
            sample_discrete_power_law(1.0, 10)


class TestFitPowerLaw:
    """Tests for fit_power_law."""

    def test_recovers_exponent(self):
        x = sample_discrete_power_law(2.5, 10_000, rng=np.random.default_rng(42))
        fit = fit_power_law(x, xmin=1)
        assert fit.family == "power-law"
        assert fit.discrete is True
        assert 2.4 <= fit.gamma <= 2.6
        assert fit.reliable is True

    @pytest.mark.parametrize("gamma", [2.0, 2.5, 3.5])
    def test_within_three_standard_errors(self, gamma):
        x = sample_discrete_power_law(gamma, 10_000, rng=np.random.default_rng(int(gamma * 10)))
        fit = fit_power_law(x, xmin=1)
        assert abs(fit.gamma - gamma) <= 3 * fit.gamma_stderr

    def test_continuous_samples(self):
        u = np.random.default_rng(3).random(10_000)
        x = (1.0 - u) ** (-1.0 / 1.5)
        fit = fit_power_law(x, xmin=1.0)
        assert fit.discrete is False
        assert fit.gamma == pytest.approx(2.5, abs=0.1)

    def test_scanned_xmin_is_observed_value(self):
        x = sample_discrete_power_law(2.5, 3000, rng=np.random.default_rng(5))
        fit = fit_power_law(x)
        assert fit.xmin in set(x.tolist())
        assert fit.n_tail >= 10
        assert fit.gamma > 1

    def test_small_tail_is_flagged(self):
        fit = fit_power_law([1, 2, 2, 3, 4, 5, 8, 13, 21, 34])
        assert fit.reliable is False

    def test_constant_samples_raise(self):
        with pytest.raises(MeasureError):
            fit_power_law([4, 4, 4, 4])


class TestFitLogNormal:
    """Tests for fit_log_normal and compare_fits."""

    def test_recovers_parameters(self):
        x = np.random.default_rng(7).lognormal(7.21, 1.79, 10_000)
        fit = fit_log_normal(x)
        assert fit.mu == pytest.approx(7.21, abs=0.05)
        assert fit.sigma == pytest.approx(1.79, abs=0.05)

    def test_truncated_fit_recovers_parameters(self):
        x = np.random.default_rng(8).lognormal(1.0, 0.8, 50_000)
        fit = fit_log_normal(x, xmin=float(np.exp(1.0)))
        assert fit.xmin == pytest.approx(np.exp(1.0))
        assert fit.mu == pytest.approx(1.0, abs=0.1)
        assert fit.sigma == pytest.approx(0.8, abs=0.1)

    def test_constant_samples_raise(self):
        with pytest.raises(MeasureError):
            fit_log_normal([2.0, 2.0, 2.0])

    def test_compare_uses_shared_tail(self):
        x = sample_discrete_power_law(2.2, 5000, rng=np.random.default_rng(9))
        comparison = compare_fits(x)
        assert comparison.log_normal.xmin == comparison.power_law.xmin
        assert comparison.preferred in {"power-law", "log-normal"}


class TestGaussianShape:
    """Tests for the skewness/kurtosis shape check."""

    def test_normal_samples(self):
        shape = gaussian_shape(np.random.default_rng(0).normal(100, 10, 20_000))
        assert shape.gaussian is True

    def test_heavy_tail(self):
        shape = gaussian_shape(sample_discrete_power_law(2.5, 5000, rng=np.random.default_rng(0)))
        assert shape.gaussian is False
        assert shape.skewness > 1

    def test_needs_three_samples(self):
        with pytest.raises(MeasureError):
            gaussian_shape([1.0, 2.0])
