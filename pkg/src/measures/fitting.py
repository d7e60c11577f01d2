"""Power-law and log-normal fitting.

Power law: x_min is scanned over the observed values and the one minimizing
the Kolmogorov-Smirnov distance between the tail and the fitted model wins.
Integer-valued samples use the discrete model p(x) = x^-gamma / zeta(gamma, x_min),
fitted by exact maximum likelihood (Hurwitz zeta) starting from the
approximation 1 + n / sum(ln(x / (x_min - 0.5))). Real-valued samples use
the continuous closed form 1 + n / sum(ln(x / x_min)).
"""
import logging
import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import optimize, special, stats

from src.measures.degree import MeasureError

logger = logging.getLogger(__name__)

MIN_TAIL = 10
RELIABLE_TAIL = 50
_GAMMA_BOUNDS = (1.0 + 1e-6, 50.0)


class FitResult(BaseModel):
    """Outcome of a distribution fit.

    Power law fills gamma, xmin and gamma_stderr; log-normal fills mu and
    sigma (xmin is set when the fit was restricted to a tail).
    """
    model_config = ConfigDict(frozen=True)

    family: Literal["power-law", "log-normal"]
    gamma: Optional[float] = None
    gamma_stderr: Optional[float] = None
    xmin: Optional[float] = None
    mu: Optional[float] = None
    sigma: Optional[float] = None
    ks_statistic: float
    n_tail: int
    n: int
    discrete: bool = False

    @property
    def reliable(self) -> bool:
        return self.n_tail >= RELIABLE_TAIL


def _clean(samples, positive: bool) -> np.ndarray:
    x = np.asarray(list(samples) if not isinstance(samples, np.ndarray) else samples, dtype=np.float64)
    x = x[np.isfinite(x)]
    if positive:
        dropped = int((x <= 0).sum())
        if dropped:
            logger.debug("Ignoring %d non-positive samples", dropped)
        x = x[x > 0]
    if np.unique(x).size < 2:
        raise MeasureError("Fitting needs at least 2 distinct values")
    return np.sort(x)


def _is_discrete(x: np.ndarray) -> bool:
    return bool(np.all(x == np.round(x)))


def _discrete_gamma(tail: np.ndarray, xmin: float) -> float:
    n = tail.size
    log_sum = float(np.log(tail).sum())

    def nll(g: float) -> float:
        return n * math.log(special.zeta(g, xmin)) + g * log_sum

    approx = 1.0 + n / float(np.log(tail / (xmin - 0.5)).sum())
    lo, hi = _GAMMA_BOUNDS
    approx = min(max(approx, lo + 1e-3), hi - 1e-3)
    result = optimize.minimize_scalar(
        nll, bounds=(max(lo, approx - 2.0), min(hi, approx + 2.0)), method="bounded",
        options={"xatol": 1e-8},
    )
    return float(result.x)


def _discrete_stderr(gamma: float, xmin: float, n: int) -> float:
    h = 1e-5
    z = special.zeta(gamma, xmin)
    d1 = (special.zeta(gamma + h, xmin) - special.zeta(gamma - h, xmin)) / (2 * h)
    d2 = (special.zeta(gamma + h, xmin) - 2 * z + special.zeta(gamma - h, xmin)) / h ** 2
    info = d2 / z - (d1 / z) ** 2
    return float(1.0 / math.sqrt(n * info)) if info > 0 else float("nan")


def _discrete_ks(tail: np.ndarray, xmin: float, gamma: float) -> float:
    values, counts = np.unique(tail, return_counts=True)
    empirical = np.cumsum(counts) / tail.size
    model = 1.0 - special.zeta(gamma, values + 1.0) / special.zeta(gamma, xmin)
    return float(np.max(np.abs(empirical - model)))


def _continuous_ks(tail: np.ndarray, xmin: float, gamma: float) -> float:
    n = tail.size
    model = 1.0 - (tail / xmin) ** (1.0 - gamma)
    upper = np.arange(1, n + 1) / n
    lower = np.arange(0, n) / n
    return float(max(np.max(np.abs(upper - model)), np.max(np.abs(model - lower))))


def _fit_tail(x: np.ndarray, xmin: float, discrete: bool) -> Optional[tuple]:
    tail = x[x >= xmin]
    if tail.size < 2 or np.unique(tail).size < 2:
        return None
    if discrete:
        gamma = _discrete_gamma(tail, xmin)
        ks = _discrete_ks(tail, xmin, gamma)
        stderr = _discrete_stderr(gamma, xmin, tail.size)
    else:
        gamma = 1.0 + tail.size / float(np.log(tail / xmin).sum())
        ks = _continuous_ks(tail, xmin, gamma)
        stderr = (gamma - 1.0) / math.sqrt(tail.size)
    return gamma, ks, stderr, tail.size


def fit_power_law(samples, discrete: Optional[bool] = None, xmin: Optional[float] = None) -> FitResult:
    """Fit P(x) ~ x^-gamma above a KS-selected (or given) x_min.

    Non-positive samples are ignored. Candidate x_min values keep at least
    MIN_TAIL samples with two distinct values in the tail.

    Raises:
        MeasureError: Fewer than 2 distinct positive values.
    """
    x = _clean(samples, positive=True)
    discrete = _is_discrete(x) if discrete is None else discrete

    if xmin is not None:
        candidates = [float(xmin)]
    else:
        uniq = np.unique(x)
        tail_sizes = x.size - np.searchsorted(x, uniq, side="left")
        candidates = [float(v) for v, size in zip(uniq, tail_sizes) if size >= MIN_TAIL]
        candidates = [v for v in candidates if np.unique(x[x >= v]).size >= 2] or [float(uniq[0])]

    best = None
    for candidate in candidates:
        fitted = _fit_tail(x, candidate, discrete)
        if fitted is None:
            continue
        if best is None or fitted[1] < best[1][1]:
            best = (candidate, fitted)
    if best is None:
        raise MeasureError(f"No usable tail above x_min={xmin}")

    chosen, (gamma, ks, stderr, n_tail) = best
    result = FitResult(
        family="power-law", gamma=gamma, gamma_stderr=stderr, xmin=chosen,
        ks_statistic=ks, n_tail=n_tail, n=int(x.size), discrete=discrete,
    )
    if not result.reliable:
        logger.warning("Power-law fit uses only %d tail samples (gamma=%.3f)", n_tail, gamma)
    logger.info("Power-law fit: gamma=%.3f xmin=%g KS=%.4f n_tail=%d", gamma, chosen, ks, n_tail)
    return result


def _lognormal_ks(tail: np.ndarray, mu: float, sigma: float, xmin: Optional[float]) -> float:
    cdf = stats.norm.cdf((np.log(tail) - mu) / sigma)
    if xmin is not None:
        below = stats.norm.cdf((math.log(xmin) - mu) / sigma)
        cdf = (cdf - below) / max(1.0 - below, 1e-300)
    n = tail.size
    upper = np.arange(1, n + 1) / n
    lower = np.arange(0, n) / n
    return float(max(np.max(np.abs(upper - cdf)), np.max(np.abs(cdf - lower))))


def fit_log_normal(samples, xmin: Optional[float] = None) -> FitResult:
    """Log-normal fit.

    Without xmin this is the plain MLE on ln x (mean and population standard
    deviation). With xmin the fit is restricted to x >= xmin using the
    truncated likelihood, so its KS distance is comparable to a power-law
    tail fit.
    """
    x = _clean(samples, positive=True)
    if xmin is not None:
        x = x[x >= xmin]
        if np.unique(x).size < 2:
            raise MeasureError(f"Fewer than 2 distinct values above xmin={xmin}")
    logs = np.log(x)
    mu, sigma = float(logs.mean()), float(logs.std())

    if xmin is not None:
        log_xmin = math.log(xmin)

        def nll(params):
            m, log_s = params
            s = math.exp(log_s)
            z = (logs - m) / s
            # Truncated density f(x) / P(X >= xmin), constants dropped.
            return float(
                np.sum(0.5 * z * z + log_s + logs) + logs.size * stats.norm.logsf((log_xmin - m) / s)
            )

        result = optimize.minimize(nll, x0=[mu, math.log(sigma)], method="Nelder-Mead",
                                   options={"xatol": 1e-8, "fatol": 1e-10, "maxiter": 4000})
        if result.success and np.all(np.isfinite(result.x)):
            mu, sigma = float(result.x[0]), float(math.exp(result.x[1]))

    ks = _lognormal_ks(x, mu, sigma, xmin)
    logger.info("Log-normal fit: mu=%.3f sigma=%.3f KS=%.4f n=%d", mu, sigma, ks, x.size)
    return FitResult(
        family="log-normal", mu=mu, sigma=sigma, xmin=xmin, ks_statistic=ks,
        n_tail=int(x.size), n=int(x.size), discrete=False,
    )


@dataclass(frozen=True)
class FitComparison:
    power_law: FitResult
    log_normal: FitResult

    @property
    def preferred(self) -> str:
        """Family with the smaller KS distance on the shared tail."""
        if self.power_law.ks_statistic <= self.log_normal.ks_statistic:
            return "power-law"
        return "log-normal"


def compare_fits(samples, discrete: Optional[bool] = None) -> FitComparison:
    """Fit both families on the power-law tail (x >= x_min) and report both."""
    pl = fit_power_law(samples, discrete=discrete)
    ln = fit_log_normal(samples, xmin=pl.xmin)
    return FitComparison(power_law=pl, log_normal=ln)


@dataclass(frozen=True)
class ShapeStats:
    skewness: float
    excess_kurtosis: float

    @property
    def gaussian(self) -> bool:
        return abs(self.skewness) < 0.2 and abs(self.excess_kurtosis) < 0.5


def gaussian_shape(samples) -> ShapeStats:
    """Sample skewness g1 and excess kurtosis g2."""
    x = np.asarray(list(samples), dtype=np.float64)
    if x.size < 3 or np.unique(x).size < 2:
        raise MeasureError("Shape statistics need at least 3 samples and 2 distinct values")
    return ShapeStats(skewness=float(stats.skew(x)), excess_kurtosis=float(stats.kurtosis(x)))


def sample_discrete_power_law(
    gamma: float,
    n: int,
    xmin: int = 1,
    rng: Optional[np.random.Generator] = None,
    table_limit: int = 1_000_000,
) -> np.ndarray:
    """Exact inverse-CDF sampler for the discrete power law.

    P(X >= x) = zeta(gamma, x) / zeta(gamma, xmin) is tabulated up to the
    value needed by the smallest uniform draw (capped at table_limit);
    draws beyond the table fall back to the rounded continuous approximation.
    """
    if gamma <= 1:
        raise MeasureError(f"gamma must exceed 1, got {gamma}")
    if xmin < 1 or int(xmin) != xmin:
        raise MeasureError(f"xmin must be a positive integer, got {xmin}")
    rng = rng or np.random.default_rng()
    u = 1.0 - rng.random(n)  # (0, 1]
    if n == 0:
        return np.array([], dtype=np.int64)

    needed = (xmin - 0.5) * float(u.min()) ** (-1.0 / (gamma - 1.0)) * 2.0 + 10
    size = int(min(max(needed - xmin + 1, 16), table_limit))
    support = np.arange(xmin, xmin + size, dtype=np.float64)
    survival = special.zeta(gamma, support) / special.zeta(gamma, xmin)

    count = np.searchsorted(-survival, -u, side="right")
    x = xmin + count - 1
    beyond = count >= size
    if beyond.any():
        approx = np.floor((xmin - 0.5) * u[beyond] ** (-1.0 / (gamma - 1.0)) + 0.5)
        x = x.astype(np.float64)
        x[beyond] = np.maximum(approx, xmin + size - 1)
    return np.asarray(x, dtype=np.int64)
