"""Confidence and credible intervals used as region estimators.

Each ``*Interval`` / ``NormalPosterior*`` class is a region estimator: a
frozen, callable object mapping a dataset to a closed :class:`Interval` at a
stated ``level`` (confidence 1 - alpha or credibility 1 - gamma).  The
module-level functions compute the intervals from summary inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .core import UsageError
from .data import DataError, GravityData, TwoSampleData
from .quantiles import check_level, two_sided_t, two_sided_z
from .regions import Interval


class EstimationError(ArithmeticError):
    """The data do not support the requested interval (e.g. zero variance)."""


def _level(level: float) -> float:
    try:
        check_level(level)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return float(level)


def z_interval(x_bar: float, n: int, sigma: float, level: float = 0.95) -> Interval:
    """Known-variance interval ``x_bar -/+ z * sigma / sqrt(n)``."""
    _level(level)
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise UsageError(f"n must be a positive integer, got {n!r}")
    if not sigma > 0:
        raise UsageError(f"sigma must be positive, got {sigma!r}")
    half = two_sided_z(level) * sigma / math.sqrt(n)
    return Interval(x_bar - half, x_bar + half)


def normal_posterior(x_bar: float, n: int, prior_mean: float, prior_sd: float,
                     obs_sd: float) -> tuple[float, float]:
    """Mean and sd of the conjugate posterior for a normal mean with known ``obs_sd``."""
    if not prior_sd > 0 or not obs_sd > 0:
        raise UsageError("prior_sd and obs_sd must be positive")
    if math.isinf(prior_sd):
        return float(x_bar), obs_sd / math.sqrt(n)
    precision = 1.0 / prior_sd**2 + n / obs_sd**2
    mean = (prior_mean / prior_sd**2 + n * x_bar / obs_sd**2) / precision
    return mean, 1.0 / math.sqrt(precision)


def normal_posterior_credible(x: float, prior_mean: float = 0.0, prior_sd: float = 1.0,
                              obs_sd: float = 1.0, level: float = 0.95, n: int = 1) -> Interval:
    """Central credible interval for a normal mean under a normal prior.

    ``x`` is the observation (or the sample mean of ``n`` observations).  For
    prior N(0, 1) and a single N(theta, 1) observation the posterior is
    N(x/2, 1/2).
    """
    _level(level)
    mean, sd = normal_posterior(x, n, prior_mean, prior_sd, obs_sd)
    half = two_sided_z(level) * sd
    return Interval(mean - half, mean + half)


def normal_posterior_hpd(x: float, prior_mean: float = 0.0, prior_sd: float = 1.0,
                         obs_sd: float = 1.0, level: float = 0.95, n: int = 1) -> Interval:
    # the posterior is symmetric and unimodal, so the HPD set is the central interval
    return normal_posterior_credible(x, prior_mean, prior_sd, obs_sd, level, n)


def t_interval(data, level: float = 0.95) -> Interval:
    """One-sample Student-t interval for the mean."""
    _level(level)
    x = np.asarray(data, dtype=float).reshape(-1)
    if x.size < 2:
        raise UsageError(f"a t-interval needs at least 2 observations, got {x.size}")
    s = float(np.std(x, ddof=1))
    if not s > 0:
        raise EstimationError("sample variance is zero; the t-interval is undefined")
    half = two_sided_t(level, x.size - 1) * s / math.sqrt(x.size)
    m = float(np.mean(x))
    return Interval(m - half, m + half)


def pooled_sd(a: np.ndarray, b: np.ndarray) -> float:
    ss = float(np.sum((a - a.mean()) ** 2) + np.sum((b - b.mean()) ** 2))
    return math.sqrt(ss / (a.size + b.size - 2))


def two_sample_diff_interval(a, b, level: float = 0.95) -> Interval:
    """Pooled-variance t-interval for ``mean(a) - mean(b)``."""
    _level(level)
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    if a.size < 2 or b.size < 2:
        raise UsageError(f"each group needs at least 2 observations, got {a.size} and {b.size}")
    sp = pooled_sd(a, b)
    if not sp > 0:
        raise EstimationError("pooled variance is zero; the interval is undefined")
    half = two_sided_t(level, a.size + b.size - 2) * sp * math.sqrt(1.0 / a.size + 1.0 / b.size)
    d = float(a.mean() - b.mean())
    return Interval(d - half, d + half)


@dataclass(frozen=True)
class OLSFit:
    coef: np.ndarray
    std_err: np.ndarray
    resid_sd: float
    df: int


def ols(X, y) -> OLSFit:
    """Ordinary least squares with classical standard errors."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float).reshape(-1)
    if X.ndim != 2 or X.shape[0] != y.size:
        raise UsageError(f"design matrix shape {X.shape} does not match {y.size} responses")
    n, p = X.shape
    if n <= p:
        raise UsageError(f"need more observations ({n}) than coefficients ({p})")
    if np.linalg.matrix_rank(X) < p:
        raise EstimationError("design matrix is rank deficient")
    q, r = np.linalg.qr(X)
    coef = np.linalg.solve(r, q.T @ y)
    resid = y - X @ coef
    df = n - p
    resid_sd = math.sqrt(float(resid @ resid) / df)
    r_inv = np.linalg.inv(r)
    se = resid_sd * np.sqrt(np.sum(r_inv**2, axis=1))
    return OLSFit(coef, se, resid_sd, df)


def regression_coef_interval(X, y, coord: int, level: float = 0.95) -> Interval:
    """t-interval for one OLS coefficient.  Noiseless data give a point interval."""
    _level(level)
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or not 0 <= coord < X.shape[1]:
        raise UsageError(f"coefficient index {coord} out of range")
    fit = ols(X, y)
    half = two_sided_t(level, fit.df) * float(fit.std_err[coord])
    c = float(fit.coef[coord])
    return Interval(c - half, c + half)


def gravity_design(heights) -> np.ndarray:
    h = np.asarray(heights, dtype=float).reshape(-1)
    if np.any(h <= 0):
        raise UsageError("heights must be positive")
    return np.column_stack([np.ones_like(h), np.sqrt(h)])


def g_interval_from_slope(slope: Interval) -> Interval:
    """Map a slope interval to ``g = 2 / slope^2``, decreasing for slope > 0."""
    if not slope.lo > 0:
        raise EstimationError(f"slope interval {slope} does not exclude 0; g = 2/slope^2 is undefined")
    return slope.map_monotone(lambda b: 2.0 / b**2, decreasing=True)


# -- estimator objects ------------------------------------------------------


@dataclass(frozen=True)
class ZInterval:
    sigma: float = 1.0
    level: float = 0.95
    kind = "z"

    def __post_init__(self) -> None:
        _level(self.level)
        if not self.sigma > 0:
            raise UsageError("sigma must be positive")

    def __call__(self, data) -> Interval:
        x = np.asarray(data, dtype=float).reshape(-1)
        if x.size == 0:
            raise DataError("no observations")
        return z_interval(float(x.mean()), x.size, self.sigma, self.level)


@dataclass(frozen=True)
class TInterval:
    level: float = 0.95
    kind = "t"

    def __post_init__(self) -> None:
        _level(self.level)

    def __call__(self, data) -> Interval:
        return t_interval(data, self.level)


@dataclass(frozen=True)
class TwoSampleTInterval:
    level: float = 0.95
    kind = "two-sample-t"

    def __post_init__(self) -> None:
        _level(self.level)

    def __call__(self, data: TwoSampleData) -> Interval:
        if not isinstance(data, TwoSampleData):
            raise DataError("two-sample interval needs TwoSampleData")
        return two_sample_diff_interval(data.a, data.b, self.level)


@dataclass(frozen=True)
class NormalPosteriorCredible:
    prior_mean: float = 0.0
    prior_sd: float = 1.0
    obs_sd: float = 1.0
    level: float = 0.95
    kind = "credible"

    def __post_init__(self) -> None:
        _level(self.level)
        if not (self.prior_sd > 0 and self.obs_sd > 0):
            raise UsageError("prior_sd and obs_sd must be positive")

    def __call__(self, data) -> Interval:
        x = np.asarray(data, dtype=float).reshape(-1)
        if x.size == 0:
            raise DataError("no observations")
        return normal_posterior_credible(float(x.mean()), self.prior_mean, self.prior_sd,
                                         self.obs_sd, self.level, n=x.size)


@dataclass(frozen=True)
class NormalPosteriorHPD(NormalPosteriorCredible):
    kind = "hpd"

    def __call__(self, data) -> Interval:
        x = np.asarray(data, dtype=float).reshape(-1)
        if x.size == 0:
            raise DataError("no observations")
        return normal_posterior_hpd(float(x.mean()), self.prior_mean, self.prior_sd,
                                    self.obs_sd, self.level, n=x.size)


@dataclass(frozen=True)
class RegressionCoefficientInterval:
    """Interval for one OLS coefficient.

    Accepts ``(X, y)`` or :class:`GravityData` (design ``[1, sqrt(height)]``).
    With ``transform="g"`` the slope interval is mapped to the gravitational
    acceleration ``g = 2 / slope^2``.
    """

    coord: int = 1
    level: float = 0.95
    transform: Optional[str] = None
    kind = "regression"

    def __post_init__(self) -> None:
        _level(self.level)
        if self.transform not in (None, "g"):
            raise UsageError(f"unknown transform {self.transform!r}")

    def __call__(self, data: Union[GravityData, tuple]) -> Interval:
        if isinstance(data, GravityData):
            X, y = gravity_design(data.heights), data.times
        else:
            X, y = data
        iv = regression_coef_interval(X, y, self.coord, self.level)
        if self.transform == "g":
            return g_interval_from_slope(iv)
        return iv


def gravity_g_interval(level: float = 0.95) -> RegressionCoefficientInterval:
    return RegressionCoefficientInterval(coord=1, level=level, transform="g")
