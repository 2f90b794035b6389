"""Parametric models of a future experiment.

A model supplies what the pragmatic-hypothesis search needs: the
log-density of a future sample at a parameter value, a sampler for that
sample, and point estimates of all parameter coordinates from observed
data.  Samples are float arrays whose last axis is the future-sample layout
documented on each model; a leading batch axis is allowed everywhere.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .core import UsageError
from .data import DataError, GravityData, TwoSampleData
from .estimators import EstimationError, gravity_design, ols, pooled_sd

_LOG_2PI = math.log(2.0 * math.pi)


def _normal_logpdf_sum(z: np.ndarray, mean, sd: float) -> np.ndarray:
    r = (z - mean) / sd
    return -0.5 * np.sum(r * r, axis=-1) - z.shape[-1] * (math.log(sd) + 0.5 * _LOG_2PI)


class Model(ABC):
    name: str = "model"
    param_names: tuple[str, ...] = ()

    @property
    def param_dim(self) -> int:
        return len(self.param_names)

    @property
    @abstractmethod
    def future_size(self) -> int:
        """Length of one future sample."""

    @abstractmethod
    def log_density(self, z: np.ndarray, theta) -> np.ndarray:
        """``log f(z | theta)`` for each sample along the leading axes of ``z``."""

    @abstractmethod
    def sample(self, theta, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
        """Draw future samples.  ``theta`` may be ``(d,)`` or ``(size, d)``."""

    @abstractmethod
    def estimate(self, data: Any) -> np.ndarray:
        """Point estimates of all ``param_dim`` coordinates."""

    @abstractmethod
    def expected_log_density(self, theta) -> float:
        """``E_theta[log f(Z | theta)]`` (minus the entropy of Z)."""

    def future_design(self) -> dict:
        return {"future_size": self.future_size}

    def describe(self) -> dict:
        return {"model": self.name, "param_names": list(self.param_names), **self.future_design()}

    def theta(self, theta) -> np.ndarray:
        arr = np.asarray(theta, dtype=float)
        if arr.shape[-1:] != (self.param_dim,):
            raise UsageError(f"{self.name}: expected {self.param_dim} parameter(s) "
                             f"{list(self.param_names)}, got shape {arr.shape}")
        return arr

    def _batch(self, theta, size):
        th = self.theta(theta)
        if th.ndim == 2:
            if size is not None and size != th.shape[0]:
                raise UsageError(f"theta batch of {th.shape[0]} but size={size}")
            return th, th.shape[0]
        return th, size


@dataclass(frozen=True)
class NormalMeanModel(Model):
    """``Z`` = ``n_future`` i.i.d. N(theta, sigma^2) draws; sigma known."""

    sigma: float = 1.0
    n_future: int = 1
    name = "normal"
    param_names = ("theta",)

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise UsageError(f"sigma must be positive, got {self.sigma!r}")
        if not (int(self.n_future) == self.n_future and self.n_future >= 1):
            raise UsageError(f"n_future must be a positive integer, got {self.n_future!r}")

    @property
    def future_size(self) -> int:
        return int(self.n_future)

    def log_density(self, z, theta):
        th = self.theta(theta)
        return _normal_logpdf_sum(np.asarray(z, dtype=float), th[..., 0:1], self.sigma)

    def sample(self, theta, rng, size=None):
        th, size = self._batch(theta, size)
        shape = (self.future_size,) if size is None else (size, self.future_size)
        loc = th[..., 0:1]
        return loc + self.sigma * rng.standard_normal(shape)

    def estimate(self, data):
        x = np.asarray(data, dtype=float).reshape(-1)
        if x.size == 0:
            raise DataError("no observations")
        return np.array([x.mean()])

    def expected_log_density(self, theta):
        return -self.future_size * (math.log(self.sigma) + 0.5 * _LOG_2PI + 0.5)

    def future_design(self):
        return {"future_size": self.future_size, "sigma": self.sigma}


def normal_mean_model(sigma: float = 1.0, n_future: int = 1) -> NormalMeanModel:
    return NormalMeanModel(sigma, n_future)


@dataclass(frozen=True)
class TwoSampleNormalModel(Model):
    """Two independent groups, common known sigma.

    Parameters ``(mu_a, mu_b)``; a future sample is
    ``[a_1..a_m, b_1..b_m]`` with ``m = n_future_per_group``.
    """

    sigma: float = 1.0
    n_future_per_group: int = 1
    name = "two-sample"
    param_names = ("mu_a", "mu_b")
    factorized = True

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise UsageError(f"sigma must be positive, got {self.sigma!r}")
        if not (int(self.n_future_per_group) == self.n_future_per_group and self.n_future_per_group >= 1):
            raise UsageError("n_future_per_group must be a positive integer")

    @property
    def future_size(self) -> int:
        return 2 * int(self.n_future_per_group)

    def split(self, z):
        m = int(self.n_future_per_group)
        z = np.asarray(z, dtype=float)
        return z[..., :m], z[..., m:]

    def group_log_density(self, z_group, mu: float) -> np.ndarray:
        """Log-density of one group's block of a future sample."""
        return _normal_logpdf_sum(np.asarray(z_group, dtype=float), mu, self.sigma)

    def sample_group(self, mu, rng, size=None) -> np.ndarray:
        m = int(self.n_future_per_group)
        mu = np.asarray(mu, dtype=float)
        shape = (m,) if size is None else (size, m)
        loc = mu[..., None] if mu.ndim else mu
        return loc + self.sigma * rng.standard_normal(shape)

    def log_density(self, z, theta):
        th = self.theta(theta)
        za, zb = self.split(z)
        return self.group_log_density(za, th[..., 0:1]) + self.group_log_density(zb, th[..., 1:2])

    def sample(self, theta, rng, size=None):
        th, size = self._batch(theta, size)
        shape = (self.future_size,) if size is None else (size, self.future_size)
        m = int(self.n_future_per_group)
        loc = np.concatenate([np.repeat(th[..., 0:1], m, axis=-1), np.repeat(th[..., 1:2], m, axis=-1)], axis=-1)
        return loc + self.sigma * rng.standard_normal(shape)

    def estimate(self, data):
        a, b = _groups(data)
        return np.array([a.mean(), b.mean()])

    def expected_log_density(self, theta):
        return -self.future_size * (math.log(self.sigma) + 0.5 * _LOG_2PI + 0.5)

    def future_design(self):
        return {"future_size": self.future_size, "n_future_per_group": int(self.n_future_per_group),
                "sigma": self.sigma}


def two_sample_normal_model(sigma: float = 1.0, n_future_per_group: int = 1) -> TwoSampleNormalModel:
    return TwoSampleNormalModel(sigma, n_future_per_group)


def _groups(data):
    if isinstance(data, TwoSampleData):
        a, b = data.a, data.b
    else:
        a, b = (np.asarray(g, dtype=float).reshape(-1) for g in data)
    if a.size == 0 or b.size == 0:
        raise DataError("both groups need at least one observation")
    return a, b


@dataclass(frozen=True)
class TwoSampleDifferenceModel(Model):
    """Two-group model parameterized by the mean difference.

    Parameters ``(delta, mu_b)`` with ``mu_a = mu_b + delta``; when
    ``sigma`` is None the common sd is a third coordinate estimated by the
    pooled sd.  Same future-sample layout as :class:`TwoSampleNormalModel`.
    """

    sigma: Optional[float] = None
    n_future_per_group: int = 1
    name = "two-sample-difference"

    def __post_init__(self) -> None:
        if self.sigma is not None and not self.sigma > 0:
            raise UsageError(f"sigma must be positive, got {self.sigma!r}")
        if not (int(self.n_future_per_group) == self.n_future_per_group and self.n_future_per_group >= 1):
            raise UsageError("n_future_per_group must be a positive integer")

    @property
    def param_names(self) -> tuple[str, ...]:  # type: ignore[override]
        base = ("delta", "mu_b")
        return base if self.sigma is not None else base + ("sigma",)

    @property
    def future_size(self) -> int:
        return 2 * int(self.n_future_per_group)

    def _parts(self, theta):
        th = self.theta(theta)
        sd = th[..., 2:3] if self.sigma is None else self.sigma
        mu_b = th[..., 1:2]
        return mu_b + th[..., 0:1], mu_b, sd

    def log_density(self, z, theta):
        mu_a, mu_b, sd = self._parts(theta)
        if np.any(np.asarray(sd) <= 0):
            return np.full(np.shape(z)[:-1], -np.inf)
        m = int(self.n_future_per_group)
        z = np.asarray(z, dtype=float)
        sd = float(np.asarray(sd).reshape(-1)[0])
        return _normal_logpdf_sum(z[..., :m], mu_a, sd) + _normal_logpdf_sum(z[..., m:], mu_b, sd)

    def sample(self, theta, rng, size=None):
        th, size = self._batch(theta, size)
        mu_a, mu_b, sd = self._parts(th)
        m = int(self.n_future_per_group)
        shape = (self.future_size,) if size is None else (size, self.future_size)
        loc = np.concatenate([np.repeat(mu_a, m, axis=-1), np.repeat(mu_b, m, axis=-1)], axis=-1)
        return loc + sd * rng.standard_normal(shape)

    def estimate(self, data):
        a, b = _groups(data)
        est = [a.mean() - b.mean(), b.mean()]
        if self.sigma is None:
            if a.size + b.size < 3:
                raise EstimationError("need at least 3 observations to estimate sigma")
            est.append(pooled_sd(a, b))
        return np.array(est)

    def expected_log_density(self, theta):
        _, _, sd = self._parts(theta)
        sd = float(np.asarray(sd).reshape(-1)[0])
        return -self.future_size * (math.log(sd) + 0.5 * _LOG_2PI + 0.5)

    def future_design(self):
        return {"future_size": self.future_size, "n_future_per_group": int(self.n_future_per_group),
                "sigma": self.sigma}


def two_sample_difference_model(sigma: Optional[float] = None,
                                n_future_per_group: int = 1) -> TwoSampleDifferenceModel:
    return TwoSampleDifferenceModel(sigma, n_future_per_group)


@dataclass(frozen=True)
class GravityRegressionModel(Model):
    """Fall times ``T = beta0 + sqrt(2/g) * sqrt(height) + eps``, eps ~ N(0, sigma^2).

    Parameters ``(g, beta0, sigma)``.  A future sample is one time per
    element of ``heights`` repeated ``future_reps`` times.
    """

    heights: tuple[float, ...] = field(default=(1.0, 2.0))
    future_reps: int = 1
    name = "gravity"
    param_names = ("g", "beta0", "sigma")

    def __post_init__(self) -> None:
        h = tuple(float(x) for x in np.asarray(self.heights, dtype=float).reshape(-1))
        if any(not (x > 0 and math.isfinite(x)) for x in h):
            raise UsageError("heights must be positive and finite")
        if len(set(h)) < 2:
            raise UsageError("need at least 2 distinct heights")
        if not (int(self.future_reps) == self.future_reps and self.future_reps >= 1):
            raise UsageError("future_reps must be a positive integer")
        object.__setattr__(self, "heights", h)
        object.__setattr__(self, "_x", np.tile(np.sqrt(np.array(h)), int(self.future_reps)))

    @property
    def future_size(self) -> int:
        return len(self.heights) * int(self.future_reps)

    def mean_times(self, theta) -> np.ndarray:
        th = self.theta(theta)
        slope = np.sqrt(2.0 / th[..., 0:1])
        return th[..., 1:2] + slope * self._x

    def log_density(self, z, theta):
        th = self.theta(theta)
        if th.ndim > 1:
            raise UsageError("gravity log_density takes a single parameter vector")
        g, _, sd = th
        if not (g > 0 and sd > 0):
            return np.full(np.shape(z)[:-1], -np.inf)
        return _normal_logpdf_sum(np.asarray(z, dtype=float), self.mean_times(th), float(sd))

    def sample(self, theta, rng, size=None):
        th, size = self._batch(theta, size)
        if np.any(th[..., 0] <= 0) or np.any(th[..., 2] < 0):
            raise UsageError("gravity model needs g > 0 and sigma >= 0")
        shape = (self.future_size,) if size is None else (size, self.future_size)
        return self.mean_times(th) + th[..., 2:3] * rng.standard_normal(shape)

    def estimate(self, data: GravityData):
        if not isinstance(data, GravityData):
            raise DataError("gravity model needs GravityData")
        fit = ols(gravity_design(data.heights), data.times)
        beta0, slope = (float(c) for c in fit.coef)
        if not slope > 0:
            raise EstimationError(f"estimated slope {slope:.6g} is not positive; g = 2/slope^2 is undefined")
        return np.array([2.0 / slope**2, beta0, fit.resid_sd])

    def expected_log_density(self, theta):
        sd = float(self.theta(theta)[2])
        return -self.future_size * (math.log(sd) + 0.5 * _LOG_2PI + 0.5)

    def future_design(self):
        return {"future_size": self.future_size, "heights": list(self.heights),
                "future_reps": int(self.future_reps)}


def gravity_regression_model(heights, future_reps: int = 1) -> GravityRegressionModel:
    return GravityRegressionModel(tuple(heights), future_reps)


# -- synthetic observed data -------------------------------------------------


def simulate_gravity_data(n: int, g: float, beta0: float, sigma: float, heights,
                          rng: np.random.Generator) -> GravityData:
    """``n`` drops cycling through ``heights``."""
    h = np.resize(np.asarray(heights, dtype=float), n)
    t = beta0 + np.sqrt(2.0 * h / g) + sigma * rng.standard_normal(n)
    return GravityData(h, t)


def simulate_two_sample_data(n: int, mu_a: float, mu_b: float, sigma: float,
                             rng: np.random.Generator) -> TwoSampleData:
    """``n`` observations per group."""
    return TwoSampleData(mu_a + sigma * rng.standard_normal(n), mu_b + sigma * rng.standard_normal(n))


def simulate_normal_data(n: int, theta: float, sigma: float, rng: np.random.Generator) -> np.ndarray:
    return theta + sigma * rng.standard_normal(n)


MODELS = {
    "normal": NormalMeanModel,
    "two-sample": TwoSampleNormalModel,
    "two-sample-difference": TwoSampleDifferenceModel,
    "gravity": GravityRegressionModel,
}
