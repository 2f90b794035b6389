"""Classification dissimilarity between two parameter values.

``d(theta0, theta*) = 0.5 * [P_theta0(f(Z|theta0) > f(Z|theta*))
                           + P_theta*(f(Z|theta*) > f(Z|theta0))]``

is the accuracy of the equal-prior likelihood-ratio classifier that guesses
which of the two values generated ``Z``.  The inequality is strict, so ties
count as misclassified and ``d(theta, theta) = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from enum import Enum
from typing import Optional, Union

import numpy as np

from .core import UsageError
from .models import Model
from .quantiles import normal_cdf
from .rng import Key, as_seed, substream

CHUNK = 1 << 16


class Method(str, Enum):
    MONTE_CARLO = "monte_carlo"
    CLOSED_FORM = "closed_form"


class NonFiniteDensityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class DissimilarityEstimate:
    value: float
    std_error: float
    n_sims: int
    method: Method
    correct_null: Optional[float] = None
    correct_alt: Optional[float] = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"dissimilarity {self.value} outside [0, 1]")
        if self.method is Method.CLOSED_FORM and self.std_error != 0.0:
            raise ValueError("closed-form estimates carry no standard error")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["method"] = self.method.value
        return d


def _theta_key(theta: np.ndarray) -> tuple[Key, ...]:
    return tuple(float(v) for v in theta)


def draw_samples(model: Model, theta, seed: int, n: int, key: Optional[tuple] = None) -> np.ndarray:
    """``n`` future samples at ``theta``.

    The stream is keyed by the parameter value (or ``key``), so requesting
    the same value twice under one seed reproduces the same samples whatever
    order or thread the request comes from.
    """
    theta = model.theta(theta)
    key = _theta_key(theta) if key is None else key
    chunks = []
    for c, start in enumerate(range(0, n, CHUNK)):
        rng = substream(seed, "z", c, *key)
        chunks.append(model.sample(theta, rng, size=min(CHUNK, n - start)))
    return np.concatenate(chunks, axis=0) if chunks else np.empty((0, model.future_size))


def _finite(values: np.ndarray, theta: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise NonFiniteDensityError(f"non-finite log-density at theta={theta.tolist()}")
    return values


def _binomial_se(p0: float, p1: float, n: int) -> float:
    return 0.5 * math.sqrt(p0 * (1.0 - p0) / n + p1 * (1.0 - p1) / n)


def dissimilarity_from_samples(model: Model, theta0, theta_star, z0: np.ndarray, z_star: np.ndarray,
                               logf0_at_z0: Optional[np.ndarray] = None) -> DissimilarityEstimate:
    """Monte Carlo estimate from pre-drawn samples ``z0 ~ theta0`` and ``z_star ~ theta*``."""
    theta0 = model.theta(theta0)
    theta_star = model.theta(theta_star)
    n = z0.shape[0]
    if n < 1 or z_star.shape[0] != n:
        raise UsageError("need the same positive number of samples under both parameters")
    if logf0_at_z0 is None:
        logf0_at_z0 = _finite(model.log_density(z0, theta0), theta0)
    correct0 = float(np.mean(logf0_at_z0 > _finite(model.log_density(z0, theta_star), theta_star)))
    correct1 = float(np.mean(_finite(model.log_density(z_star, theta_star), theta_star)
                             > _finite(model.log_density(z_star, theta0), theta0)))
    return DissimilarityEstimate(0.5 * (correct0 + correct1), _binomial_se(correct0, correct1, n), n,
                                 Method.MONTE_CARLO, correct0, correct1)


def classification_dissimilarity_mc(model: Model, theta0, theta_star, n_sims: int,
                                    rng: Union[int, np.random.Generator, None] = 0) -> DissimilarityEstimate:
    if not (int(n_sims) == n_sims and n_sims >= 1):
        raise UsageError(f"n_sims must be a positive integer, got {n_sims!r}")
    seed = as_seed(rng)
    z0 = draw_samples(model, theta0, seed, int(n_sims))
    z_star = draw_samples(model, theta_star, seed, int(n_sims))
    return dissimilarity_from_samples(model, theta0, theta_star, z0, z_star)


def classification_dissimilarity_closed_form_normal(delta: float, sigma: float = 1.0,
                                                    n_future: int = 1) -> DissimilarityEstimate:
    """``Phi(sqrt(n) |delta| / (2 sigma))`` for N(theta, sigma^2) with ``n`` replicates; 0 at delta = 0."""
    if not sigma > 0:
        raise UsageError(f"sigma must be positive, got {sigma!r}")
    if not n_future >= 1:
        raise UsageError(f"n_future must be at least 1, got {n_future!r}")
    value = 0.0 if delta == 0 else normal_cdf(math.sqrt(n_future) * abs(delta) / (2.0 * sigma))
    return DissimilarityEstimate(value, 0.0, 0, Method.CLOSED_FORM)


def bayes_classifier_accuracy_two_pop(model: Model, theta_star, n_sims: int,
                                      rng: Union[int, np.random.Generator, None] = 0) -> DissimilarityEstimate:
    """Accuracy of the likelihood-ratio classifier for the group label.

    ``Y ~ Bernoulli(1/2)`` picks a group, ``Z* = Z_Y`` is that group's block
    of the future sample, and the classifier predicts the group whose
    marginal density at ``Z*`` is strictly larger.
    """
    if not getattr(model, "factorized", False):
        raise UsageError(f"{model.name} is not a factorized two-group model")
    if not (int(n_sims) == n_sims and n_sims >= 1):
        raise UsageError(f"n_sims must be a positive integer, got {n_sims!r}")
    theta_star = model.theta(theta_star)
    mu = theta_star[:2]
    seed = as_seed(rng)
    correct = 0
    for c, start in enumerate(range(0, int(n_sims), CHUNK)):
        size = min(CHUNK, int(n_sims) - start)
        gen = substream(seed, "label", c, *_theta_key(theta_star))
        y = gen.integers(0, 2, size=size)
        z = model.sample_group(mu[y], gen, size=size)
        ll = np.stack([model.group_log_density(z, mu[0]), model.group_log_density(z, mu[1])], axis=1)
        _finite(ll, theta_star)
        own = ll[np.arange(size), y]
        other = ll[np.arange(size), 1 - y]
        correct += int(np.sum(own > other))
    p = correct / n_sims
    return DissimilarityEstimate(p, math.sqrt(p * (1.0 - p) / n_sims), int(n_sims), Method.MONTE_CARLO)
