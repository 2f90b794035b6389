"""Monte Carlo error rates of agnostic tests.

For a test of ``H0`` and parameter values ``theta`` on a grid,
``estimate_levels`` estimates ``P_theta(reject)``, ``P_theta(accept)`` and
``P_theta(agnostic)``; the type I level is the largest rejection rate over
grid points in ``H0`` and the type II level the largest acceptance rate over
grid points outside it.  ``estimate_fcp`` estimates the prior-weighted
probability of an assertive wrong conclusion.

Simulated datasets are draws of the model's experiment (``model.sample``),
converted to the estimator's data type by ``to_dataset`` when needed.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence, Union

import numpy as np

from .core import AgnosticTest, Decision, UsageError
from .models import Model
from .rng import as_seed, substream

CHUNK = 10_000

PriorSampler = Callable[[np.random.Generator, int], np.ndarray]


def mc_std_error(p: float, n: int) -> float:
    return math.sqrt(p * (1.0 - p) / n) if n > 0 else float("nan")


@dataclass(frozen=True)
class PointRates:
    theta: tuple[float, ...]
    in_null: bool
    reject: float
    accept: float
    agnostic: float

    def to_dict(self) -> dict:
        return {"theta": list(self.theta), "in_null": self.in_null, "reject_rate": self.reject,
                "accept_rate": self.accept, "type3_rate": self.agnostic}


@dataclass
class ErrorReport:
    alpha_hat: Optional[float]
    beta_hat: Optional[float]
    n_sims: int
    theta_grid: list[tuple[float, ...]]
    points: list[PointRates]
    mc_std_errors: dict[str, Optional[float]]
    gamma_hat: Optional[float] = None
    notes: list[str] = field(default_factory=list)

    @property
    def type3_rate(self) -> dict[tuple[float, ...], float]:
        return {p.theta: p.agnostic for p in self.points}

    def to_dict(self) -> dict:
        return {
            "alpha_hat": self.alpha_hat,
            "beta_hat": self.beta_hat,
            "gamma_hat": self.gamma_hat,
            "n_sims": self.n_sims,
            "mc_std_errors": self.mc_std_errors,
            "points": [p.to_dict() for p in self.points],
            "notes": self.notes,
        }

    def csv_rows(self) -> list[tuple]:
        return [(*p.theta, int(p.in_null), p.reject, p.accept, p.agnostic) for p in self.points]


@dataclass(frozen=True)
class FCPEstimate:
    value: float
    std_error: float
    n_sims: int

    def __float__(self) -> float:
        return self.value


def _identity(z: np.ndarray) -> Any:
    return z


def _decision_counts(test: Callable[[Any], Decision], samples: np.ndarray,
                     to_dataset: Callable[[np.ndarray], Any]) -> dict[Decision, int]:
    counts = {d: 0 for d in Decision}
    for row in samples:
        counts[test(to_dataset(row))] += 1
    return counts


def _in_null(test: AgnosticTest, theta: np.ndarray, project: Callable[[np.ndarray], Any]) -> bool:
    return test.hypothesis.contains(project(theta))


def _pool_map(fn, items, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _chunks(n: int) -> list[tuple[int, int]]:
    return [(c, min(CHUNK, n - start)) for c, start in enumerate(range(0, n, CHUNK))]


def estimate_levels(test: AgnosticTest, model: Model, theta_grid: Sequence, n_sims: int,
                    rng: Union[int, np.random.Generator, None] = 0, *,
                    to_dataset: Callable[[np.ndarray], Any] = _identity,
                    project: Callable[[np.ndarray], Any] = _identity,
                    threads: int = 1) -> ErrorReport:
    """Per-point decision frequencies over ``n_sims`` simulated datasets.

    ``project`` maps a model parameter vector to the hypothesis coordinates
    (identity when they coincide).  A level whose side of the hypothesis has
    no grid point is reported as ``None``.
    """
    if not (int(n_sims) == n_sims and n_sims >= 1):
        raise UsageError(f"n_sims must be a positive integer, got {n_sims!r}")
    grid = [model.theta(np.atleast_1d(np.asarray(t, dtype=float))) for t in theta_grid]
    if not grid:
        raise UsageError("theta grid is empty")
    seed = as_seed(rng)
    n = int(n_sims)

    def run(theta: np.ndarray) -> PointRates:
        counts = {d: 0 for d in Decision}
        for c, size in _chunks(n):
            gen = substream(seed, "levels", c, *(float(v) for v in theta))
            for d, k in _decision_counts(test, model.sample(theta, gen, size=size), to_dataset).items():
                counts[d] += k
        return PointRates(tuple(float(v) for v in theta), _in_null(test, theta, project),
                          counts[Decision.REJECT] / n, counts[Decision.ACCEPT] / n,
                          counts[Decision.AGNOSTIC] / n)

    points = _pool_map(run, grid, threads)
    null_pts = [p for p in points if p.in_null]
    alt_pts = [p for p in points if not p.in_null]
    notes = []
    alpha = max((p.reject for p in null_pts), default=None)
    beta = max((p.accept for p in alt_pts), default=None)
    if alpha is None:
        notes.append("no grid point lies in H0; type I level undefined")
    if beta is None:
        notes.append("no grid point lies in H1; type II level undefined")
    ses = {
        "alpha_hat": None if alpha is None else mc_std_error(alpha, n),
        "beta_hat": None if beta is None else mc_std_error(beta, n),
    }
    return ErrorReport(alpha, beta, n, [p.theta for p in points], points, ses, notes=notes)


def estimate_fcp(test: AgnosticTest, model: Model, prior_sampler: PriorSampler, n_sims: int,
                 rng: Union[int, np.random.Generator, None] = 0, *,
                 to_dataset: Callable[[np.ndarray], Any] = _identity,
                 project: Callable[[np.ndarray], Any] = _identity,
                 threads: int = 1) -> FCPEstimate:
    """Frequency of false assertive conclusions with ``theta`` drawn from the prior.

    ``prior_sampler(rng, size)`` returns ``size`` parameter values, as a
    ``(size,)`` array for one-parameter models or ``(size, d)``.
    """
    if not (int(n_sims) == n_sims and n_sims >= 1):
        raise UsageError(f"n_sims must be a positive integer, got {n_sims!r}")
    seed = as_seed(rng)
    n = int(n_sims)

    def run(chunk: tuple[int, int]) -> int:
        c, size = chunk
        gen = substream(seed, "fcp", c)
        thetas = np.asarray(prior_sampler(gen, size), dtype=float)
        if thetas.ndim == 1:
            thetas = thetas[:, None]
        thetas = model.theta(thetas)
        samples = model.sample(thetas, gen, size=size)
        wrong = 0
        for theta, row in zip(thetas, samples):
            d = test(to_dataset(row))
            if d is Decision.AGNOSTIC:
                continue
            truth = _in_null(test, theta, project)
            if (d is Decision.REJECT and truth) or (d is Decision.ACCEPT and not truth):
                wrong += 1
        return wrong

    wrong = sum(_pool_map(run, _chunks(n), threads))
    gamma = wrong / n
    return FCPEstimate(gamma, mc_std_error(gamma, n), n)


def normal_prior(mean: float = 0.0, sd: float = 1.0) -> PriorSampler:
    if not sd > 0:
        raise UsageError("prior sd must be positive")

    def sampler(rng: np.random.Generator, size: int) -> np.ndarray:
        return mean + sd * rng.standard_normal(size)

    return sampler
