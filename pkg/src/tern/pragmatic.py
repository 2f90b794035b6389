"""Pragmatic hypotheses: the parameter values predictively close to a point null.

For ``H0: theta(1) = theta0`` the approximate pragmatic hypothesis fixes the
nuisance coordinates at plug-in estimates and keeps every ``theta*`` on a
grid whose classification dissimilarity to ``theta0`` is below the accuracy
threshold ``tau``.  ``tau`` is the single threshold knob: a value outside
the set can be told apart from ``theta0`` with accuracy at least ``tau``.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

import numpy as np

from .core import Decision, UsageError, decide_from_region
from .dissimilarity import DissimilarityEstimate, dissimilarity_from_samples, draw_samples
from .models import Model
from .quantiles import normal_ppf
from .regions import FiniteUnion, Interval, ParameterRegion


class NonConvexPragmaticWarning(UserWarning):
    """The retained grid points do not form one contiguous run."""


class GridBoundaryWarning(UserWarning):
    """The retained set reaches the end of the search grid."""


def _check_tau(tau: float) -> None:
    if not (isinstance(tau, (int, float)) and 0.5 < tau < 1.0):
        raise UsageError(f"accuracy_threshold must lie in (0.5, 1), got {tau!r}")


@dataclass(frozen=True)
class PragmaticConfig:
    accuracy_threshold: float = 0.95
    grid_lo: float = -1.0
    grid_hi: float = 1.0
    grid_points: int = 201
    n_sims: int = 10_000
    seed: int = 0
    refine: bool = False
    crn: bool = False
    threads: int = 1

    def __post_init__(self) -> None:
        _check_tau(self.accuracy_threshold)
        if not (math.isfinite(self.grid_lo) and math.isfinite(self.grid_hi) and self.grid_lo < self.grid_hi):
            raise UsageError(f"need finite grid_lo < grid_hi, got {self.grid_lo}, {self.grid_hi}")
        if not (int(self.grid_points) == self.grid_points and self.grid_points >= 3):
            raise UsageError(f"grid_points must be an integer >= 3, got {self.grid_points!r}")
        if not (int(self.n_sims) == self.n_sims and self.n_sims >= 1):
            raise UsageError(f"n_sims must be a positive integer, got {self.n_sims!r}")
        if not (int(self.seed) == self.seed and self.seed >= 0):
            raise UsageError(f"seed must be a non-negative integer, got {self.seed!r}")
        if not (int(self.threads) == self.threads and self.threads >= 1):
            raise UsageError(f"threads must be a positive integer, got {self.threads!r}")

    @property
    def refine_tol(self) -> float:
        return (self.grid_hi - self.grid_lo) / 1e4

    def grid(self) -> np.ndarray:
        return np.linspace(self.grid_lo, self.grid_hi, int(self.grid_points))

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "threads"}


@dataclass(frozen=True)
class GridPoint:
    theta_star: float
    dissimilarity: DissimilarityEstimate
    retained: bool
    refined: bool = False


@dataclass
class PragmaticResult:
    theta0: float
    threshold: float
    retained: Interval
    retained_raw: ParameterRegion
    grid: list[GridPoint]
    plug_in: list[float]
    boundary_estimates: list[Optional[float]]
    convex: bool = True
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "theta0": self.theta0,
            "accuracy_threshold": self.threshold,
            "retained": self.retained.to_dict(),
            "retained_raw": self.retained_raw.to_dict(),
            "convex": self.convex,
            "plug_in": self.plug_in,
            "boundary_estimates": self.boundary_estimates,
            "warnings": self.warnings,
            "grid": [{"theta_star": p.theta_star, "dissimilarity": p.dissimilarity.value,
                      "std_error": p.dissimilarity.std_error, "retained": p.retained,
                      "refined": p.refined} for p in self.grid],
        }

    def csv_rows(self) -> list[tuple]:
        """One row per evaluated point: ``theta_star, dissimilarity, std_error, retained``."""
        return [(p.theta_star, p.dissimilarity.value, p.dissimilarity.std_error, int(p.retained))
                for p in self.grid]


CSV_HEADER = ("theta_star", "dissimilarity", "std_error", "retained")


def pragmatic_exact_normal(theta0: float, sigma: float = 1.0, n_future: int = 1,
                           tau: float = 0.95) -> Interval:
    """``{theta* : Phi(sqrt(n)|theta* - theta0| / (2 sigma)) < tau}`` plus ``theta0`` itself.

    The open interval ``(theta0 - w, theta0 + w)``, ``w = 2 sigma Phi^-1(tau) / sqrt(n)``.
    """
    _check_tau(tau)
    if not sigma > 0:
        raise UsageError(f"sigma must be positive, got {sigma!r}")
    if not n_future >= 1:
        raise UsageError(f"n_future must be at least 1, got {n_future!r}")
    w = 2.0 * sigma * normal_ppf(tau) / math.sqrt(n_future)
    if w <= 0:
        return Interval(theta0, theta0)
    return Interval(theta0 - w, theta0 + w, False, False)


class _Evaluator:
    def __init__(self, model: Model, theta0: float, plug_in: np.ndarray, config: PragmaticConfig):
        self.model = model
        self.config = config
        self.plug_in = plug_in
        self.null = self.full(theta0)
        self.z0 = draw_samples(model, self.null, config.seed, int(config.n_sims))
        self.logf0 = model.log_density(self.z0, self.null)
        if not np.all(np.isfinite(self.logf0)):
            raise ArithmeticError(f"non-finite log-density at theta={self.null.tolist()}")

    def full(self, t: float) -> np.ndarray:
        return np.concatenate([[float(t)], self.plug_in])

    def __call__(self, t: float) -> DissimilarityEstimate:
        theta_star = self.full(t)
        key = ("crn",) if self.config.crn else None
        z_star = draw_samples(self.model, theta_star, self.config.seed, int(self.config.n_sims), key=key)
        return dissimilarity_from_samples(self.model, self.null, theta_star, self.z0, z_star, self.logf0)


def _runs(flags: Sequence[bool]) -> list[tuple[int, int]]:
    runs, start = [], None
    for i, f in enumerate(flags):
        if f and start is None:
            start = i
        if not f and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(flags) - 1))
    return runs


def _bisect(evaluate: Callable[[float], DissimilarityEstimate], inside: float, outside: float,
            tau: float, tol: float, record: list[GridPoint]) -> tuple[float, float]:
    """Shrink ``[inside, outside]`` (retained, excluded) until shorter than ``tol``."""
    while abs(outside - inside) > tol:
        mid = 0.5 * (inside + outside)
        est = evaluate(mid)
        keep = est.value < tau
        record.append(GridPoint(mid, est, keep, refined=True))
        if keep:
            inside = mid
        else:
            outside = mid
    return inside, outside


def resolve_plug_in(model: Model, plug_in: Optional[Sequence[float]], data: Any) -> np.ndarray:
    n_nuisance = model.param_dim - 1
    if plug_in is None:
        if n_nuisance == 0:
            return np.empty(0)
        if data is None:
            raise UsageError(f"{model.name}: nuisance coordinates {list(model.param_names[1:])} "
                             "need plug-in values or data to estimate them")
        return np.asarray(model.estimate(data), dtype=float)[1:]
    arr = np.asarray(plug_in, dtype=float).reshape(-1)
    if arr.size != n_nuisance:
        raise UsageError(f"{model.name}: expected {n_nuisance} plug-in value(s), got {arr.size}")
    return arr


def pragmatic_approx(model: Model, theta0: float, config: PragmaticConfig,
                     plug_in: Optional[Sequence[float]] = None, data: Any = None) -> PragmaticResult:
    """Grid approximation of the plug-in pragmatic hypothesis for ``theta(1) = theta0``.

    Draws ``n_sims`` future samples once at ``(theta0, plug_in)`` and fresh
    samples at every ``(theta*, plug_in)``; ``theta*`` is retained iff its
    estimated dissimilarity is strictly below ``config.accuracy_threshold``.
    Nuisance values come from ``plug_in`` or, failing that, ``model.estimate(data)``.

    The reported ``retained`` region is the interval hull of the retained
    points; ``retained_raw`` keeps each contiguous run separately.
    """
    theta0 = float(theta0)
    if not config.grid_lo <= theta0 <= config.grid_hi:
        raise UsageError(f"grid [{config.grid_lo}, {config.grid_hi}] does not contain theta0={theta0}")
    nuisance = resolve_plug_in(model, plug_in, data)
    evaluate = _Evaluator(model, theta0, nuisance, config)
    tau = config.accuracy_threshold

    grid = np.union1d(config.grid(), [theta0])
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=int(config.threads)) as pool:
            estimates = list(pool.map(evaluate, grid))
    else:
        estimates = [evaluate(t) for t in grid]
    points = [GridPoint(float(t), e, e.value < tau) for t, e in zip(grid, estimates)]
    flags = [p.retained for p in points]
    runs = _runs(flags)
    notes: list[str] = []

    i0 = int(np.searchsorted(grid, theta0))
    convex = len(runs) == 1
    if not convex:
        msg = f"retained grid points form {len(runs)} separate runs; reporting their interval hull"
        notes.append(msg)
        warnings.warn(msg, NonConvexPragmaticWarning, stacklevel=2)

    first, last = runs[0][0], runs[-1][1]
    lo_end, hi_end = float(grid[first]), float(grid[last])
    bounds: list[Optional[float]] = [None, None]
    refined: list[GridPoint] = []
    if first == 0 or last == len(grid) - 1:
        msg = "retained set reaches the end of the search grid; widen the grid"
        notes.append(msg)
        warnings.warn(msg, GridBoundaryWarning, stacklevel=2)
    if first > 0:
        if config.refine:
            lo_end, out = _bisect(evaluate, lo_end, float(grid[first - 1]), tau, config.refine_tol, refined)
            bounds[0] = 0.5 * (lo_end + out)
        else:
            bounds[0] = 0.5 * (lo_end + float(grid[first - 1]))
    if last < len(grid) - 1:
        if config.refine:
            hi_end, out = _bisect(evaluate, hi_end, float(grid[last + 1]), tau, config.refine_tol, refined)
            bounds[1] = 0.5 * (hi_end + out)
        else:
            bounds[1] = 0.5 * (hi_end + float(grid[last + 1]))

    assert flags[i0], "the null value has zero self-dissimilarity and is always retained"
    raw_parts = [Interval(float(grid[a]), float(grid[b])) for a, b in runs]
    raw_parts[0] = Interval(lo_end, raw_parts[0].hi) if len(raw_parts) > 1 else Interval(lo_end, hi_end)
    if len(raw_parts) > 1:
        raw_parts[-1] = Interval(raw_parts[-1].lo, hi_end)
    raw = raw_parts[0] if len(raw_parts) == 1 else FiniteUnion(tuple(raw_parts))
    all_points = sorted(points + refined, key=lambda p: p.theta_star)
    return PragmaticResult(
        theta0=theta0,
        threshold=tau,
        retained=Interval(lo_end, hi_end),
        retained_raw=raw,
        grid=all_points,
        plug_in=[float(v) for v in nuisance],
        boundary_estimates=bounds,
        convex=convex,
        warnings=notes,
    )


def pragmatic_test(model: Model, theta0: float, data: Any, estimator: Callable[[Any], ParameterRegion],
                   config: PragmaticConfig, plug_in: Optional[Sequence[float]] = None
                   ) -> tuple[PragmaticResult, Decision]:
    """Build the pragmatic hypothesis from ``data`` and test it with ``estimator(data)``."""
    result = pragmatic_approx(model, theta0, config, plug_in=plug_in, data=data)
    return result, decide_from_region(estimator(data), result.retained)
