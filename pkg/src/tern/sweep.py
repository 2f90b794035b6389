"""Sample-size sweeps and the synthetic scenarios behind them.

A sweep takes growing prefixes of one dataset and, for each prefix size,
reports the region estimate, the pragmatic band of each point hypothesis,
and the resulting decision: the data needed to plot intervals against
sample size with the bands overlaid.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Callable, Optional, Sequence

import numpy as np

from .core import Decision, UsageError, decide_from_region
from .data import GravityData, TwoSampleData
from .estimators import RegressionCoefficientInterval, TwoSampleTInterval
from .models import (
    Model,
    gravity_regression_model,
    simulate_gravity_data,
    simulate_two_sample_data,
)
from .pragmatic import PragmaticConfig, pragmatic_approx, pragmatic_exact_normal
from .quantiles import normal_ppf
from .regions import Interval, ParameterRegion
from .rng import substream


@dataclass(frozen=True)
class SweepHypothesis:
    label: str
    region: ParameterRegion
    point: Optional[float] = None


@dataclass(frozen=True)
class SweepRow:
    n: int
    hypothesis: str
    interval: Interval
    band: Optional[Interval]
    decision: Decision

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "hypothesis": self.hypothesis,
            "ci_lo": self.interval.lo,
            "ci_hi": self.interval.hi,
            "pg_lo": None if self.band is None else self.band.lo,
            "pg_hi": None if self.band is None else self.band.hi,
            "decision": str(self.decision),
        }


CSV_HEADER = ("n", "hypothesis", "ci_lo", "ci_hi", "pg_lo", "pg_hi", "decision")


def head(data: Any, n: int) -> Any:
    if isinstance(data, (TwoSampleData, GravityData)):
        return data.head(n)
    return np.asarray(data)[:n]


def data_size(data: Any) -> int:
    if isinstance(data, TwoSampleData):
        return int(min(data.a.size, data.b.size))
    if isinstance(data, GravityData):
        return len(data)
    return int(np.asarray(data).size)


BandFn = Callable[[float, Any], Interval]


def approximate_band(model: Model, config: PragmaticConfig, relative: bool = True,
                     plug_in: Optional[Sequence[float]] = None) -> BandFn:
    """Pragmatic band by grid search.

    With ``relative`` the grid bounds in ``config`` are offsets from the null
    value; otherwise they are used as given.
    """

    def band(theta0: float, data: Any) -> Interval:
        cfg = config
        if relative:
            cfg = replace(config, grid_lo=theta0 + config.grid_lo, grid_hi=theta0 + config.grid_hi)
        return pragmatic_approx(model, theta0, cfg, plug_in=plug_in, data=data).retained

    return band


def exact_normal_band(sigma: float, n_future: int, tau: float) -> BandFn:
    """Closed-form band for a normal location with known ``sigma``."""

    def band(theta0: float, data: Any) -> Interval:
        return pragmatic_exact_normal(theta0, sigma, n_future, tau)

    return band


def sample_size_sweep(data: Any, n_list: Sequence[int], estimator: Callable[[Any], Interval],
                      hypotheses: Sequence[SweepHypothesis], band: Optional[BandFn] = None,
                      refit_band: bool = False) -> list[SweepRow]:
    """Test every hypothesis on ``head(data, n)`` for each ``n``.

    When ``band`` is given, point hypotheses are replaced by
    ``band(point, data)``.  The band is computed once from the full data,
    so it is the same at every ``n``; with ``refit_band`` it is recomputed
    from each prefix instead.
    """
    available = data_size(data)
    for n in n_list:
        if n > available:
            raise UsageError(f"sweep size {n} exceeds the {available} available observations")
    fixed = {}
    if band is not None and not refit_band:
        fixed = {h.label: band(h.point, data) for h in hypotheses if h.point is not None}
    rows = []
    for n in n_list:
        sub = head(data, n)
        region = estimator(sub)
        for hyp in hypotheses:
            pg = None
            target = hyp.region
            if hyp.point is not None and band is not None:
                pg = target = fixed[hyp.label] if hyp.label in fixed else band(hyp.point, sub)
            rows.append(SweepRow(int(n), hyp.label, region, pg, decide_from_region(region, target)))
    return rows


# -- synthetic scenarios --------------------------------------------------------


@dataclass(frozen=True)
class GravityScenario:
    """Drop experiment with a slow, noisy chronometer.

    Both tests stay undecided at the smallest ``n`` only if the interval
    reaches into both bands; a 95% interval misses a neighborhood of the
    true ``g`` about one time in twenty, so ``level`` is set to 0.99.
    """

    g: float = 9.8
    beta0: float = 0.2
    sigma: float = 0.02
    heights: tuple[float, ...] = tuple(float(h) for h in range(1, 11))
    future_reps: int = 5
    tau: float = 0.95
    level: float = 0.99
    nulls: tuple[float, ...] = (9.5, 9.8)
    n_list: tuple[int, ...] = (10, 100, 1000, 3000)
    half_width: float = 0.8
    grid_points: int = 41
    n_sims: int = 1000


def gravity_sweep(seed: int, scenario: GravityScenario = GravityScenario(), threads: int = 1) -> list[SweepRow]:
    data = simulate_gravity_data(max(scenario.n_list), scenario.g, scenario.beta0, scenario.sigma,
                                 scenario.heights, substream(seed, "gravity-data"))
    model = gravity_regression_model(scenario.heights, scenario.future_reps)
    config = PragmaticConfig(scenario.tau, -scenario.half_width, scenario.half_width, scenario.grid_points,
                             scenario.n_sims, seed, refine=True, threads=threads)
    hyps = [SweepHypothesis(f"g={g0:g}", Interval(g0, g0), g0) for g0 in scenario.nulls]
    return sample_size_sweep(data, scenario.n_list, RegressionCoefficientInterval(1, scenario.level, "g"),
                             hyps, approximate_band(model, config))


@dataclass(frozen=True)
class CamcogScenario:
    """Three groups whose pairwise gaps are large, at the band edge, and small.

    ``sigma`` is known, so the bands are exact.  At the band edge a
    ``level`` interval contains the edge with probability ``level``, which
    is what keeps the middle pair undecided at large ``n``.
    """

    sigma: float = 10.0
    control: float = 95.0
    mci: float = 85.0
    tau: float = 0.95
    level: float = 0.99
    n_future_per_group: int = 1
    n_list: tuple[int, ...] = (5, 20, 100, 500)

    @property
    def band_half_width(self) -> float:
        return 2.0 * self.sigma * normal_ppf(self.tau) / np.sqrt(self.n_future_per_group)

    @property
    def ad(self) -> float:
        # AD vs MCI sits exactly on the band edge
        return self.mci - self.band_half_width

    def means(self) -> dict[str, float]:
        return {"CG": self.control, "MCI": self.mci, "AD": self.ad}


CAMCOG_PAIRS = (("AD", "CG"), ("AD", "MCI"), ("CG", "MCI"))


def camcog_sweep(seed: int, scenario: CamcogScenario = CamcogScenario()) -> dict[str, list[SweepRow]]:
    n_max = max(scenario.n_list)
    means = scenario.means()
    rng = substream(seed, "camcog-data")
    groups = {k: mu + scenario.sigma * rng.standard_normal(n_max) for k, mu in means.items()}
    band = exact_normal_band(scenario.sigma, scenario.n_future_per_group, scenario.tau)
    out = {}
    for i, j in CAMCOG_PAIRS:
        data = TwoSampleData(groups[i], groups[j])
        hyp = SweepHypothesis(f"mu_{i}-mu_{j}=0", Interval(0.0, 0.0), 0.0)
        out[f"{i} vs {j}"] = sample_size_sweep(data, scenario.n_list, TwoSampleTInterval(scenario.level),
                                               [hyp], band)
    return out


def two_sample_sweep_data(n: int, mu_a: float, mu_b: float, sigma: float, seed: int) -> TwoSampleData:
    return simulate_two_sample_data(n, mu_a, mu_b, sigma, substream(seed, "two-sample-data"))
