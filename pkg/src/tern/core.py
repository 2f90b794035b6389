"""Three-valued decisions and region-based agnostic tests."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable

from .regions import (
    Box,
    FiniteUnion,
    HalfSpace,
    Interval,
    ParameterRegion,
    Point,
    RegionError,
)

__all__ = [
    "Decision",
    "AgnosticTest",
    "UsageError",
    "decide_from_region",
    "run_test",
    "as_standard_test",
    "ParameterRegion",
    "Interval",
    "Box",
    "HalfSpace",
    "Point",
    "FiniteUnion",
]


class UsageError(ValueError):
    """A caller supplied inputs that violate an operation's preconditions."""


class Decision(Enum):
    """Outcome of an agnostic test, encoded as 0 (accept), 1/2 (agnostic), 1 (reject)."""

    ACCEPT = 0.0
    AGNOSTIC = 0.5
    REJECT = 1.0

    @property
    def is_assertive(self) -> bool:
        return self is not Decision.AGNOSTIC

    @classmethod
    def parse(cls, text: str) -> "Decision":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown decision {text!r}; expected accept, agnostic or reject") from None

    def __str__(self) -> str:
        return self.name.lower()


def decide_from_region(region: ParameterRegion, hypothesis: ParameterRegion) -> Decision:
    """Accept if ``region`` lies inside ``hypothesis``, reject if it lies inside
    the complement, otherwise remain agnostic."""
    if region.dim != hypothesis.dim:
        raise UsageError(f"region has dimension {region.dim} but hypothesis has dimension {hypothesis.dim}")
    if region.is_empty():
        raise UsageError("empty region estimate; the estimator produced no plausible values")
    try:
        if region.is_subset_of(hypothesis):
            return Decision.ACCEPT
        if region.is_subset_of_complement(hypothesis):
            return Decision.REJECT
    except RegionError as exc:
        raise UsageError(str(exc)) from exc
    return Decision.AGNOSTIC


@dataclass(frozen=True)
class AgnosticTest:
    """The agnostic test of ``hypothesis`` induced by ``region_estimator``.

    ``region_estimator`` is any callable mapping a dataset to a
    :class:`ParameterRegion` (see :mod:`tern.estimators`).
    """

    hypothesis: ParameterRegion
    region_estimator: Callable[[Any], ParameterRegion]

    def region(self, data: Any) -> ParameterRegion:
        return self.region_estimator(data)

    def __call__(self, data: Any) -> Decision:
        return decide_from_region(self.region(data), self.hypothesis)


def run_test(test: AgnosticTest, data: Any) -> Decision:
    return test(data)


def as_standard_test(test: Callable[[Any], Decision], agnostic_maps_to: Decision) -> Callable[[Any], Decision]:
    """Collapse the agnostic outcome onto one of the two assertive ones.

    With ``agnostic_maps_to=Decision.ACCEPT`` this is the classical
    reject / do-not-reject test.
    """
    if not isinstance(agnostic_maps_to, Decision) or not agnostic_maps_to.is_assertive:
        raise UsageError("agnostic_maps_to must be Decision.ACCEPT or Decision.REJECT")

    def standard(data: Any) -> Decision:
        d = test(data)
        return agnostic_maps_to if d is Decision.AGNOSTIC else d

    standard.__name__ = f"standard_{agnostic_maps_to}"
    standard.agnostic_maps_to = agnostic_maps_to  # type: ignore[attr-defined]
    return standard
