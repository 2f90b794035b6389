"""Agnostic (three-outcome) hypothesis tests, pragmatic hypotheses and their calibration."""

from .core import AgnosticTest, Decision, UsageError, as_standard_test, decide_from_region, run_test
from .regions import Box, FiniteUnion, HalfSpace, Interval, ParameterRegion, Point

__all__ = [
    "AgnosticTest",
    "Decision",
    "UsageError",
    "as_standard_test",
    "decide_from_region",
    "run_test",
    "Box",
    "FiniteUnion",
    "HalfSpace",
    "Interval",
    "ParameterRegion",
    "Point",
]

__version__ = "0.1.0"
