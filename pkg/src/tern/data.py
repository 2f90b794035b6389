"""Dataset containers and their CSV representations.

CSV layouts (UTF-8, header row required, ``.`` as decimal separator):

* normal: one column ``x``
* two-sample: columns ``group,y`` with ``group`` in ``{a, b}``
* gravity: columns ``height,time``
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np


class DataError(ValueError):
    """Input data is missing, malformed, or incompatible with the model."""


@dataclass(frozen=True)
class TwoSampleData:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _finite_1d(self.a, "a"))
        object.__setattr__(self, "b", _finite_1d(self.b, "b"))

    def swapped(self) -> "TwoSampleData":
        return TwoSampleData(self.b, self.a)

    def head(self, n: int) -> "TwoSampleData":
        """First ``n`` observations of each group."""
        return TwoSampleData(self.a[:n], self.b[:n])


@dataclass(frozen=True)
class GravityData:
    """Drop heights (metres) and measured fall times (seconds)."""

    heights: np.ndarray
    times: np.ndarray

    def __post_init__(self) -> None:
        h = _finite_1d(self.heights, "height")
        t = _finite_1d(self.times, "time")
        if h.size != t.size:
            raise DataError(f"{h.size} heights but {t.size} times")
        if np.any(h <= 0):
            raise DataError("heights must be positive")
        object.__setattr__(self, "heights", h)
        object.__setattr__(self, "times", t)

    def __len__(self) -> int:
        return int(self.heights.size)

    def head(self, n: int) -> "GravityData":
        return GravityData(self.heights[:n], self.times[:n])


Dataset = Union[np.ndarray, TwoSampleData, GravityData]


def _finite_1d(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise DataError(f"column {name!r} contains non-finite values")
    arr.setflags(write=False)
    return arr


def _read_rows(path: Union[str, Path], required: tuple[str, ...]) -> list[dict[str, str]]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            header = [h.strip() for h in (reader.fieldnames or [])]
            missing = [c for c in required if c not in header]
            if missing:
                raise DataError(f"{path}: missing column(s) {', '.join(missing)}; header is {header}")
            rows = [{k.strip(): (v or "").strip() for k, v in row.items() if k is not None} for row in reader]
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from exc
    if not rows:
        raise DataError(f"{path}: no data rows")
    return rows


def _float(value: str, column: str, line: int) -> float:
    try:
        x = float(value)
    except ValueError:
        raise DataError(f"line {line}: column {column!r} is not a number: {value!r}") from None
    if not math.isfinite(x):
        raise DataError(f"line {line}: column {column!r} is not finite")
    return x


def read_normal_csv(path: Union[str, Path]) -> np.ndarray:
    rows = _read_rows(path, ("x",))
    return _finite_1d([_float(r["x"], "x", i + 2) for i, r in enumerate(rows)], "x")


def read_two_sample_csv(path: Union[str, Path]) -> TwoSampleData:
    rows = _read_rows(path, ("group", "y"))
    groups: dict[str, list[float]] = {"a": [], "b": []}
    for i, r in enumerate(rows):
        g = r["group"]
        if g not in groups:
            raise DataError(f"line {i + 2}: group must be 'a' or 'b', got {g!r}")
        groups[g].append(_float(r["y"], "y", i + 2))
    return TwoSampleData(groups["a"], groups["b"])


def read_gravity_csv(path: Union[str, Path]) -> GravityData:
    rows = _read_rows(path, ("height", "time"))
    h = [_float(r["height"], "height", i + 2) for i, r in enumerate(rows)]
    t = [_float(r["time"], "time", i + 2) for i, r in enumerate(rows)]
    return GravityData(h, t)


def write_csv(path: Union[str, Path], data: Dataset) -> None:
    """Write ``data`` in the layout ``read_*_csv`` expects.

    Floats are written with ``repr`` so a write/read cycle is lossless.
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        if isinstance(data, TwoSampleData):
            w.writerow(["group", "y"])
            w.writerows(("a", repr(float(v))) for v in data.a)
            w.writerows(("b", repr(float(v))) for v in data.b)
        elif isinstance(data, GravityData):
            w.writerow(["height", "time"])
            w.writerows((repr(float(h)), repr(float(t))) for h, t in zip(data.heights, data.times))
        else:
            w.writerow(["x"])
            w.writerows((repr(float(v)),) for v in np.asarray(data, dtype=float).reshape(-1))


READERS = {
    "normal": read_normal_csv,
    "two-sample": read_two_sample_csv,
    "gravity": read_gravity_csv,
}
