"""Parameter regions with exact membership and inclusion tests.

All shapes reduce to finite unions of axis-aligned boxes whose sides are
intervals with open or closed ends.  Inclusion between such unions is decided
exactly by splitting every axis at the union of all endpoints: each resulting
elementary piece (a single endpoint or the open gap between two consecutive
endpoints) lies either completely inside or completely outside every side
involved, so checking one product cell at a time is exact.
"""

from __future__ import annotations

import itertools
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

ArrayLike = Union[float, Sequence[float], np.ndarray]


class RegionError(ValueError):
    """Invalid region construction or an operation between incompatible regions."""


class ParameterRegion(ABC):
    """A subset of R^d."""

    @property
    @abstractmethod
    def dim(self) -> int: ...

    @abstractmethod
    def boxes(self) -> tuple["Box", ...]:
        """The region as a finite union of boxes."""

    def contains(self, theta: ArrayLike) -> bool:
        point = _as_point(theta, self.dim)
        return any(b.contains(point) for b in self.boxes())

    def __contains__(self, theta: ArrayLike) -> bool:
        return self.contains(theta)

    def is_empty(self) -> bool:
        return all(b.is_empty() for b in self.boxes())

    def is_subset_of(self, other: "ParameterRegion") -> bool:
        _check_dims(self, other)
        mine = [b for b in self.boxes() if not b.is_empty()]
        if not mine:
            return True
        theirs = [b for b in other.boxes() if not b.is_empty()]
        if not theirs:
            return False
        # fast path: a single containing box
        if len(theirs) == 1:
            return all(b.is_subset_of_box(theirs[0]) for b in mine)
        for cell in _cells(mine + theirs, self.dim):
            if any(_cell_in_box(cell, b) for b in mine) and not any(_cell_in_box(cell, b) for b in theirs):
                return False
        return True

    def is_disjoint_from(self, other: "ParameterRegion") -> bool:
        _check_dims(self, other)
        return all(a.intersect_box(b).is_empty() for a in self.boxes() for b in other.boxes())

    def is_subset_of_complement(self, other: "ParameterRegion") -> bool:
        return self.is_disjoint_from(other)

    def intersection(self, other: "ParameterRegion") -> "ParameterRegion":
        _check_dims(self, other)
        parts = [a.intersect_box(b) for a in self.boxes() for b in other.boxes()]
        return _simplify([p for p in parts if not p.is_empty()], self.dim)

    def union(self, other: "ParameterRegion") -> "ParameterRegion":
        _check_dims(self, other)
        return _simplify(list(self.boxes()) + list(other.boxes()), self.dim)

    def complement(self) -> "ParameterRegion":
        mine = [b for b in self.boxes() if not b.is_empty()]
        parts = [_cell_box(c) for c in _cells(mine, self.dim)
                 if not any(_cell_in_box(c, b) for b in mine)]
        return _simplify(parts, self.dim)

    def __and__(self, other: "ParameterRegion") -> "ParameterRegion":
        return self.intersection(other)

    def __or__(self, other: "ParameterRegion") -> "ParameterRegion":
        return self.union(other)

    def __invert__(self) -> "ParameterRegion":
        return self.complement()

    def intervals(self) -> list["Interval"]:
        """Canonical sorted, disjoint, maximal intervals (1-D regions only)."""
        if self.dim != 1:
            raise RegionError("intervals() is only defined for one-dimensional regions")
        return _merge_intervals([b.sides[0] for b in self.boxes() if not b.is_empty()])

    def hull(self) -> "Interval":
        """Smallest interval containing a non-empty 1-D region."""
        ivs = self.intervals()
        if not ivs:
            raise RegionError("hull of an empty region")
        return Interval(ivs[0].lo, ivs[-1].hi, ivs[0].lo_closed, ivs[-1].hi_closed)

    def to_dict(self) -> dict:
        if self.dim == 1:
            return {"dim": 1, "intervals": [iv.to_dict() for iv in self.intervals()]}
        return {"dim": self.dim, "boxes": [[s.to_dict() for s in b.sides] for b in self.boxes()]}


@dataclass(frozen=True)
class Interval(ParameterRegion):
    """A real interval; infinite ends are always open."""

    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise RegionError("interval endpoints must not be NaN")
        if lo > hi:
            raise RegionError(f"interval lower end {lo} exceeds upper end {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if math.isinf(lo):
            object.__setattr__(self, "lo_closed", False)
        if math.isinf(hi):
            object.__setattr__(self, "hi_closed", False)

    @classmethod
    def closed(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def open(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def real_line(cls) -> "Interval":
        return cls(-math.inf, math.inf, False, False)

    @property
    def dim(self) -> int:
        return 1

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def boxes(self) -> tuple["Box", ...]:
        return (Box((self,)),)

    def is_empty(self) -> bool:
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    def contains_value(self, x: float) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def contains(self, theta: ArrayLike) -> bool:
        return self.contains_value(float(_as_point(theta, 1)[0]))

    def intersect(self, other: "Interval") -> "Interval":
        if self.lo > other.lo:
            lo, lo_c = self.lo, self.lo_closed
        elif self.lo < other.lo:
            lo, lo_c = other.lo, other.lo_closed
        else:
            lo, lo_c = self.lo, self.lo_closed and other.lo_closed
        if self.hi < other.hi:
            hi, hi_c = self.hi, self.hi_closed
        elif self.hi > other.hi:
            hi, hi_c = other.hi, other.hi_closed
        else:
            hi, hi_c = self.hi, self.hi_closed and other.hi_closed
        if lo > hi:
            return Interval(lo, lo, False, False)
        return Interval(lo, hi, lo_c, hi_c)

    def is_subset_of_interval(self, other: "Interval") -> bool:
        if self.is_empty():
            return True
        if self.lo < other.lo or (self.lo == other.lo and self.lo_closed and not other.lo_closed):
            return False
        if self.hi > other.hi or (self.hi == other.hi and self.hi_closed and not other.hi_closed):
            return False
        return True

    def map_monotone(self, fn, decreasing: bool = False) -> "Interval":
        """Image under a continuous monotone map; endpoint openness is carried over."""
        a, b = fn(self.lo), fn(self.hi)
        if decreasing:
            return Interval(b, a, self.hi_closed, self.lo_closed)
        return Interval(a, b, self.lo_closed, self.hi_closed)

    def to_dict(self) -> dict:
        return {"lo": _json_float(self.lo), "hi": _json_float(self.hi),
                "lo_closed": self.lo_closed, "hi_closed": self.hi_closed}

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo:g}, {self.hi:g}{right}"


@dataclass(frozen=True)
class Box(ParameterRegion):
    """Cartesian product of intervals."""

    sides: tuple[Interval, ...]

    def __post_init__(self) -> None:
        sides = tuple(self.sides)
        if not sides:
            raise RegionError("a box needs at least one side")
        for s in sides:
            if not isinstance(s, Interval):
                raise RegionError(f"box sides must be Interval instances, got {type(s).__name__}")
        object.__setattr__(self, "sides", sides)

    @property
    def dim(self) -> int:
        return len(self.sides)

    def boxes(self) -> tuple["Box", ...]:
        return (self,)

    def contains(self, theta: ArrayLike) -> bool:
        point = _as_point(theta, self.dim)
        return all(s.contains_value(float(v)) for s, v in zip(self.sides, point))

    def is_empty(self) -> bool:
        return any(s.is_empty() for s in self.sides)

    def intersect_box(self, other: "Box") -> "Box":
        return Box(tuple(a.intersect(b) for a, b in zip(self.sides, other.sides)))

    def is_subset_of_box(self, other: "Box") -> bool:
        if self.is_empty():
            return True
        return all(a.is_subset_of_interval(b) for a, b in zip(self.sides, other.sides))

    def __str__(self) -> str:
        return " x ".join(str(s) for s in self.sides)


@dataclass(frozen=True)
class HalfSpace(ParameterRegion):
    """``{theta : theta[coord] <op> bound}`` with ``op`` one of ``>=, >, <=, <``."""

    coord: int
    direction: str
    bound: float
    ndim: int = 1

    def __post_init__(self) -> None:
        if self.direction not in (">=", ">", "<=", "<"):
            raise RegionError(f"unknown half-space direction {self.direction!r}")
        if not 0 <= self.coord < self.ndim:
            raise RegionError(f"coordinate {self.coord} out of range for dimension {self.ndim}")

    @property
    def dim(self) -> int:
        return self.ndim

    def side(self) -> Interval:
        b = float(self.bound)
        if self.direction == ">=":
            return Interval(b, math.inf, True, False)
        if self.direction == ">":
            return Interval(b, math.inf, False, False)
        if self.direction == "<=":
            return Interval(-math.inf, b, False, True)
        return Interval(-math.inf, b, False, False)

    def boxes(self) -> tuple["Box", ...]:
        sides = [Interval.real_line()] * self.ndim
        sides[self.coord] = self.side()
        return (Box(tuple(sides)),)


@dataclass(frozen=True)
class Point(ParameterRegion):
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in np.atleast_1d(np.asarray(self.values, dtype=float)))
        if any(math.isnan(v) or math.isinf(v) for v in vals):
            raise RegionError("point coordinates must be finite")
        object.__setattr__(self, "values", vals)

    @property
    def dim(self) -> int:
        return len(self.values)

    def boxes(self) -> tuple["Box", ...]:
        return (Box(tuple(Interval(v, v) for v in self.values)),)


@dataclass(frozen=True)
class FiniteUnion(ParameterRegion):
    members: tuple[ParameterRegion, ...]

    def __post_init__(self) -> None:
        members = tuple(self.members)
        if not members:
            raise RegionError("a finite union needs at least one member; use empty_region(dim)")
        dims = {m.dim for m in members}
        if len(dims) != 1:
            raise RegionError(f"union members disagree on dimension: {sorted(dims)}")
        object.__setattr__(self, "members", members)

    @property
    def dim(self) -> int:
        return self.members[0].dim

    def boxes(self) -> tuple["Box", ...]:
        return tuple(b for m in self.members for b in m.boxes())


def empty_region(dim: int = 1) -> ParameterRegion:
    return Box(tuple([Interval(0.0, 0.0, False, False)] + [Interval.real_line()] * (dim - 1)))


def box(*bounds: tuple[float, float]) -> Box:
    """Closed box from ``(lo, hi)`` pairs."""
    return Box(tuple(Interval(lo, hi) for lo, hi in bounds))


# -- helpers ---------------------------------------------------------------


def _json_float(x: float):
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _as_point(theta: ArrayLike, dim: int) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(theta, dtype=float))
    if arr.ndim != 1 or arr.size != dim:
        raise RegionError(f"expected a point of dimension {dim}, got shape {arr.shape}")
    return arr


def _check_dims(a: ParameterRegion, b: ParameterRegion) -> None:
    if a.dim != b.dim:
        raise RegionError(f"dimension mismatch: {a.dim} vs {b.dim}")


# An elementary piece along one axis: ("pt", a, a) or ("gap", a, b), a < b.
_Piece = tuple[str, float, float]


def _pieces(breaks: Iterable[float]) -> list[_Piece]:
    pts = sorted({b for b in breaks if math.isfinite(b)})
    if not pts:
        return [("gap", -math.inf, math.inf)]
    out: list[_Piece] = [("gap", -math.inf, pts[0])]
    for i, p in enumerate(pts):
        out.append(("pt", p, p))
        nxt = pts[i + 1] if i + 1 < len(pts) else math.inf
        out.append(("gap", p, nxt))
    return out


def _piece_in(piece: _Piece, side: Interval) -> bool:
    kind, a, b = piece
    if side.is_empty():
        return False
    if kind == "pt":
        return side.contains_value(a)
    return side.lo <= a and side.hi >= b


def _cells(boxes: list[Box], dim: int):
    axes = []
    for k in range(dim):
        breaks = []
        for bx in boxes:
            breaks.extend((bx.sides[k].lo, bx.sides[k].hi))
        axes.append(_pieces(breaks))
    return itertools.product(*axes)


def _cell_in_box(cell, bx: Box) -> bool:
    return all(_piece_in(p, s) for p, s in zip(cell, bx.sides))


def _piece_interval(piece: _Piece) -> Interval:
    kind, a, b = piece
    if kind == "pt":
        return Interval(a, a)
    return Interval(a, b, False, False)


def _cell_box(cell) -> Box:
    return Box(tuple(_piece_interval(p) for p in cell))


def _merge_intervals(ivs: list[Interval]) -> list[Interval]:
    ivs = sorted((iv for iv in ivs if not iv.is_empty()), key=lambda iv: (iv.lo, not iv.lo_closed))
    merged: list[Interval] = []
    for iv in ivs:
        if merged:
            last = merged[-1]
            touches = iv.lo < last.hi or (iv.lo == last.hi and (last.hi_closed or iv.lo_closed))
            if touches:
                if iv.hi > last.hi:
                    hi, hi_c = iv.hi, iv.hi_closed
                elif iv.hi < last.hi:
                    hi, hi_c = last.hi, last.hi_closed
                else:
                    hi, hi_c = last.hi, last.hi_closed or iv.hi_closed
                merged[-1] = Interval(last.lo, hi, last.lo_closed, hi_c)
                continue
        merged.append(iv)
    return merged


def _simplify(boxes: list[Box], dim: int) -> ParameterRegion:
    boxes = [b for b in boxes if not b.is_empty()]
    if not boxes:
        return empty_region(dim)
    if dim == 1:
        ivs = _merge_intervals([b.sides[0] for b in boxes])
        if len(ivs) == 1:
            return ivs[0]
        return FiniteUnion(tuple(ivs))
    if len(boxes) == 1:
        return boxes[0]
    return FiniteUnion(tuple(boxes))
