"""Simultaneous region-based tests and three-valued connectives.

Connectives follow strong Kleene semantics with "accept" read as true,
"reject" as false and "agnostic" as unknown.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .core import Decision, UsageError, decide_from_region
from .regions import ParameterRegion


class Op(str, Enum):
    NOT = "not"
    AND = "and"
    OR = "or"


_TRUTH = {Decision.ACCEPT: 1, Decision.AGNOSTIC: 0, Decision.REJECT: -1}
_FROM_TRUTH = {v: k for k, v in _TRUTH.items()}


def combine(op: Op | str, *verdicts: Decision) -> Decision:
    op = Op(op)
    arity = 1 if op is Op.NOT else 2
    if len(verdicts) != arity:
        raise UsageError(f"{op.value} takes {arity} verdict(s), got {len(verdicts)}")
    t = [_TRUTH[v] for v in verdicts]
    if op is Op.NOT:
        return _FROM_TRUTH[-t[0]]
    if op is Op.AND:
        return _FROM_TRUTH[min(t)]
    return _FROM_TRUTH[max(t)]


def not_(v: Decision) -> Decision:
    return combine(Op.NOT, v)


def and_(a: Decision, b: Decision) -> Decision:
    return combine(Op.AND, a, b)


def or_(a: Decision, b: Decision) -> Decision:
    return combine(Op.OR, a, b)


@dataclass(frozen=True)
class HypothesisSet:
    items: tuple[tuple[str, ParameterRegion], ...]

    def __post_init__(self) -> None:
        items = tuple(self.items)
        labels = [lbl for lbl, _ in items]
        if len(set(labels)) != len(labels):
            raise UsageError(f"hypothesis labels must be unique: {labels}")
        if len({h.dim for _, h in items}) > 1:
            raise UsageError("all hypotheses must share one dimension")
        object.__setattr__(self, "items", items)

    @classmethod
    def of(cls, hyps: Mapping[str, ParameterRegion] | Iterable[tuple[str, ParameterRegion]]) -> "HypothesisSet":
        pairs = hyps.items() if isinstance(hyps, Mapping) else hyps
        return cls(tuple(pairs))

    @property
    def labels(self) -> list[str]:
        return [lbl for lbl, _ in self.items]


@dataclass(frozen=True)
class TernaryVerdict:
    decisions: dict[str, Decision]
    region_used: ParameterRegion

    def __getitem__(self, label: str) -> Decision:
        return self.decisions[label]


def test_all(region: ParameterRegion, hyps: HypothesisSet) -> TernaryVerdict:
    """Decide every hypothesis against the same region estimate."""
    return TernaryVerdict({lbl: decide_from_region(region, h) for lbl, h in hyps.items}, region)


test_all.__test__ = False  # not a pytest test


@dataclass(frozen=True)
class PropositionCheck:
    """The test of ``(H1 & H2)^c`` computed two ways."""

    set_level: Decision
    shortcut: Decision

    @property
    def consistent(self) -> bool:
        return self.set_level is self.shortcut

    @property
    def sound(self) -> bool:
        """An assertive shortcut never contradicts the set-level answer."""
        return self.shortcut is Decision.AGNOSTIC or self.shortcut is self.set_level


def check_nand(region: ParameterRegion, h1: ParameterRegion, h2: ParameterRegion) -> PropositionCheck:
    direct = decide_from_region(region, h1.intersection(h2).complement())
    shortcut = not_(and_(decide_from_region(region, h1), decide_from_region(region, h2)))
    return PropositionCheck(direct, shortcut)


def is_monotone(region: ParameterRegion, smaller: ParameterRegion, larger: ParameterRegion) -> bool:
    """Coherence under inclusion ``smaller`` subset of ``larger``.

    Accepting ``smaller`` forces accepting ``larger``; rejecting ``larger``
    forces rejecting ``smaller``.
    """
    d_small = decide_from_region(region, smaller)
    d_large = decide_from_region(region, larger)
    if d_small is Decision.ACCEPT and d_large is not Decision.ACCEPT:
        return False
    if d_large is Decision.REJECT and d_small is not Decision.REJECT:
        return False
    return True
