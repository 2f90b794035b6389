"""Parser for the hypothesis mini-grammar used on the command line."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

from .regions import HalfSpace, Interval, ParameterRegion

GRAMMAR = (
    "hypothesis grammar: NAME OP VALUE with OP in {>=, >, <=, <, =}, "
    "or VALUE1 <= NAME <= VALUE2 (either '<=' may be '<'); "
    "NAME is 'theta' (normal), 'mu_a-mu_b' (two-sample) or 'g' (gravity)"
)

COORDINATES = {
    "normal": ("theta",),
    "two-sample": ("mu_a-mu_b", "delta"),
    "gravity": ("g",),
}

_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?|[-+]?inf"
_NAME = r"[A-Za-z_][A-Za-z0-9_]*(?:\s*-\s*[A-Za-z_][A-Za-z0-9_]*)?"
_SIMPLE = re.compile(rf"^\s*(?P<name>{_NAME})\s*(?P<op>>=|<=|==|=|>|<)\s*(?P<val>{_NUM})\s*$")
_RANGE = re.compile(rf"^\s*(?P<lo>{_NUM})\s*(?P<op1><=|<)\s*(?P<name>{_NAME})\s*(?P<op2><=|<)\s*(?P<hi>{_NUM})\s*$")


class HypothesisSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class ParsedHypothesis:
    text: str
    name: str
    region: ParameterRegion
    point: Optional[float] = None

    @property
    def is_point(self) -> bool:
        return self.point is not None


def _norm_name(name: str) -> str:
    return re.sub(r"\s+", "", name)


def parse_hypothesis(text: str, model: Optional[str] = None) -> ParsedHypothesis:
    """Parse e.g. ``theta>=0``, ``g=9.8``, ``-1<=theta<=1`` into a 1-D region."""
    m = _SIMPLE.match(text)
    if m:
        name, op, val = _norm_name(m["name"]), m["op"], float(m["val"])
        if op in ("=", "=="):
            if not math.isfinite(val):
                raise HypothesisSyntaxError(f"{text!r}: point hypotheses need a finite value. {GRAMMAR}")
            parsed = ParsedHypothesis(text, name, Interval(val, val), val)
        else:
            parsed = ParsedHypothesis(text, name, HalfSpace(0, op, val, 1))
    else:
        m = _RANGE.match(text)
        if not m:
            raise HypothesisSyntaxError(f"cannot parse hypothesis {text!r}. {GRAMMAR}")
        lo, hi = float(m["lo"]), float(m["hi"])
        if lo > hi:
            raise HypothesisSyntaxError(f"{text!r}: lower bound exceeds upper bound. {GRAMMAR}")
        name = _norm_name(m["name"])
        parsed = ParsedHypothesis(text, name, Interval(lo, hi, m["op1"] == "<=", m["op2"] == "<="))
    if model is not None:
        allowed = COORDINATES.get(model)
        if allowed is None:
            raise HypothesisSyntaxError(f"unknown model {model!r}")
        if parsed.name not in allowed:
            raise HypothesisSyntaxError(
                f"{text!r}: model {model!r} tests {allowed[0]!r}, not {parsed.name!r}. {GRAMMAR}")
    return parsed
