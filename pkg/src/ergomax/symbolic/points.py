"""
Eventually periodic points: preperiod word followed by a repeated period word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ergomax.core.errors import ParseError
from ergomax.symbolic.graph import WeightedDigraph
from ergomax.symbolic.system import SubshiftSystem, Word


class InvalidPointError(ParseError):
    """Point uses unknown symbols or a forbidden transition."""


@dataclass(frozen=True)
class EventuallyPeriodicPoint:
    preperiod: Word
    period: Word

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise InvalidPointError("Period word must be nonempty")

    def __str__(self) -> str:
        return ",".join(self.preperiod) + "|" + ",".join(self.period)

    def symbol_at(self, i: int) -> str:
        n0 = len(self.preperiod)
        if i < n0:
            return self.preperiod[i]
        return self.period[(i - n0) % len(self.period)]

    def symbols(self, n: int) -> Word:
        """First n symbols of the sequence."""
        return tuple(self.symbol_at(i) for i in range(n))

    def validate(self, system: SubshiftSystem) -> None:
        word = self.preperiod + self.period + self.period
        unknown = sorted({s for s in word if s not in system.index})
        if unknown:
            raise InvalidPointError(f"Point {self} uses unknown symbols {unknown}")
        if not system.is_allowed_word(word):
            raise InvalidPointError(f"Point {self} uses a forbidden transition")


def parse_point(text: str, system: SubshiftSystem | None = None) -> EventuallyPeriodicPoint:
    """Parse ``"pre|period"`` with comma-separated symbols, e.g. ``"a|1,0"``."""
    if text.count("|") != 1:
        raise ParseError(f"Point '{text}' must look like 'pre|period' (exactly one '|')")
    pre_text, period_text = text.split("|")

    def split(part: str) -> Word:
        part = part.strip()
        if not part:
            return ()
        items = tuple(s.strip() for s in part.split(","))
        if any(not s for s in items):
            raise ParseError(f"Point '{text}' has an empty symbol")
        return items

    point = EventuallyPeriodicPoint(split(pre_text), split(period_text))
    if system is not None:
        point.validate(system)
    return point


def shift(point: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
    if point.preperiod:
        return EventuallyPeriodicPoint(point.preperiod[1:], point.period)
    return EventuallyPeriodicPoint((), point.period[1:] + point.period[:1])


def weight_sequence(point: EventuallyPeriodicPoint, system: SubshiftSystem, count: int) -> list[float]:
    """phi(T^i x) for i < count."""
    k = system.depth
    syms = point.symbols(count + k - 1)
    return [system.potential.value_of(syms[i:i + k]) for i in range(count)]


def birkhoff_sum(point: EventuallyPeriodicPoint, n: int, system: SubshiftSystem) -> float:
    """S_n phi(x) = phi(x) + phi(Tx) + ... + phi(T^{n-1} x)."""
    if n < 1:
        raise ParseError(f"n must be >= 1, got {n}")
    point.validate(system)
    return math.fsum(weight_sequence(point, system, n))


def walk_of(point: EventuallyPeriodicPoint, graph: WeightedDigraph, n: int) -> list[int]:
    """Vertices visited by the first n windows of the point."""
    k = len(graph.vertices[0])
    syms = point.symbols(n + k - 1)
    index = graph.vertex_index
    try:
        return [index[syms[i:i + k]] for i in range(n)]
    except KeyError as e:
        raise InvalidPointError(f"Point {point} leaves the recoded graph at window {e}") from None
