"""Named systems used by the CLI, the smoke script and the tests."""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

from ergomax.symbolic.points import EventuallyPeriodicPoint
from ergomax.symbolic.system import LocallyConstantPotential, SubshiftSystem, Word


def full_shift(n_symbols: int = 2, values: Optional[Mapping[Word, float]] = None, depth: int = 1) -> SubshiftSystem:
    symbols = tuple(str(i) for i in range(n_symbols))
    transition = tuple(tuple(1 for _ in symbols) for _ in symbols)
    return SubshiftSystem(symbols, transition, LocallyConstantPotential(depth, values or {}))


def golden_mean_shift(values: Optional[Mapping[Word, float]] = None, depth: int = 1) -> SubshiftSystem:
    """No two consecutive 1s."""
    return SubshiftSystem(("0", "1"), ((1, 1), (1, 0)), LocallyConstantPotential(depth, values or {}))


def three_point_system(a: float) -> SubshiftSystem:
    """
    Alphabet {0, 1, a} with 0 -> 1, 1 -> 0, a -> 1, phi = (0, 1, a).
    Exactly three points: (10)^inf, (01)^inf and a(10)^inf.
    """
    return SubshiftSystem(
        ("0", "1", "a"),
        ((0, 1, 0), (1, 0, 0), (0, 1, 0)),
        LocallyConstantPotential(1, {("1",): 1.0, ("a",): float(a)}),
    )


THREE_POINTS: Sequence[EventuallyPeriodicPoint] = (
    EventuallyPeriodicPoint((), ("1", "0")),
    EventuallyPeriodicPoint((), ("0", "1")),
    EventuallyPeriodicPoint(("a",), ("1", "0")),
)


BUILTIN_SYSTEMS = {
    "full2": lambda: full_shift(2),
    "golden": golden_mean_shift,
    "three-point": lambda: three_point_system(0.25),
}
