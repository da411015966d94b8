"""
Exact extrema over n of time averages S_n phi(x) / n for eventually periodic points.

Past the preperiod, S_n(x) = L n + c_r with L the period mean and c_r depending
only on the residue r of n modulo the period. Along one residue class the
average is L + c_r t with t = 1/n, and for a finite set of points the maximum
of such lines is convex in t. The infimum over a class therefore sits next to
the continuous minimiser in t, or is the limit as t -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from ergomax.core.errors import DegenerateInputError, ParseError
from ergomax.symbolic.graph import Cycle, WeightedDigraph, enumerate_simple_cycles
from ergomax.symbolic.points import EventuallyPeriodicPoint, weight_sequence
from ergomax.symbolic.system import SubshiftSystem


@dataclass(frozen=True)
class WeightProfile:
    """phi(T^i x) split into the preperiod part and one period."""

    prefix: tuple[float, ...]
    period: tuple[float, ...]

    @classmethod
    def of_point(cls, point: EventuallyPeriodicPoint, system: SubshiftSystem) -> "WeightProfile":
        point.validate(system)
        n0 = len(point.preperiod)
        ws = weight_sequence(point, system, n0 + len(point.period))
        return cls(tuple(ws[:n0]), tuple(ws[n0:]))

    @classmethod
    def of_cycle(cls, graph: WeightedDigraph, rotation: Sequence[int]) -> "WeightProfile":
        return cls((), tuple(graph.weights[v] for v in rotation))

    @cached_property
    def period_sum(self) -> float:
        return math.fsum(self.period)

    @property
    def limit(self) -> float:
        return self.period_sum / len(self.period)

    @property
    def scale(self) -> float:
        return max(abs(x) for x in self.prefix + self.period)

    def total(self, n: int) -> float:
        n0 = len(self.prefix)
        if n <= n0:
            return math.fsum(self.prefix[:n])
        q, r = divmod(n - n0, len(self.period))
        return math.fsum(self.prefix) + q * self.period_sum + math.fsum(self.period[:r])

    def negated(self) -> "WeightProfile":
        return WeightProfile(tuple(-x for x in self.prefix), tuple(-x for x in self.period))


@dataclass(frozen=True)
class Extremum:
    value: float
    attained_at: Optional[int]


def inf_of_max(profiles: Sequence[WeightProfile]) -> Extremum:
    """inf over n >= 1 of max over profiles of S_n / n, exactly."""
    if not profiles:
        raise DegenerateInputError("Need at least one point")

    start = max(max(len(p.prefix) for p in profiles), 1)
    period = math.lcm(*(len(p.period) for p in profiles))
    eps = 8 * np.finfo(float).eps * (1.0 + max(p.scale for p in profiles))

    def value_at(n: int) -> float:
        return max(p.total(n) / n for p in profiles)

    candidates: list[tuple[float, Optional[int]]] = [(value_at(n), n) for n in range(1, start)]

    for rho in range(period):
        base = start + rho
        pieces = [(p.limit, p.total(base) - p.limit * base) for p in profiles]

        def g(t: float) -> float:
            return max(L + c * t for L, c in pieces)

        t0 = 1.0 / base
        knots = {0.0, t0}
        for (l1, c1), (l2, c2) in combinations(pieces, 2):
            if c1 != c2:
                t = (l2 - l1) / (c1 - c2)
                if 0.0 < t < t0:
                    knots.add(t)
        g_min = min(g(t) for t in knots)

        steps = {0}
        for t in knots:
            if t > 0.0 and g(t) <= g_min + eps:
                j = (1.0 / t - base) / period
                steps.update({max(0, math.floor(j)), max(0, math.ceil(j))})
        candidates.extend((value_at(base + j * period), base + j * period) for j in steps)

    limit = max(p.limit for p in profiles)
    best = min(min(v for v, _ in candidates), limit)
    attained = [n for v, n in candidates if v <= best + eps]
    if attained:
        n = min(attained)
        return Extremum(value_at(n), n)
    return Extremum(limit, None)


def sup_of_single(profile: WeightProfile) -> Extremum:
    neg = inf_of_max([profile.negated()])
    return Extremum(-neg.value, neg.attained_at)


@dataclass(frozen=True)
class TimeAverageProfile:
    point: EventuallyPeriodicPoint
    inf_over_n: float
    inf_attained_at: Optional[int]
    liminf: float
    limsup: float
    sup_over_n: float
    sup_attained_at: Optional[int]


def exact_inf_time_average(point: EventuallyPeriodicPoint, system: SubshiftSystem) -> TimeAverageProfile:
    profile = WeightProfile.of_point(point, system)
    low = inf_of_max([profile])
    high = sup_of_single(profile)
    return TimeAverageProfile(
        point=point,
        inf_over_n=low.value,
        inf_attained_at=low.attained_at,
        liminf=profile.limit,
        limsup=profile.limit,
        sup_over_n=high.value,
        sup_attained_at=high.attained_at,
    )


def time_average_series(point: EventuallyPeriodicPoint, system: SubshiftSystem, N: int) -> list[float]:
    """S_n phi(x) / n for n = 1..N."""
    if N < 1:
        raise ParseError(f"N must be >= 1, got {N}")
    profile = WeightProfile.of_point(point, system)
    return [profile.total(n) / n for n in range(1, N + 1)]


def exact_inf_of_sup(points: Sequence[EventuallyPeriodicPoint], system: SubshiftSystem) -> Extremum:
    """inf over n of max over a finite point set of S_n phi / n."""
    return inf_of_max([WeightProfile.of_point(p, system) for p in points])


def best_rotation(graph: WeightedDigraph, cycle: Cycle) -> tuple[tuple[int, ...], float]:
    """Rotation with the largest inf over n; equals the cycle mean."""
    scored = [(inf_of_max([WeightProfile.of_cycle(graph, r)]).value, r) for r in cycle.rotations()]
    value, rotation = max(scored, key=lambda s: s[0])
    return rotation, value


def _cycles_or_raise(graph: WeightedDigraph, max_cycle_len: int) -> list[Cycle]:
    cycles = enumerate_simple_cycles(graph, max_cycle_len)
    if not cycles:
        raise DegenerateInputError(f"No simple cycle of length <= {max_cycle_len}")
    return cycles


def sup_inf_over_periodic(graph: WeightedDigraph, max_cycle_len: int) -> float:
    """max over simple-cycle rotations of inf_n S_n phi / n."""
    return max(best_rotation(graph, c)[1] for c in _cycles_or_raise(graph, max_cycle_len))


@dataclass(frozen=True)
class ExtremeDiagnostics:
    sup_sup: float
    inf_inf: float


def supsup_infinf_diagnostics(graph: WeightedDigraph, max_cycle_len: int) -> ExtremeDiagnostics:
    sup_sup = -math.inf
    inf_inf = math.inf
    for cycle in _cycles_or_raise(graph, max_cycle_len):
        for rotation in cycle.rotations():
            profile = WeightProfile.of_cycle(graph, rotation)
            inf_inf = min(inf_inf, inf_of_max([profile]).value)
            sup_sup = max(sup_sup, sup_of_single(profile).value)
    return ExtremeDiagnostics(sup_sup=sup_sup, inf_inf=inf_inf)
