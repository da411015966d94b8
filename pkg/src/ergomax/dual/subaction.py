"""
Coboundary dual of the maximum ergodic average.

    minimise t  subject to  w(u) + psi(u) - psi(v) <= t  for every edge (u, v)

The optimum is t = alpha. A feasible psi is the longest-path potential of the
reduced weights w(u) - alpha, which have no positive cycles.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from ergomax.averages.alpha import alpha_karp
from ergomax.core.errors import ParseError
from ergomax.symbolic.graph import (
    WeightedDigraph,
    edge_slacks,
    make_cycle,
    relax_potentials,
    tight_cycle,
)

logger = logging.getLogger("ergomax.dual")


@dataclass(frozen=True, eq=False)
class SubActionSolution:
    dual_value: float
    psi: np.ndarray
    slack: np.ndarray  # per edge, in graph.edges order

    def tight_edges(self, graph: WeightedDigraph, tol: float = 1e-9) -> list[tuple[int, int]]:
        return [e for e, s in zip(graph.edges, self.slack) if s <= tol]

    def coboundary(self, graph: WeightedDigraph) -> np.ndarray:
        """xi = psi - psi o T as edge values psi[src] - psi[dst]."""
        return np.array([self.psi[u] - self.psi[v] for u, v in graph.edges])


def solve_subaction(graph: WeightedDigraph) -> SubActionSolution:
    t = alpha_karp(graph).value
    psi = relax_potentials(graph, t)
    psi = psi - psi.min()
    slack = edge_slacks(graph, psi, t)
    logger.debug("sub-action at t=%r, min slack %r", t, float(slack.min()))
    return SubActionSolution(dual_value=t, psi=psi, slack=slack)


def dual_objective(graph: WeightedDigraph, psi: ArrayLike) -> float:
    """max over edges of w(u) + psi(u) - psi(v); never below alpha (weak duality)."""
    psi = np.asarray(psi, dtype=float)
    if psi.shape != (graph.size,):
        raise ParseError(f"psi must have {graph.size} entries, got shape {psi.shape}")
    return float(-edge_slacks(graph, psi, 0.0).min())


@dataclass(frozen=True)
class DualityReport:
    alpha: float
    dual_value: float
    gap: float
    violation: float
    tight_cycle: tuple[int, ...]
    tight_cycle_mean: float

    def passed(self, feasibility_tol: float = 1e-9) -> bool:
        return self.gap <= feasibility_tol and self.violation <= feasibility_tol


def verify_duality(graph: WeightedDigraph, feasibility_tol: float = 1e-9) -> DualityReport:
    alpha = alpha_karp(graph).value
    solution = solve_subaction(graph)
    cycle = tight_cycle(graph, solution.psi, solution.dual_value, feasibility_tol)
    return DualityReport(
        alpha=alpha,
        dual_value=solution.dual_value,
        gap=abs(solution.dual_value - alpha),
        violation=max(0.0, float(-solution.slack.min())),
        tight_cycle=cycle,
        tight_cycle_mean=make_cycle(graph, cycle).mean,
    )


def invariance_defect(graph: WeightedDigraph, occupation: ArrayLike) -> np.ndarray:
    """
    Inflow minus outflow per vertex of an edge occupation vector. Zero exactly
    when the occupation comes from an invariant measure.
    """
    nu = np.asarray(occupation, dtype=float)
    if nu.shape != (len(graph.edges),):
        raise ParseError(f"Occupation must have {len(graph.edges)} entries, got shape {nu.shape}")
    defect = np.zeros(graph.size)
    for (u, v), mass in zip(graph.edges, nu):
        defect[v] += mass
        defect[u] -= mass
    return defect


def coboundary_pairing(graph: WeightedDigraph, psi: ArrayLike, occupation: ArrayLike) -> float:
    """sum over edges of nu(u, v) (psi(u) - psi(v))."""
    psi = np.asarray(psi, dtype=float)
    nu = np.asarray(occupation, dtype=float)
    return float(sum(m * (psi[u] - psi[v]) for (u, v), m in zip(graph.edges, nu)))
