"""
Markov measures on the recoded graph and their entropy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy import stats

from ergomax.core.errors import DegenerateInputError, ParseError
from ergomax.symbolic.graph import WeightedDigraph

from .base import PotentialVector


@dataclass(frozen=True, eq=False)
class MarkovMeasure:
    stationary: np.ndarray
    transitions: np.ndarray

    def stationarity_residual(self) -> float:
        return float(np.abs(self.stationary @ self.transitions - self.stationary).max())

    def validate(self, graph: WeightedDigraph, tol: float = 1e-10) -> None:
        n = graph.size
        if self.stationary.shape != (n,) or self.transitions.shape != (n, n):
            raise ParseError(f"Markov measure must be sized for {n} vertices")
        if np.any(self.transitions < 0) or np.any(self.stationary < 0):
            raise ParseError("Markov measure has negative entries")
        if np.abs(self.transitions.sum(axis=1) - 1.0).max() > tol:
            raise ParseError("Transition rows must sum to 1")
        if abs(self.stationary.sum() - 1.0) > tol:
            raise ParseError("Stationary vector must sum to 1")
        forbidden = (graph.adjacency() == 0) & (self.transitions > 0)
        if forbidden.any():
            u, v = map(int, np.argwhere(forbidden)[0])
            raise ParseError(f"Transition {graph.label(u)} -> {graph.label(v)} is not allowed")
        if self.stationarity_residual() > tol:
            raise ParseError(f"Vector is not stationary (residual {self.stationarity_residual():.3g})")


def stationary_distribution(transitions: np.ndarray) -> np.ndarray:
    """Solve pi P = pi with sum(pi) = 1 by least squares."""
    n = transitions.shape[0]
    lhs = np.vstack([transitions.T - np.eye(n), np.ones((1, n))])
    rhs = np.zeros(n + 1)
    rhs[-1] = 1.0
    pi, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
    pi = np.clip(pi, 0.0, None)
    return pi / pi.sum()


def markov_measure_from_transitions(graph: WeightedDigraph, transitions: ArrayLike) -> MarkovMeasure:
    P = np.asarray(transitions, dtype=float)
    if P.shape != (graph.size, graph.size):
        raise ParseError(f"Transition matrix must be {graph.size}x{graph.size}, got {P.shape}")
    row_sums = P.sum(axis=1)
    if np.any(row_sums <= 0):
        raise DegenerateInputError("Every vertex needs an outgoing transition")
    P = P / row_sums[:, None]
    measure = MarkovMeasure(stationary_distribution(P), P)
    measure.validate(graph)
    return measure


def random_markov_measure(graph: WeightedDigraph, rng: np.random.Generator) -> MarkovMeasure:
    """Dirichlet(1, ..., 1) rows over each vertex's successors."""
    P = np.zeros((graph.size, graph.size))
    for u, succ in enumerate(graph.successors):
        P[u, list(succ)] = rng.dirichlet(np.ones(len(succ)))
    return MarkovMeasure(stationary_distribution(P), P)


def bernoulli_measure(graph: WeightedDigraph, probabilities: ArrayLike) -> MarkovMeasure:
    """i.i.d. symbols on a depth-1 full shift: every row equals ``probabilities``."""
    p = np.asarray(probabilities, dtype=float)
    if p.shape != (graph.size,):
        raise ParseError(f"Need {graph.size} probabilities, got {p.size}")
    return markov_measure_from_transitions(graph, np.tile(p, (graph.size, 1)))


def markov_entropy(mu: MarkovMeasure) -> float:
    """-sum_u pi(u) sum_v P(u,v) log P(u,v), with 0 log 0 = 0."""
    return float(sum(pi * stats.entropy(row) for pi, row in zip(mu.stationary, mu.transitions) if pi > 0))


def edge_occupation(graph: WeightedDigraph, mu: MarkovMeasure) -> np.ndarray:
    """nu(u, v) = pi(u) P(u, v) in ``graph.edges`` order."""
    return np.array([mu.stationary[u] * mu.transitions[u, v] for u, v in graph.edges])


def pairing(graph: WeightedDigraph, phi: PotentialVector, mu: MarkovMeasure) -> float:
    """Integral of phi against mu through the edge occupation."""
    return float(phi.lift(graph).values @ edge_occupation(graph, mu))
