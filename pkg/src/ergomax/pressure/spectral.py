"""
Perron roots and Gibbs chains of the weighted transfer matrix

    M(u, v) = [u -> v allowed] * exp(phi(u))       depth-1 potentials
    M(u, v) = [u -> v allowed] * exp(phi(u, v))    depth-2 potentials
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ergomax.core.errors import ConvergenceError, ReducibleSystemError
from ergomax.symbolic.graph import WeightedDigraph, is_irreducible

from .base import PotentialVector
from .markov import MarkovMeasure, edge_occupation

logger = logging.getLogger("ergomax.pressure")

POWER_MAX_ITER = 100_000


@dataclass(frozen=True, eq=False)
class PerronResult:
    root: float
    vector: np.ndarray
    iterations: int


def weighted_matrix(graph: WeightedDigraph, phi: PotentialVector) -> tuple[np.ndarray, float]:
    """M scaled so its largest entry is 1, and the log of the scale."""
    phi.check(graph)
    edge_phi = phi.lift(graph).values
    shift = float(edge_phi.max())
    M = np.zeros((graph.size, graph.size))
    for (u, v), value in zip(graph.edges, edge_phi):
        M[u, v] = math.exp(value - shift)
    return M, shift


def perron(
    M: np.ndarray,
    tol: float = 1e-12,
    max_iter: int = POWER_MAX_ITER,
    start: Optional[np.ndarray] = None,
) -> PerronResult:
    """
    Power iteration on M + s I with s the current Collatz-Wielandt upper bound,
    so periodic matrices converge too. Stops when the bracket
    [min (Mx)/x, max (Mx)/x] is narrower than tol * upper.
    """
    n = M.shape[0]
    x = np.full(n, 1.0 / n) if start is None else np.asarray(start, dtype=float) / np.sum(start)
    upper = lower = float("nan")
    for it in range(1, max_iter + 1):
        y = M @ x
        ratios = y / x
        lower, upper = float(ratios.min()), float(ratios.max())
        if upper - lower <= tol * upper:
            return PerronResult(root=0.5 * (lower + upper), vector=x, iterations=it)
        x = y + upper * x
        x /= x.sum()
    raise ConvergenceError(
        f"Power iteration did not converge in {max_iter} iterations",
        iterations=max_iter,
        residual=(upper - lower) / upper,
    )


def require_irreducible(graph: WeightedDigraph) -> None:
    if not is_irreducible(graph):
        raise ReducibleSystemError(
            "Spectral pressure needs a strongly connected recoded graph; this system is reducible"
        )


@dataclass(frozen=True, eq=False)
class GibbsState:
    log_root: float
    right: np.ndarray
    left: np.ndarray
    chain: MarkovMeasure
    occupation: np.ndarray  # per edge


def gibbs_state(
    graph: WeightedDigraph,
    phi: PotentialVector,
    tol: float = 1e-12,
    max_iter: int = POWER_MAX_ITER,
    warm: Optional[GibbsState] = None,
) -> GibbsState:
    M, shift = weighted_matrix(graph, phi)
    right = perron(M, tol, max_iter, None if warm is None else warm.right)
    left = perron(M.T, tol, max_iter, None if warm is None else warm.left)
    r, l, lam = right.vector, left.vector, right.root

    P = M * r[None, :] / (lam * r[:, None])
    P /= P.sum(axis=1, keepdims=True)
    pi = l * r
    chain = MarkovMeasure(pi / pi.sum(), P)
    logger.debug("gibbs state after %d/%d power steps", right.iterations, left.iterations)
    return GibbsState(
        log_root=math.log(lam) + shift,
        right=r,
        left=l,
        chain=chain,
        occupation=edge_occupation(graph, chain),
    )


def spectral_pressure_on_graph(
    graph: WeightedDigraph,
    phi: PotentialVector,
    tol: float = 1e-12,
    max_iter: int = POWER_MAX_ITER,
) -> float:
    require_irreducible(graph)
    M, shift = weighted_matrix(graph, phi)
    return math.log(perron(M, tol, max_iter).root) + shift


def gibbs_chain_on_graph(graph: WeightedDigraph, phi: PotentialVector, tol: float = 1e-12) -> MarkovMeasure:
    require_irreducible(graph)
    return gibbs_state(graph, phi, tol).chain
