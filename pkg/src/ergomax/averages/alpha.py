"""
Maximum ergodic average alpha(phi) as the maximum mean cycle of the recoded graph.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ergomax.core.errors import GraphTooLargeError
from ergomax.symbolic.graph import (
    WeightedDigraph,
    cyclic_components,
    enumerate_simple_cycles,
    make_cycle,
    relax_potentials,
    tight_cycle,
)

logger = logging.getLogger("ergomax.averages")

BRUTE_FORCE_MAX_VERTICES = 12


class AlphaMethod(str, Enum):
    KARP = "karp"
    BRUTE_FORCE = "brute_force"


@dataclass(frozen=True)
class AlphaResult:
    value: float
    witness_cycle: tuple[int, ...]
    method: AlphaMethod

    def witness_mean(self, graph: WeightedDigraph) -> float:
        return make_cycle(graph, self.witness_cycle).mean

    def witness_labels(self, graph: WeightedDigraph) -> list[str]:
        return [graph.label(v) for v in self.witness_cycle]


def karp_component_value(graph: WeightedDigraph, component: list[int]) -> float:
    """
    Karp's recurrence on one strongly connected component:
    max over v of min over k < m of (D_m(v) - D_k(v)) / (m - k), where D_k(v)
    is the heaviest k-edge walk ending at v (weight taken at edge sources).
    """
    local = {v: i for i, v in enumerate(component)}
    pairs = [(local[u], local[v]) for u in component for v in graph.successors[u] if v in local]
    src = np.array([p[0] for p in pairs], dtype=int)
    dst = np.array([p[1] for p in pairs], dtype=int)
    w = graph.weight_array[component]
    m = len(component)

    D = np.full((m + 1, m), -np.inf)
    D[0] = 0.0
    for k in range(1, m + 1):
        np.maximum.at(D[k], dst, D[k - 1][src] + w[src])

    best = -np.inf
    ks = np.arange(m)
    for v in range(m):
        if not np.isfinite(D[m, v]):
            continue
        finite = np.isfinite(D[:m, v])
        ratios = (D[m, v] - D[:m, v][finite]) / (m - ks[finite])
        best = max(best, float(ratios.min()))
    return best


def max_cycle_mean(graph: WeightedDigraph) -> float:
    """alpha(phi) without a witness."""
    components = cyclic_components(graph)
    value = max(karp_component_value(graph, comp) for comp in components)
    logger.debug("karp over %d cyclic components: %r", len(components), value)
    return value


def alpha_karp(graph: WeightedDigraph, tight_tol: float = 1e-9) -> AlphaResult:
    """
    alpha(phi) by Karp per cyclic component, then the lexicographically smallest
    cycle among the edges left tight by the longest-path potentials at alpha.
    """
    value = max_cycle_mean(graph)

    psi = relax_potentials(graph, value)
    scale = 1.0 + float(np.max(np.abs(graph.weight_array)))
    witness = tight_cycle(graph, psi, value, tight_tol * scale)
    return AlphaResult(value=value, witness_cycle=witness, method=AlphaMethod.KARP)


def alpha_bruteforce(graph: WeightedDigraph, max_vertices: int = BRUTE_FORCE_MAX_VERTICES) -> AlphaResult:
    """Max mean over every simple cycle; first (lexicographically smallest) on ties."""
    if graph.size > max_vertices:
        raise GraphTooLargeError(
            f"Brute-force enumeration refuses graphs above {max_vertices} vertices (got {graph.size})"
        )
    cycles = enumerate_simple_cycles(graph, graph.size)
    best = cycles[0]
    for cycle in cycles[1:]:
        if cycle.mean > best.mean:
            best = cycle
    return AlphaResult(value=best.mean, witness_cycle=best.vertices, method=AlphaMethod.BRUTE_FORCE)


def compute_alpha(graph: WeightedDigraph, method: AlphaMethod | str = AlphaMethod.KARP) -> AlphaResult:
    method = AlphaMethod(method)
    if method is AlphaMethod.BRUTE_FORCE:
        return alpha_bruteforce(graph)
    return alpha_karp(graph)
