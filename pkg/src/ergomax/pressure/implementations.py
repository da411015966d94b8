from typing import Optional

from ergomax.averages.alpha import max_cycle_mean
from ergomax.symbolic.graph import WeightedDigraph, edge_graph, trim_and_recode
from ergomax.symbolic.system import SubshiftSystem

from .base import PotentialVector, PressureAxiom, PressureEvaluation, PressureKind
from .markov import MarkovMeasure
from .spectral import (
    POWER_MAX_ITER,
    gibbs_chain_on_graph,
    require_irreducible,
    spectral_pressure_on_graph,
)


def spectral_pressure(system: SubshiftSystem, phi: Optional[PotentialVector] = None, tol: float = 1e-12) -> float:
    """log of the Perron root of the weighted transfer matrix (system potential if phi is None)."""
    graph = trim_and_recode(system)
    phi = phi if phi is not None else PotentialVector.of_graph(graph)
    return spectral_pressure_on_graph(graph, phi, tol)


def gibbs_chain(system: SubshiftSystem, phi: Optional[PotentialVector] = None, tol: float = 1e-12) -> MarkovMeasure:
    graph = trim_and_recode(system)
    phi = phi if phi is not None else PotentialVector.of_graph(graph)
    return gibbs_chain_on_graph(graph, phi, tol)


def parry_measure(system: SubshiftSystem) -> MarkovMeasure:
    """Measure of maximal entropy: the Gibbs chain of phi = 0."""
    graph = trim_and_recode(system)
    return gibbs_chain_on_graph(graph, PotentialVector.constant(graph, 0.0))


def sup_pressure(phi: PotentialVector) -> float:
    """sup_x phi(x): the largest value over allowed words."""
    return phi.max()


def max_ergodic_pressure(graph: WeightedDigraph, phi: PotentialVector) -> float:
    """alpha(phi); edge potentials go through the next higher block recoding."""
    phi.check(graph)
    if phi.depth == 1:
        return max_cycle_mean(graph.with_weights(phi.values))
    return max_cycle_mean(edge_graph(graph, phi.values))


class SpectralPressure(PressureEvaluation):
    kind = PressureKind.SPECTRAL

    def __init__(self, system: SubshiftSystem, tol: float = 1e-12, max_iter: int = POWER_MAX_ITER):
        super().__init__(system, tol)
        require_irreducible(self.graph)
        self.max_iter = max_iter

    @property
    def axioms(self) -> set[PressureAxiom]:
        return super().axioms | {PressureAxiom.COHOMOLOGY}

    def _evaluate(self, phi: PotentialVector) -> float:
        return spectral_pressure_on_graph(self.graph, phi, self.tol, self.max_iter)


class SupNormPressure(PressureEvaluation):
    """Satisfies C1-C3 but not cohomology invariance."""

    kind = PressureKind.SUP_NORM

    def _evaluate(self, phi: PotentialVector) -> float:
        return sup_pressure(phi)


class MaxErgodicPressure(PressureEvaluation):
    kind = PressureKind.MAX_ERGODIC

    @property
    def axioms(self) -> set[PressureAxiom]:
        return super().axioms | {PressureAxiom.COHOMOLOGY}

    def _evaluate(self, phi: PotentialVector) -> float:
        return max_ergodic_pressure(self.graph, phi)
