from __future__ import annotations

import enum
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar, Sequence, Set

import numpy as np

from ergomax.core.errors import ParseError
from ergomax.symbolic.graph import WeightedDigraph, trim_and_recode
from ergomax.symbolic.system import SubshiftSystem


class PressureKind(str, enum.Enum):
    SPECTRAL = "spectral"
    SUP_NORM = "sup_norm"
    MAX_ERGODIC = "max_ergodic"


class PressureAxiom(str, enum.Enum):
    MONOTONICITY = "C1"
    TRANSLATION = "C2"
    CONVEXITY = "C3"
    COHOMOLOGY = "C4"
    LIPSCHITZ = "lipschitz"


@dataclass(frozen=True, eq=False)
class PotentialVector:
    """
    A potential on the recoded graph: one value per vertex (depth 1) or per
    edge in ``graph.edges`` order (depth 2).
    """

    depth: int
    values: np.ndarray

    def __post_init__(self):
        if self.depth not in (1, 2):
            raise ParseError(f"PotentialVector depth must be 1 or 2, got {self.depth}")
        values = np.array(self.values, dtype=float).reshape(-1)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def on_vertices(cls, graph: WeightedDigraph, values: Sequence[float]) -> "PotentialVector":
        pv = cls(1, np.asarray(values, dtype=float))
        pv.check(graph)
        return pv

    @classmethod
    def on_edges(cls, graph: WeightedDigraph, values: Sequence[float]) -> "PotentialVector":
        pv = cls(2, np.asarray(values, dtype=float))
        pv.check(graph)
        return pv

    @classmethod
    def constant(cls, graph: WeightedDigraph, c: float, depth: int = 1) -> "PotentialVector":
        size = graph.size if depth == 1 else len(graph.edges)
        return cls(depth, np.full(size, float(c)))

    @classmethod
    def of_graph(cls, graph: WeightedDigraph) -> "PotentialVector":
        """The system's own potential, read off the vertex weights."""
        return cls(1, graph.weight_array)

    def check(self, graph: WeightedDigraph) -> None:
        expected = graph.size if self.depth == 1 else len(graph.edges)
        if self.values.shape != (expected,):
            what = "vertices" if self.depth == 1 else "edges"
            raise ParseError(f"Depth-{self.depth} potential needs {expected} values (one per {what}), got {self.values.size}")

    def lift(self, graph: WeightedDigraph) -> "PotentialVector":
        """Depth-2 copy: phi(u, v) = phi(u)."""
        if self.depth == 2:
            return self
        return PotentialVector(2, np.array([self.values[u] for u, _ in graph.edges]))

    def max(self) -> float:
        return float(self.values.max())

    def _combine(self, other, op) -> "PotentialVector":
        if isinstance(other, PotentialVector):
            if other.depth != self.depth or other.values.shape != self.values.shape:
                raise ParseError("Cannot combine potentials of different depth or size; lift first")
            return PotentialVector(self.depth, op(self.values, other.values))
        return PotentialVector(self.depth, op(self.values, float(other)))

    def __add__(self, other):
        return self._combine(other, np.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, scalar: float):
        return PotentialVector(self.depth, self.values * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return PotentialVector(self.depth, -self.values)

    def minimum(self, other: "PotentialVector") -> "PotentialVector":
        return self._combine(other, np.minimum)

    def maximum(self, other: "PotentialVector") -> "PotentialVector":
        return self._combine(other, np.maximum)


class PressureEvaluation(ABC):
    """Base interface for pressure functions Gamma on one system."""

    kind: ClassVar[PressureKind]

    def __init__(self, system: SubshiftSystem, tol: float = 1e-12):
        self.system = system
        self.graph = trim_and_recode(system)
        self.tol = tol  # accuracy of iterative evaluations, relative

    @property
    def axioms(self) -> Set[PressureAxiom]:
        """Axioms this instance is expected to satisfy."""
        return {
            PressureAxiom.MONOTONICITY,
            PressureAxiom.TRANSLATION,
            PressureAxiom.CONVEXITY,
            PressureAxiom.LIPSCHITZ,
        }

    def evaluate(self, phi: PotentialVector) -> float:
        phi.check(self.graph)
        return self._evaluate(phi)

    def __call__(self, phi: PotentialVector) -> float:
        return self.evaluate(phi)

    @abstractmethod
    def _evaluate(self, phi: PotentialVector) -> float:
        pass

    def system_potential(self) -> PotentialVector:
        return PotentialVector.of_graph(self.graph)
