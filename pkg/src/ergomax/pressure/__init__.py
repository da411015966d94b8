from .base import PotentialVector, PressureAxiom, PressureEvaluation, PressureKind
from .registry import registry
from .implementations import (
    MaxErgodicPressure,
    SpectralPressure,
    SupNormPressure,
    gibbs_chain,
    max_ergodic_pressure,
    parry_measure,
    spectral_pressure,
    sup_pressure,
)
from .markov import (
    MarkovMeasure,
    bernoulli_measure,
    edge_occupation,
    markov_entropy,
    markov_measure_from_transitions,
    pairing,
    random_markov_measure,
)
from .variational import (
    axiom_check,
    entropy_upper_envelope,
    entropy_via_vp2,
    in_A_Gamma,
    random_potential_pairs,
    vp1_check,
)


def _initialize_registry():
    """Register the built-in pressure functions."""
    registry.register(PressureKind.SPECTRAL, SpectralPressure)
    registry.register(PressureKind.SUP_NORM, SupNormPressure)
    registry.register(PressureKind.MAX_ERGODIC, MaxErgodicPressure)


# Initialize automatically when imported
_initialize_registry()

__all__ = [
    "PotentialVector",
    "PressureAxiom",
    "PressureEvaluation",
    "PressureKind",
    "registry",
    "MaxErgodicPressure",
    "SpectralPressure",
    "SupNormPressure",
    "gibbs_chain",
    "max_ergodic_pressure",
    "parry_measure",
    "spectral_pressure",
    "sup_pressure",
    "MarkovMeasure",
    "bernoulli_measure",
    "edge_occupation",
    "markov_entropy",
    "markov_measure_from_transitions",
    "pairing",
    "random_markov_measure",
    "axiom_check",
    "entropy_upper_envelope",
    "entropy_via_vp2",
    "in_A_Gamma",
    "random_potential_pairs",
    "vp1_check",
]
