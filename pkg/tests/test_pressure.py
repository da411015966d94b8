import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ergomax.core.errors import DegenerateInputError, DomainViolationError, ParseError, ReducibleSystemError
from ergomax.pressure import (
    PotentialVector,
    PressureAxiom,
    PressureEvaluation,
    PressureKind,
    SpectralPressure,
    axiom_check,
    bernoulli_measure,
    entropy_upper_envelope,
    entropy_via_vp2,
    gibbs_chain,
    in_A_Gamma,
    markov_entropy,
    markov_measure_from_transitions,
    pairing,
    parry_measure,
    random_markov_measure,
    random_potential_pairs,
    registry,
    spectral_pressure,
    vp1_check,
)
from ergomax.symbolic import subsystem, trim_and_recode
from ergomax.symbolic.catalog import full_shift, golden_mean_shift, three_point_system

GOLDEN_LOG = math.log((1 + math.sqrt(5)) / 2)


class MinPressure(PressureEvaluation):
    """min over vertices: monotone and translation-equivariant, but concave."""

    kind = PressureKind.SUP_NORM

    @property
    def axioms(self):
        return {PressureAxiom.MONOTONICITY, PressureAxiom.TRANSLATION, PressureAxiom.CONVEXITY}

    def _evaluate(self, phi):
        return float(phi.values.min())


# ─────────────────────────────────────────────────────────────────────────────
# POTENTIALS AND REGISTRY
# ─────────────────────────────────────────────────────────────────────────────

def test_potential_vector_shapes():
    graph = trim_and_recode(golden_mean_shift())
    phi = PotentialVector.on_vertices(graph, [1.0, 2.0])
    assert phi.lift(graph).values.tolist() == [1.0, 1.0, 2.0]
    assert (phi + 1.0).values.tolist() == [2.0, 3.0]
    assert (2 * phi - phi).values.tolist() == [1.0, 2.0]
    with pytest.raises(ParseError):
        PotentialVector.on_vertices(graph, [1.0])
    with pytest.raises(ParseError):
        PotentialVector(3, np.zeros(2))
    with pytest.raises(ParseError):
        phi + phi.lift(graph)


def test_registry_kinds():
    assert registry.list_kinds() == ["spectral", "sup_norm", "max_ergodic"]
    gamma = registry.create("spectral", full_shift(2), tol=1e-10)
    assert isinstance(gamma, SpectralPressure)
    assert gamma.tol == 1e-10
    with pytest.raises(ParseError):
        registry.create("entropy", full_shift(2))


def test_spectral_needs_irreducible_graph():
    with pytest.raises(ReducibleSystemError):
        registry.create("spectral", three_point_system(0.25))


# ─────────────────────────────────────────────────────────────────────────────
# VALUES
# ─────────────────────────────────────────────────────────────────────────────

@pytest.mark.parametrize(
    "system, expected",
    [
        (full_shift(2), math.log(2)),
        (full_shift(3), math.log(3)),
        (golden_mean_shift(), GOLDEN_LOG),
        (full_shift(2, {("0",): math.log(3)}), math.log(4)),
        (subsystem(three_point_system(0.25), ["0", "1"]), 0.5),
    ],
)
def test_spectral_closed_forms(system, expected):
    assert spectral_pressure(system) == pytest.approx(expected, abs=1e-11)


def test_other_kinds_on_system_potential():
    system = three_point_system(0.25)
    gamma = registry.create("max_ergodic", system)
    assert gamma(gamma.system_potential()) == pytest.approx(0.5)
    gamma = registry.create("sup_norm", system)
    assert gamma(gamma.system_potential()) == 1.0
    assert PressureAxiom.COHOMOLOGY not in gamma.axioms


@settings(max_examples=60, deadline=None)
@given(
    base=st.lists(st.floats(-3, 3), min_size=2, max_size=2),
    bump=st.lists(st.floats(0, 3), min_size=2, max_size=2),
)
def test_spectral_monotone(base, bump):
    gamma = registry.create("spectral", golden_mean_shift())
    low = PotentialVector.on_vertices(gamma.graph, base)
    high = low + PotentialVector.on_vertices(gamma.graph, bump)
    assert gamma(low) <= gamma(high) + 1e-10


# ─────────────────────────────────────────────────────────────────────────────
# AXIOMS
# ─────────────────────────────────────────────────────────────────────────────

@pytest.mark.parametrize("kind", ["spectral", "sup_norm", "max_ergodic"])
@pytest.mark.parametrize("depth", [1, 2])
def test_builtin_kinds_satisfy_their_axioms(kind, depth):
    gamma = registry.create(kind, golden_mean_shift({("1",): 0.4}))
    report = axiom_check(gamma, random_potential_pairs(gamma, 6, seed=3, depth=depth))
    assert report.passed, report.failures
    expected = {"C1", "C2", "C3", "lipschitz"} | ({"C4"} if kind != "sup_norm" else set())
    assert set(report.checked()) == expected


def test_axiom_check_reports_concave_functional():
    gamma = MinPressure(full_shift(3))
    report = axiom_check(gamma, random_potential_pairs(gamma, 5, seed=1))
    assert not report.passed
    assert {o.axiom for o in report.failures} == {PressureAxiom.CONVEXITY}


def test_axiom_check_needs_two_pairs():
    gamma = registry.create("sup_norm", full_shift(2))
    with pytest.raises(DegenerateInputError):
        axiom_check(gamma, random_potential_pairs(gamma, 1))


def test_random_pairs_sizes():
    gamma = registry.create("sup_norm", golden_mean_shift())
    (phi, psi), = random_potential_pairs(gamma, 1, depth=2)
    assert phi.values.shape == psi.values.shape == (3,)


# ─────────────────────────────────────────────────────────────────────────────
# MEASURES AND ENTROPY
# ─────────────────────────────────────────────────────────────────────────────

def test_parry_entropy():
    assert markov_entropy(parry_measure(full_shift(2))) == pytest.approx(math.log(2))
    assert markov_entropy(parry_measure(golden_mean_shift())) == pytest.approx(GOLDEN_LOG)


def test_bernoulli_entropy_and_pairing():
    graph = trim_and_recode(full_shift(2))
    mu = bernoulli_measure(graph, [0.3, 0.7])
    assert markov_entropy(mu) == pytest.approx(0.6108643020548935, abs=1e-12)
    assert mu.stationary == pytest.approx([0.3, 0.7])
    assert pairing(graph, PotentialVector.on_vertices(graph, [0.0, 1.0]), mu) == pytest.approx(0.7)


def test_measure_validation():
    graph = trim_and_recode(golden_mean_shift())
    with pytest.raises(ParseError):
        markov_measure_from_transitions(graph, [[0.5, 0.5], [0.5, 0.5]])
    with pytest.raises(DegenerateInputError):
        markov_measure_from_transitions(graph, [[0.5, 0.5], [0.0, 0.0]])


def test_gibbs_chain_of_zero_is_uniform():
    chain = gibbs_chain(full_shift(2), PotentialVector(1, np.zeros(2)))
    assert chain.stationary == pytest.approx([0.5, 0.5])
    assert chain.transitions == pytest.approx(np.full((2, 2), 0.5))


def test_vp1_on_golden_mean():
    gamma = registry.create("spectral", golden_mean_shift({("1",): 0.7}))
    report = vp1_check(gamma, samples=30, seed=2)
    assert report.passed()
    assert report.lhs == pytest.approx(report.rhs, abs=1e-9)


def test_vp1_on_random_irreducible_systems(system_factory):
    for n_symbols in (2, 3, 4):
        gamma = registry.create("spectral", system_factory(n_symbols, irreducible=True))
        assert vp1_check(gamma, samples=10).passed()


def test_vp1_needs_spectral():
    gamma = registry.create("sup_norm", full_shift(2))
    with pytest.raises(DomainViolationError):
        vp1_check(gamma)


def test_vp2_recovers_bernoulli_entropy():
    gamma = registry.create("spectral", full_shift(2))
    target = bernoulli_measure(gamma.graph, [0.3, 0.7])
    result = entropy_via_vp2(gamma, target)
    assert result.value == pytest.approx(0.6108643020548935, abs=1e-5)
    assert not result.boundary


def test_vp2_on_a_periodic_orbit():
    gamma = registry.create("spectral", subsystem(three_point_system(0.25), ["0", "1"]))
    target = markov_measure_from_transitions(gamma.graph, [[0.0, 1.0], [1.0, 0.0]])
    result = entropy_via_vp2(gamma, target)
    assert result.value == pytest.approx(0.0, abs=1e-10)
    assert result.iterations == 0


def test_vp2_on_a_golden_mean_chain():
    gamma = registry.create("spectral", golden_mean_shift())
    target = markov_measure_from_transitions(gamma.graph, [[0.6, 0.4], [1.0, 0.0]])
    expected = (1 / 1.4) * -(0.6 * math.log(0.6) + 0.4 * math.log(0.4))
    assert markov_entropy(target) == pytest.approx(expected, abs=1e-12)
    assert entropy_via_vp2(gamma, target).value == pytest.approx(expected, abs=1e-5)


def test_vp2_value_is_a_lower_envelope(system_factory):
    rng = np.random.default_rng(8)
    gamma = registry.create("spectral", system_factory(4, density=0.5, irreducible=True))
    graph = gamma.graph
    target = random_markov_measure(graph, rng)
    value = entropy_via_vp2(gamma, target).value
    for _ in range(200):
        phi = PotentialVector(2, rng.normal(scale=2.0, size=len(graph.edges)))
        assert gamma(phi) - pairing(graph, phi, target) >= value - 1e-9


def test_entropy_upper_envelope_and_A_gamma():
    gamma = registry.create("spectral", golden_mean_shift())
    graph = gamma.graph
    target = parry_measure(golden_mean_shift())
    samples = [PotentialVector(1, np.zeros(graph.size))] + [
        phi for phi, _ in random_potential_pairs(gamma, 5, seed=4)
    ]
    assert entropy_upper_envelope(gamma, target, samples) == pytest.approx(GOLDEN_LOG, abs=1e-10)

    for phi in samples:
        assert in_A_Gamma(gamma, gamma(phi) - phi)
    assert not in_A_Gamma(gamma, PotentialVector.constant(graph, -1.0))
    with pytest.raises(DegenerateInputError):
        entropy_upper_envelope(gamma, target, [])
