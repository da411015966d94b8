import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ergomax.averages import alpha_karp
from ergomax.core.errors import ParseError
from ergomax.dual import (
    coboundary_pairing,
    dual_objective,
    invariance_defect,
    solve_subaction,
    verify_duality,
)
from ergomax.pressure import edge_occupation, random_markov_measure
from ergomax.symbolic import trim_and_recode
from ergomax.symbolic.catalog import full_shift, three_point_system

THREE_POINT = trim_and_recode(three_point_system(0.25))


def test_three_point_subaction():
    solution = solve_subaction(THREE_POINT)
    assert solution.dual_value == pytest.approx(0.5)
    assert solution.psi == pytest.approx([0.5, 0.0, 0.0])
    assert solution.slack == pytest.approx([0.0, 0.0, 0.25])
    assert solution.tight_edges(THREE_POINT) == [(0, 1), (1, 0)]
    assert solution.coboundary(THREE_POINT) == pytest.approx([0.5, -0.5, 0.0])


def test_three_point_duality_report():
    report = verify_duality(THREE_POINT)
    assert report.passed()
    assert report.gap == pytest.approx(0.0, abs=1e-12)
    assert report.violation == 0.0
    assert report.tight_cycle == (0, 1)
    assert report.tight_cycle_mean == pytest.approx(0.5)


def test_dual_objective():
    assert dual_objective(THREE_POINT, [0.5, 0.0, 0.0]) == pytest.approx(0.5)
    assert dual_objective(THREE_POINT, np.zeros(3)) == pytest.approx(1.0)
    with pytest.raises(ParseError):
        dual_objective(THREE_POINT, [0.0, 0.0])


@settings(max_examples=100)
@given(st.lists(st.floats(-10, 10), min_size=3, max_size=3))
def test_weak_duality(psi):
    assert dual_objective(THREE_POINT, psi) >= 0.5 - 1e-12


def test_strong_duality_on_random_systems(system_factory):
    for n_symbols in (2, 3, 4, 5, 6):
        for _ in range(5):
            graph = trim_and_recode(system_factory(n_symbols))
            solution = solve_subaction(graph)
            report = verify_duality(graph)
            assert report.passed(1e-9)
            assert solution.psi.min() == 0.0
            assert solution.slack.min() >= -1e-9
            assert report.tight_cycle_mean == pytest.approx(alpha_karp(graph).value, abs=1e-10)


def test_depth_two_duality():
    values = {("0", "0"): 0.3, ("0", "1"): 1.0, ("1", "0"): -1.0, ("1", "1"): 0.1}
    graph = trim_and_recode(full_shift(2, values, depth=2))
    report = verify_duality(graph)
    assert report.passed()
    assert report.alpha == pytest.approx(0.3)


def test_invariance_defect():
    assert invariance_defect(THREE_POINT, [0.5, 0.5, 0.0]) == pytest.approx([0.0, 0.0, 0.0])
    assert invariance_defect(THREE_POINT, [0.0, 0.0, 1.0]) == pytest.approx([0.0, 1.0, -1.0])
    with pytest.raises(ParseError):
        invariance_defect(THREE_POINT, [1.0])


def test_coboundaries_integrate_to_zero(system_factory, rng):
    for _ in range(5):
        graph = trim_and_recode(system_factory(4, irreducible=True))
        occupation = edge_occupation(graph, random_markov_measure(graph, rng))
        assert np.abs(invariance_defect(graph, occupation)).max() < 1e-10
        psi = rng.uniform(-1.0, 1.0, graph.size)
        assert coboundary_pairing(graph, psi, occupation) == pytest.approx(0.0, abs=1e-10)
