from pathlib import Path

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ergomax.core.errors import ConvergenceError, EmptySubshiftError, ParseError
from ergomax.symbolic import (
    EventuallyPeriodicPoint,
    InvalidPointError,
    LocallyConstantPotential,
    SubshiftSystem,
    birkhoff_sum,
    edge_graph,
    enumerate_simple_cycles,
    load_system,
    parse_point,
    parse_system,
    relax_potentials,
    shift,
    subsystem,
    trim_and_recode,
)
from ergomax.symbolic.catalog import full_shift, golden_mean_shift, three_point_system
from ergomax.symbolic.points import walk_of
from ergomax.symbolic.system import dump_system

DATA = Path(__file__).resolve().parent.parent / "data"


def test_load_three_point_document():
    system = load_system(DATA / "three_point.json")
    assert system.symbols == ("0", "1", "a")
    assert system.potential.value_of(("a",)) == 0.25
    assert system.potential.value_of(("0",)) == 0.0
    assert system.allows("a", "1")
    assert not system.allows("1", "1")


def test_dump_then_parse_keeps_the_system():
    system = load_system(DATA / "full2.json")
    again = parse_system(dump_system(system))
    assert again.symbols == system.symbols
    assert again.transition == system.transition
    assert dict(again.potential.values) == dict(system.potential.values)


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        '{"symbols": ["0"], "transition": [[1]], "extra": 1}',
        '{"symbols": ["0", "0"], "transition": [[1, 1], [1, 1]]}',
        '{"symbols": ["0", "1"], "transition": [[1, 1]]}',
        '{"symbols": ["0", "1"], "transition": [[1, 2], [1, 1]]}',
        '{"symbols": ["0"], "transition": [[1]], "potential": {"values": [{"word": ["x"], "value": 1}]}}',
        '{"symbols": ["0", "1"], "transition": [[1, 1], [1, 0]],'
        ' "potential": {"depth": 2, "values": [{"word": ["1", "1"], "value": 1}]}}',
        '{"symbols": ["0"], "transition": [[1]],'
        ' "potential": {"values": [{"word": ["0"], "value": 1}, {"word": ["0"], "value": 2}]}}',
    ],
)
def test_malformed_documents(text):
    with pytest.raises(ParseError):
        parse_system(text)


def test_potential_on_trimmed_word_is_rejected():
    text = (
        '{"symbols": ["0", "1", "2"], "transition": [[1, 1, 0], [0, 0, 1], [0, 0, 0]],'
        ' "potential": {"values": [{"word": ["2"], "value": 1.0}]}}'
    )
    with pytest.raises(ParseError, match="trimming"):
        parse_system(text)


def test_empty_subshift():
    system = SubshiftSystem(("0", "1"), ((0, 1), (0, 0)), LocallyConstantPotential(1))
    with pytest.raises(EmptySubshiftError):
        trim_and_recode(system)


def test_trimming_removes_dead_ends():
    system = SubshiftSystem(("0", "1", "2"), ((1, 1, 0), (0, 0, 1), (0, 0, 0)), LocallyConstantPotential(1))
    graph = trim_and_recode(system)
    assert graph.vertices == (("0",),)
    assert graph.successors == ((0,),)


def test_three_point_graph_keeps_transient_vertex():
    graph = trim_and_recode(three_point_system(0.25))
    assert [graph.label(v) for v in range(graph.size)] == ["0", "1", "a"]
    assert graph.weights == (0.0, 1.0, 0.25)
    assert graph.edges == ((0, 1), (1, 0), (2, 1))


def test_depth_two_recoding_of_golden_mean():
    values = {("0", "0"): 1.0, ("0", "1"): 2.0, ("1", "0"): 3.0}
    graph = trim_and_recode(golden_mean_shift(values, depth=2))
    assert [graph.label(v) for v in range(graph.size)] == ["00", "01", "10"]
    assert graph.weights == (1.0, 2.0, 3.0)
    assert graph.edges == ((0, 0), (0, 1), (1, 2), (2, 0), (2, 1))


def test_edge_graph_carries_edge_values():
    graph = trim_and_recode(golden_mean_shift())
    lifted = edge_graph(graph, [0.1, 0.2, 0.3])
    assert lifted.size == len(graph.edges)
    assert lifted.weights == (0.1, 0.2, 0.3)
    with pytest.raises(ParseError):
        edge_graph(graph, [1.0])


def test_simple_cycles_are_canonical():
    graph = trim_and_recode(golden_mean_shift())
    cycles = enumerate_simple_cycles(graph, graph.size)
    assert [c.vertices for c in cycles] == [(0,), (0, 1)]
    assert [c.vertices for c in enumerate_simple_cycles(trim_and_recode(full_shift(3)), 3)][:3] == [
        (0,),
        (0, 1),
        (0, 1, 2),
    ]


def test_simple_cycles_agree_with_networkx(system_factory):
    for n_symbols in (2, 3, 4, 5, 6, 7, 8) * 4:
        graph = trim_and_recode(system_factory(n_symbols, density=0.35))
        ours = {c.vertices for c in enumerate_simple_cycles(graph, graph.size)}
        theirs = set()
        for cycle in nx.simple_cycles(graph.to_networkx()):
            start = cycle.index(min(cycle))
            theirs.add(tuple(cycle[start:] + cycle[:start]))
        assert ours == theirs


def test_relaxation_below_max_cycle_mean_fails():
    graph = trim_and_recode(golden_mean_shift({("1",): 1.0}))
    psi = relax_potentials(graph, 0.5)
    assert psi.min() >= 0.0
    with pytest.raises(ConvergenceError):
        relax_potentials(graph, 0.0)


@pytest.mark.parametrize("depth", [1, 2])
def test_trimming_is_idempotent(system_factory, depth):
    for n_symbols in (3, 4, 5, 6) * 5:
        system = system_factory(n_symbols, depth=depth)
        graph = trim_and_recode(system)
        alive = {s for word in graph.vertices for s in word}
        again = trim_and_recode(subsystem(system, alive))
        assert again.vertices == graph.vertices
        assert again.successors == graph.successors
        assert again.weights == graph.weights


def test_subsystem_drops_symbols_and_their_values():
    sub = subsystem(three_point_system(0.25), ["0", "1"])
    assert sub.symbols == ("0", "1")
    assert sub.transition == ((0, 1), (1, 0))
    assert dict(sub.potential.values) == {("1",): 1.0}


@pytest.mark.parametrize(
    "text, pre, period",
    [("a|1,0", ("a",), ("1", "0")), ("|0", (), ("0",)), (" 0 , 1 | 1 ", ("0", "1"), ("1",))],
)
def test_parse_point(text, pre, period):
    point = parse_point(text)
    assert point.preperiod == pre
    assert point.period == period


@pytest.mark.parametrize("text", ["1,0", "a||1", "|", "a|1,,0"])
def test_parse_point_rejects(text):
    with pytest.raises(ParseError):
        parse_point(text)


def test_point_validation_against_system():
    golden = golden_mean_shift()
    with pytest.raises(InvalidPointError):
        parse_point("|1", golden)
    with pytest.raises(InvalidPointError):
        parse_point("|2", golden)
    assert parse_point("|0,1", golden).period == ("0", "1")


def test_shift_and_birkhoff_sum():
    system = three_point_system(0.25)
    x = EventuallyPeriodicPoint(("a",), ("1", "0"))
    assert shift(x) == EventuallyPeriodicPoint((), ("1", "0"))
    assert shift(shift(x)) == EventuallyPeriodicPoint((), ("0", "1"))
    assert birkhoff_sum(x, 3, system) == pytest.approx(1.25)
    with pytest.raises(ParseError):
        birkhoff_sum(x, 0, system)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(1, 12), m=st.integers(1, 12), a=st.floats(-3, 3))
def test_birkhoff_cocycle(n, m, a):
    system = three_point_system(a)
    x = EventuallyPeriodicPoint(("a",), ("1", "0"))
    y = x
    for _ in range(n):
        y = shift(y)
    total = birkhoff_sum(x, n + m, system)
    assert total == pytest.approx(birkhoff_sum(x, n, system) + birkhoff_sum(y, m, system), abs=1e-12)


def test_golden_mean_document_matches_catalog():
    system = load_system(DATA / "golden_mean.json")
    assert system.transition == golden_mean_shift().transition
    assert trim_and_recode(system).weights == (0.0, 0.0)


def test_walk_of_point_carries_the_birkhoff_sum():
    system = three_point_system(0.25)
    graph = trim_and_recode(system)
    point = parse_point("a|1,0", system)
    walk = walk_of(point, graph, 4)
    assert walk == [2, 1, 0, 1]
    assert sum(graph.weights[v] for v in walk) == pytest.approx(birkhoff_sum(point, 4, system))
    with pytest.raises(InvalidPointError):
        walk_of(EventuallyPeriodicPoint((), ("b",)), graph, 2)
