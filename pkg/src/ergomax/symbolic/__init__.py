from ergomax.symbolic.system import (
    LocallyConstantPotential,
    SubshiftSystem,
    load_system,
    parse_system,
    subsystem,
)
from ergomax.symbolic.graph import (
    Cycle,
    WeightedDigraph,
    edge_graph,
    enumerate_simple_cycles,
    relax_potentials,
    trim_and_recode,
)
from ergomax.symbolic.points import (
    EventuallyPeriodicPoint,
    InvalidPointError,
    birkhoff_sum,
    parse_point,
    shift,
)

__all__ = [
    "LocallyConstantPotential",
    "SubshiftSystem",
    "load_system",
    "parse_system",
    "subsystem",
    "Cycle",
    "WeightedDigraph",
    "edge_graph",
    "enumerate_simple_cycles",
    "relax_potentials",
    "trim_and_recode",
    "EventuallyPeriodicPoint",
    "InvalidPointError",
    "birkhoff_sum",
    "parse_point",
    "shift",
]
