"""Firebreak placement on mixed graphs: risk evaluation, optimal cuts, hardness gadgets."""

from .exact import Solution, decide, solve_exhaustive, solve_profile
from .graph import (
    CutSystem,
    Edge,
    GraphError,
    Instance,
    MixedGraph,
    Vertex,
    ancestors,
    build_graph,
    close_cut,
    cut_cost,
    is_closed,
    normalize_windy,
    reachable_set,
    remove_cut,
    total_value,
)
from .numeric import FLOAT, RATIONAL, ModeError
from .risk import (
    RiskError,
    RiskResult,
    burn_probability,
    exact_risk,
    ignition_probability,
    loss,
    mc_risk,
    naive_risk,
    risk,
    spread_probability,
    windy_risk,
)
from .tree import TreeError, TreeInstance, TreeSolution, solve_tree, table_st, verify_solution

__version__ = "0.1.0"

__all__ = [
    "CutSystem", "Edge", "FLOAT", "GraphError", "Instance", "MixedGraph", "ModeError",
    "RATIONAL", "RiskError", "RiskResult", "Solution", "TreeError", "TreeInstance",
    "TreeSolution", "Vertex", "ancestors", "build_graph", "burn_probability", "close_cut",
    "cut_cost", "decide", "exact_risk", "ignition_probability", "is_closed", "loss",
    "mc_risk", "naive_risk", "normalize_windy", "reachable_set", "remove_cut", "risk",
    "solve_exhaustive", "solve_profile", "solve_tree", "spread_probability", "table_st",
    "total_value", "verify_solution", "windy_risk",
]
