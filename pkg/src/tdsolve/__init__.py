"""Exact treewidth and pathwidth for small graphs, with witnesses.

A decision instance (graph, node count, width bound) is compiled into a
constraint model over set and integer variables and solved by a small
propagation engine; a lockstep schedule of such instances yields the
exact treewidth or pathwidth together with a validated decomposition.
Brute-force oracles and an independent validator certify the answers.
"""

from .driver import (
    ScheduleStep,
    SearchLimitExceeded,
    WidthResult,
    decide,
    max_nodes_bound,
    pathwidth,
    treewidth,
)
from .engine import SolveReport, Solver, Status, Strategy
from .graphio import ParseError, export_dot, parse_edge_list, parse_gr, parse_td, write_td
from .graphs import Graph, TreeDecomposition, oriented_at_zero, rooted_at
from .model import ModelInstance, Variant, build_model, extract_decomposition
from .oracle import (
    OracleResult,
    brute_pathwidth,
    brute_treewidth,
    decomposition_from_order,
    elimination_width,
)
from .validator import Violation, ViolationKind, validate

__all__ = [
    "Graph",
    "TreeDecomposition",
    "oriented_at_zero",
    "rooted_at",
    "ParseError",
    "parse_gr",
    "parse_edge_list",
    "parse_td",
    "write_td",
    "export_dot",
    "Violation",
    "ViolationKind",
    "validate",
    "Solver",
    "SolveReport",
    "Status",
    "Strategy",
    "ModelInstance",
    "Variant",
    "build_model",
    "extract_decomposition",
    "ScheduleStep",
    "SearchLimitExceeded",
    "WidthResult",
    "decide",
    "treewidth",
    "pathwidth",
    "max_nodes_bound",
    "OracleResult",
    "elimination_width",
    "decomposition_from_order",
    "brute_treewidth",
    "brute_pathwidth",
]
