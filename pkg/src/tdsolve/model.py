"""Compile one decision instance (graph, node count m, width bound w)
into engine variables and propagators, and decode solved instances.

Variables per instance: one set variable per decomposition node, parent
and depth integers per node, one 0/1 location variable per (edge, node)
pair, and one shared-vertices set variable per unordered node pair
(aliased for both orders). Symmetry breaking channels each node to a
row of 0/1 variables and orders the rows lexicographically: every
consecutive pair for free-form trees, first against last for
path-shaped instances (whose only node symmetry is reversal).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import propagators as props
from .engine import IntVar, SetVar, Solver
from .graphs import Graph, TreeDecomposition


class Variant(Enum):
    TREE = "tree"
    PATH = "path"


@dataclass
class ModelInstance:
    g: Graph
    m: int
    w: int
    variant: Variant
    solver: Solver
    node_sets: list[SetVar]
    parents: list[IntVar]
    depths: list[IntVar]
    locations: list[IntVar]  # flattened, edge-major then node index
    location_index: dict[tuple[int, int, int], IntVar]  # (u, v, k) with u < v
    intersections: dict[tuple[int, int], SetVar]  # keyed (i, j) with i < j
    bits: list[list[IntVar]] | None
    decision_vars: list[IntVar]

    def intersection(self, i: int, j: int) -> SetVar:
        """Shared-vertices variable for nodes i and j, either order."""
        if i == j:
            raise ValueError("a node has no intersection variable with itself")
        return self.intersections[(i, j) if i < j else (j, i)]

    def location(self, u: int, v: int, k: int) -> IntVar:
        """Location variable of edge (u, v) in node k, either orientation."""
        return self.location_index[(u, v, k) if u < v else (v, u, k)]


def build_model(
    g: Graph,
    m: int,
    w: int,
    variant: Variant = Variant.TREE,
    symmetry_breaking: bool = True,
) -> ModelInstance:
    """Create all variables and post all constraints for one instance.

    Asks: does g have a decomposition with exactly m nodes, each of
    cardinality at most w (a path-shaped one for the PATH variant)?
    Decision variables are the parent variables followed by the
    flattened location variables.
    """
    if m < 1:
        raise ValueError(f"node count must be positive, got {m}")
    if w < 1:
        raise ValueError(f"width bound must be positive, got {w}")
    if g.n < 1:
        raise ValueError("the graph must have at least one vertex")

    solver = Solver()
    node_sets = [solver.set_var(g.n, f"node{i}") for i in range(m)]
    parents = [solver.int_var(0, m - 1, f"parent{i}") for i in range(m)]
    depths = [solver.int_var(0, m - 1, f"depth{i}") for i in range(m)]

    for x in node_sets:
        solver.post(props.CardinalityAtMost(x, w))
    solver.post(props.UnionEquals(node_sets, (1 << g.n) - 1))

    intersections: dict[tuple[int, int], SetVar] = {}
    for i in range(m):
        for j in range(i + 1, m):
            shared = solver.set_var(g.n, f"shared{i}_{j}")
            intersections[(i, j)] = shared
            solver.post(props.IntersectionOf(shared, node_sets[i], node_sets[j]))

    solver.post(props.FixValue(parents[0], 0))
    solver.post(props.FixValue(depths[0], 0))
    for i in range(1, m):
        solver.post(props.ForbidValue(parents[i], i))
        solver.post(props.ParentDepth(i, parents[i], depths))

    locations: list[IntVar] = []
    location_index: dict[tuple[int, int, int], IntVar] = {}
    for u, v in g.edges:
        row = []
        for k in range(m):
            bit = solver.int_var(0, 1, f"loc{u}_{v}_{k}")
            row.append(bit)
            locations.append(bit)
            location_index[(u, v, k)] = bit
            solver.post(props.EdgeInNode(bit, u, v, node_sets[k]))
        solver.post(props.AtLeastOne(row))

    for i in range(m):
        for k in range(m):
            if i == k:
                continue
            shared = intersections[(i, k) if i < k else (k, i)]
            solver.post(
                props.RunningIntersection(depths[i], depths[k], shared, parents[k], node_sets)
            )

    bits = None
    if symmetry_breaking and m > 1:
        bits = [
            [solver.int_var(0, 1, f"bit{i}_{v}") for v in range(g.n)] for i in range(m)
        ]
        for i in range(m):
            solver.post(props.SetBitsChannel(node_sets[i], bits[i]))
        if variant is Variant.TREE:
            for i in range(m - 1):
                solver.post(props.LexLeq(bits[i], bits[i + 1]))
        else:
            # Nodes on a path cannot be reordered freely, only reversed,
            # so ordering consecutive rows would cut real solutions.
            # Break the reversal symmetry alone.
            solver.post(props.LexLeq(bits[0], bits[m - 1]))

    if variant is Variant.PATH:
        for i in range(1, m):
            solver.post(props.FixValue(parents[i], i - 1))

    return ModelInstance(
        g=g,
        m=m,
        w=w,
        variant=variant,
        solver=solver,
        node_sets=node_sets,
        parents=parents,
        depths=depths,
        locations=locations,
        location_index=location_index,
        intersections=intersections,
        bits=bits,
        decision_vars=parents + locations,
    )


def extract_decomposition(mi: ModelInstance, witness: dict) -> TreeDecomposition:
    """Read a SAT assignment back into a TreeDecomposition."""
    try:
        nodes = tuple(witness[x] for x in mi.node_sets)
        parent = tuple(witness[p] for p in mi.parents)
        depth = tuple(witness[d] for d in mi.depths)
    except KeyError as exc:
        raise RuntimeError(f"witness is missing a variable: {exc}") from None
    return TreeDecomposition(nodes=nodes, parent=parent, depth=depth)
