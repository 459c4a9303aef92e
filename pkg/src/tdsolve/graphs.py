"""Core data types: simple undirected graphs and rooted tree decompositions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Edges are normalized: stored once as (u, v) with u < v, sorted
    ascending, no self-loops, no duplicates. ``adjacency[v]`` is the
    neighbor set of v. Build instances with :meth:`from_edges`.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a normalized graph; raises ValueError on bad endpoints."""
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        normalized = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            normalized.add((u, v) if u < v else (v, u))
        adj = [set() for _ in range(n)]
        for u, v in normalized:
            adj[u].add(v)
            adj[v].add(u)
        return cls(
            n=n,
            edges=tuple(sorted(normalized)),
            adjacency=tuple(frozenset(s) for s in adj),
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


@dataclass(frozen=True)
class TreeDecomposition:
    """Rooted tree of vertex sets, in parent-pointer form.

    Node 0 is the root: ``parent[0] == 0`` and ``depth[0] == 0``. For a
    well-formed decomposition every other node's parent pointer leads to
    the root with ``depth[i] == depth[parent[i]] + 1``. The constructor
    does not enforce this (the validator module checks it); use
    :meth:`from_parents` to build a shape-checked instance.
    """

    nodes: tuple[frozenset[int], ...]
    parent: tuple[int, ...]
    depth: tuple[int, ...]

    @property
    def m(self) -> int:
        """Number of nodes."""
        return len(self.nodes)

    @property
    def width(self) -> int:
        """Cardinality of the largest node."""
        return max(len(b) for b in self.nodes)

    def tree_edges(self) -> list[tuple[int, int]]:
        """Edges (parent[i], i) for every non-root node i."""
        return [(self.parent[i], i) for i in range(1, len(self.nodes))]

    @classmethod
    def from_parents(
        cls, nodes: Iterable[Iterable[int]], parent: Iterable[int]
    ) -> "TreeDecomposition":
        """Build from node contents and parent pointers, computing depths.

        Raises ValueError if the parent array is not a tree rooted at
        node 0.
        """
        node_sets = tuple(frozenset(b) for b in nodes)
        parents = tuple(parent)
        m = len(node_sets)
        if m == 0:
            raise ValueError("a decomposition needs at least one node")
        if len(parents) != m:
            raise ValueError(f"{m} nodes but {len(parents)} parent pointers")
        if parents[0] != 0:
            raise ValueError("node 0 must be the root (parent[0] == 0)")
        depth = [0] * m
        for i in range(1, m):
            hops = 0
            j = i
            while j != 0:
                p = parents[j]
                if not (0 <= p < m) or p == j:
                    raise ValueError(f"node {j} has invalid parent {p}")
                j = p
                hops += 1
                if hops > m:
                    raise ValueError(f"parent pointers cycle at node {i}")
            depth[i] = hops
        return cls(nodes=node_sets, parent=parents, depth=tuple(depth))


def oriented_at_zero(
    nodes: Iterable[Iterable[int]],
    tree_edges: Iterable[tuple[int, int]],
) -> TreeDecomposition:
    """Orient an undirected node tree into parent-pointer form, keeping
    node indices and rooting at node 0.

    Raises ValueError if the edges do not form a tree spanning all
    nodes.
    """
    node_sets = [frozenset(b) for b in nodes]
    m = len(node_sets)
    if m == 0:
        raise ValueError("a decomposition needs at least one node")
    adj = [[] for _ in range(m)]
    count = 0
    for a, b in tree_edges:
        if not (0 <= a < m and 0 <= b < m) or a == b:
            raise ValueError(f"bad tree edge ({a}, {b})")
        adj[a].append(b)
        adj[b].append(a)
        count += 1
    if count != m - 1:
        raise ValueError(f"{m} nodes need {m - 1} tree edges, got {count}")

    parent = [0] * m
    depth = [0] * m
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if b not in seen:
                seen.add(b)
                parent[b] = a
                depth[b] = depth[a] + 1
                queue.append(b)
    if len(seen) != m:
        raise ValueError("tree edges do not connect all nodes")
    return TreeDecomposition(tuple(node_sets), tuple(parent), tuple(depth))


def rooted_at(
    nodes: Iterable[Iterable[int]],
    tree_edges: Iterable[tuple[int, int]],
    root: int,
) -> TreeDecomposition:
    """Like :func:`oriented_at_zero` but rooted at an arbitrary node,
    which swaps indices with node 0. All other indices are kept."""
    node_sets = [frozenset(b) for b in nodes]
    m = len(node_sets)
    if not (0 <= root < m):
        raise ValueError(f"root {root} out of range")
    if root == 0:
        return oriented_at_zero(node_sets, tree_edges)

    def swap(i: int) -> int:
        return {0: root, root: 0}.get(i, i)

    swapped_nodes = [node_sets[swap(i)] for i in range(m)]
    swapped_edges = [(swap(a), swap(b)) for a, b in tree_edges]
    return oriented_at_zero(swapped_nodes, swapped_edges)
