"""Core immutable graph representation and structural queries.

Undirected edges are stored in one canonical orientation (min id first).
Unweighted graphs behave as if every edge had weight 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional

from .errors import EmptyGraph, NodeNotFound

QUERY_LABEL = "?"


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: Optional[int] = None

    def reversed(self) -> "Edge":
        return Edge(self.v, self.u, self.weight)

    def canonical(self, directed: bool) -> "Edge":
        """Canonical storage orientation: min id first for undirected edges."""
        if directed or self.u <= self.v:
            return self
        return self.reversed()

    def as_tuple(self) -> tuple:
        if self.weight is None:
            return (self.u, self.v)
        return (self.u, self.v, self.weight)


def _edge_key(e: Edge) -> tuple:
    return (e.u, e.v)


class OrderKind(Enum):
    RANDOM = "random"
    BFS = "bfs"
    DFS = "dfs"
    PAGERANK = "pr"
    PPR = "ppr"
    SHORTEST_PATH = "shortest_path"
    LONGEST_PATH = "longest_path"


MAIN_ORDERS = (
    OrderKind.RANDOM,
    OrderKind.BFS,
    OrderKind.DFS,
    OrderKind.PAGERANK,
    OrderKind.PPR,
)


class Graph:
    """An immutable (optionally weighted, optionally node-labeled) graph.

    Construction validates all structural invariants: no self loops, all
    endpoints known, no duplicate undirected edges, weights present on all
    edges or none, and at most one node labeled with the reserved "?".
    """

    __slots__ = ("directed", "nodes", "edges", "labels", "_adj", "_radj", "_weights")

    def __init__(
        self,
        directed: bool,
        nodes: Iterable[int],
        edges: Iterable[Edge | tuple],
        labels: Optional[Mapping[int, str]] = None,
    ):
        node_set = frozenset(int(n) for n in nodes)
        canon: dict[tuple, Optional[int]] = {}
        for raw in edges:
            e = raw if isinstance(raw, Edge) else Edge(*raw)
            if e.u == e.v:
                raise ValueError(f"self-loop on node {e.u}")
            if e.u not in node_set or e.v not in node_set:
                raise ValueError(f"edge ({e.u}, {e.v}) has an endpoint outside the node set")
            e = e.canonical(directed)
            key = _edge_key(e)
            if key in canon:
                if canon[key] != e.weight:
                    raise ValueError(f"conflicting duplicate edge {key}")
                continue
            canon[key] = e.weight
        weights = set(w is None for w in canon.values())
        if len(weights) > 1:
            raise ValueError("graph mixes weighted and unweighted edges")
        for w in canon.values():
            if w is not None and w <= 0:
                raise ValueError("edge weights must be positive integers")

        self.directed = bool(directed)
        self.nodes = node_set
        self.edges = frozenset(Edge(u, v, w) for (u, v), w in canon.items())

        if labels is not None:
            lbl = {int(k): str(v) for k, v in labels.items()}
            unknown = set(lbl) - node_set
            if unknown:
                raise ValueError(f"labels reference unknown nodes: {sorted(unknown)}")
            if sum(1 for v in lbl.values() if v == QUERY_LABEL) > 1:
                raise ValueError("at most one node may carry the query label '?'")
            self.labels = dict(sorted(lbl.items()))
        else:
            self.labels = None

        adj: dict[int, set[int]] = {n: set() for n in node_set}
        radj: dict[int, set[int]] = {n: set() for n in node_set}
        wmap: dict[tuple, Optional[int]] = {}
        for e in self.edges:
            adj[e.u].add(e.v)
            radj[e.v].add(e.u)
            wmap[(e.u, e.v)] = e.weight
            if not self.directed:
                adj[e.v].add(e.u)
                radj[e.u].add(e.v)
                wmap[(e.v, e.u)] = e.weight
        self._adj = adj
        self._radj = radj
        self._weights = wmap

    # -- structural queries -------------------------------------------------

    def neighbors(self, v: int) -> set[int]:
        """Adjacent nodes; out-neighbors for directed graphs."""
        if v not in self.nodes:
            raise NodeNotFound(f"node {v} not in graph")
        return set(self._adj[v])

    def in_neighbors(self, v: int) -> set[int]:
        """Nodes u with an edge (u, v); equals neighbors() for undirected graphs."""
        if v not in self.nodes:
            raise NodeNotFound(f"node {v} not in graph")
        return set(self._radj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._weights

    def edge_weight(self, u: int, v: int) -> int:
        """Effective weight of edge (u, v); 1 for unweighted graphs."""
        if (u, v) not in self._weights:
            raise NodeNotFound(f"no edge ({u}, {v})")
        w = self._weights[(u, v)]
        return 1 if w is None else w

    @property
    def weighted(self) -> bool:
        return any(e.weight is not None for e in self.edges)

    def sorted_edges(self) -> list[Edge]:
        """Edges in canonical (u, v) order; the stable edge identity used everywhere."""
        return sorted(self.edges, key=_edge_key)

    def label(self, v: int) -> Optional[str]:
        if self.labels is None:
            return None
        return self.labels.get(v)

    def signature(self) -> tuple:
        """Hashable identity used for equality and duplicate detection."""
        label_part = tuple(sorted(self.labels.items())) if self.labels is not None else None
        return (
            self.directed,
            tuple(sorted(self.nodes)),
            tuple(e.as_tuple() for e in self.sorted_edges()),
            label_part,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self) -> int:
        return hash(self.signature())

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph({kind}, n={len(self.nodes)}, m={len(self.edges)})"


@dataclass(frozen=True)
class EdgeSequence:
    """An ordered presentation of a graph's edges.

    Edges may be emitted in either orientation for undirected graphs; as an
    unordered multiset of canonical edges the sequence always equals the
    graph's edge set.
    """

    order_kind: OrderKind
    edges: tuple[Edge, ...]

    def canonical_multiset(self, directed: bool) -> frozenset[Edge]:
        return frozenset(e.canonical(directed) for e in self.edges)

    def matches(self, g: Graph) -> bool:
        return len(self.edges) == len(g.edges) and self.canonical_multiset(g.directed) == g.edges


def line_graph(g: Graph) -> Graph:
    """Graph whose nodes are g's edges, adjacent when the edges share an endpoint.

    Node i of the result corresponds to g.sorted_edges()[i]. The result is
    undirected and unweighted regardless of g.
    """
    edges = g.sorted_edges()
    if not edges:
        raise EmptyGraph("line graph of an edgeless graph is undefined")
    m = len(edges)
    lg_edges = []
    for i in range(m):
        ei = {edges[i].u, edges[i].v}
        for j in range(i + 1, m):
            if ei & {edges[j].u, edges[j].v}:
                lg_edges.append((i, j))
    return Graph(directed=False, nodes=range(m), edges=lg_edges)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    """Subgraph induced on `keep`, preserving weights and labels."""
    keep_set = set(keep)
    missing = keep_set - g.nodes
    if missing:
        raise NodeNotFound(f"nodes not in graph: {sorted(missing)}")
    edges = [e for e in g.edges if e.u in keep_set and e.v in keep_set]
    labels = None
    if g.labels is not None:
        labels = {n: lbl for n, lbl in g.labels.items() if n in keep_set}
    return Graph(g.directed, keep_set, edges, labels)
