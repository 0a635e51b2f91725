"""Edge sequence builders for the seven description orders.

BFS and DFS traverse the line graph of the input (nodes = edges, adjacent
when they share an endpoint) so that every edge is emitted exactly once; when
the line graph is disconnected, a new root is drawn at random until all edges
are covered. Neighbor ties always break by canonical edge id so that a fixed
(graph, seed) pair yields a fixed sequence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import EmptyGraph, InvalidWitness, MissingScore
from .graph import Edge, EdgeSequence, Graph, OrderKind, line_graph
from .ranking import RankScores


@dataclass(frozen=True)
class OrderContext:
    """Everything an order builder may need beyond the graph itself."""

    seed: int = 0
    root_edge: Optional[tuple[int, int]] = None
    scores: Optional[RankScores] = None
    witness_path: Optional[Sequence[int]] = None


def order_random(g: Graph, seed: int = 0) -> EdgeSequence:
    rng = random.Random(seed)
    edges = g.sorted_edges()
    rng.shuffle(edges)
    return EdgeSequence(OrderKind.RANDOM, tuple(edges))


def _line_adjacency(g: Graph) -> tuple[list[Edge], dict[int, list[int]]]:
    edges = g.sorted_edges()
    if not edges:
        raise EmptyGraph("cannot order an edgeless graph")
    lg = line_graph(g)
    adj = {i: sorted(lg.neighbors(i)) for i in lg.nodes}
    return edges, adj

def _resolve_root(edges: list[Edge], root_edge, remaining, rng) -> int:
    if root_edge is not None:
        for i, e in enumerate(edges):
            if {e.u, e.v} == set(root_edge) and i in remaining:
                return i
        raise InvalidWitness(f"root edge {root_edge} not found")
    return rng.choice(sorted(remaining))


def order_bfs(g: Graph, seed: int = 0, root_edge: Optional[tuple[int, int]] = None) -> EdgeSequence:
    """Level-by-level traversal of the line graph, re-rooted until covered."""
    edges, adj = _line_adjacency(g)
    rng = random.Random(seed)
    remaining = set(range(len(edges)))
    visit_order: list[int] = []
    first = True
    while remaining:
        root = _resolve_root(edges, root_edge if first else None, remaining, rng)
        first = False
        remaining.discard(root)
        queue = [root]
        visit_order.append(root)
        while queue:
            node = queue.pop(0)
            for nxt in adj[node]:
                if nxt in remaining:
                    remaining.discard(nxt)
                    visit_order.append(nxt)
                    queue.append(nxt)
    return EdgeSequence(OrderKind.BFS, tuple(edges[i] for i in visit_order))


def order_dfs(g: Graph, seed: int = 0, root_edge: Optional[tuple[int, int]] = None) -> EdgeSequence:
    """Deep-first traversal of the line graph, same rooting rules as BFS."""
    edges, adj = _line_adjacency(g)
    rng = random.Random(seed)
    remaining = set(range(len(edges)))
    visit_order: list[int] = []
    first = True
    while remaining:
        root = _resolve_root(edges, root_edge if first else None, remaining, rng)
        first = False
        stack = [root]
        while stack:
            node = stack.pop()
            if node not in remaining:
                continue
            remaining.discard(node)
            visit_order.append(node)
            # Reverse push so the smallest edge id is explored first.
            for nxt in reversed(adj[node]):
                if nxt in remaining:
                    stack.append(nxt)
    return EdgeSequence(OrderKind.DFS, tuple(edges[i] for i in visit_order))


def order_by_scores(g: Graph, scores: RankScores, kind: OrderKind = OrderKind.PAGERANK) -> EdgeSequence:
    """Emit each node's incident edges in descending-score node order.

    Nodes are visited from the highest-scored down; at node v the edges
    (v, u) are appended with u in descending score (ties: ascending id).
    An undirected edge already present in either orientation is skipped.
    """
    missing = g.nodes - set(scores.scores)
    if missing:
        raise MissingScore(f"no score for nodes {sorted(missing)}")
    seen: set[tuple[int, int]] = set()
    out: list[Edge] = []
    sc = scores.scores
    for v in scores.ranked_nodes():
        for u in sorted(g.neighbors(v), key=lambda n: (-sc[n], n)):
            key = (v, u) if g.directed else (min(v, u), max(v, u))
            if key in seen:
                continue
            seen.add(key)
            w = g.edge_weight(v, u)
            out.append(Edge(v, u, w if g.weighted else None))
    return EdgeSequence(kind, tuple(out))


def _witness_sequence(g: Graph, witness: Sequence[int], kind: OrderKind) -> EdgeSequence:
    witness = list(witness)
    if len(witness) < 2:
        raise InvalidWitness("witness path needs at least one edge")
    prefix: list[Edge] = []
    used: set[tuple[int, int]] = set()
    for a, b in zip(witness, witness[1:]):
        if not g.has_edge(a, b):
            raise InvalidWitness(f"witness hop ({a}, {b}) is not an edge")
        key = (a, b) if g.directed else (min(a, b), max(a, b))
        if key in used:
            raise InvalidWitness(f"witness repeats edge ({a}, {b})")
        used.add(key)
        prefix.append(Edge(a, b, g.edge_weight(a, b) if g.weighted else None))
    rest = [e for e in g.sorted_edges() if (e.u, e.v) not in used]
    return EdgeSequence(kind, tuple(prefix + rest))


def order_shortest_path(g: Graph, witness: Sequence[int]) -> EdgeSequence:
    """Witness path edges first in path order, remaining edges canonically."""
    return _witness_sequence(g, witness, OrderKind.SHORTEST_PATH)


def order_longest_path(g: Graph, witness: Sequence[int]) -> EdgeSequence:
    return _witness_sequence(g, witness, OrderKind.LONGEST_PATH)


def order_edges(g: Graph, kind: OrderKind, ctx: OrderContext) -> EdgeSequence:
    """Dispatch to the builder for `kind` using material from `ctx`."""
    if kind == OrderKind.RANDOM:
        return order_random(g, ctx.seed)
    if kind == OrderKind.BFS:
        return order_bfs(g, ctx.seed, ctx.root_edge)
    if kind == OrderKind.DFS:
        return order_dfs(g, ctx.seed, ctx.root_edge)
    if kind in (OrderKind.PAGERANK, OrderKind.PPR):
        if ctx.scores is None:
            raise MissingScore(f"{kind.value} order requires rank scores")
        return order_by_scores(g, ctx.scores, kind)
    if kind in (OrderKind.SHORTEST_PATH, OrderKind.LONGEST_PATH):
        if ctx.witness_path is None:
            raise InvalidWitness(f"{kind.value} order requires a witness path")
        return _witness_sequence(g, ctx.witness_path, kind)
    raise ValueError(f"unknown order kind {kind!r}")
