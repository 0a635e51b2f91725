"""Exact ground-truth algorithms and answer validators for the six tasks.

All solvers use deterministic tie-breaking (smallest node id first,
lexicographically smallest path among optima) so regenerated golds and
witnesses are reproducible. Instances are small (n <= 15 generated, n <= 50
sampled), so plain exhaustive algorithms are appropriate.
"""

from __future__ import annotations

import heapq
from typing import Optional

from .answers import (
    Answer,
    LabelAnswer,
    OrderAnswer,
    PathAnswer,
    Unparsed,
    YesNo,
)
from .errors import AnswerShapeMismatch, NodeNotFound, NoPath, NotADag
from .graph import Graph
from .tasks import TaskInstance, TaskKind


def connected_pair(g: Graph, u: int, v: int) -> bool:
    """True iff u and v share a connected component of the undirected graph."""
    if u not in g.nodes or v not in g.nodes:
        raise NodeNotFound(f"query nodes ({u}, {v}) not in graph")
    if u == v:
        return True
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y == v:
                return True
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def find_cycle(g: Graph) -> Optional[list[int]]:
    """Some simple cycle of an undirected graph as a node list, or None.

    DFS back-edge construction with sorted node/neighbor order, so the witness
    is deterministic.
    """
    parent: dict[int, Optional[int]] = {}
    for root in sorted(g.nodes):
        if root in parent:
            continue
        parent[root] = None
        stack = [(root, iter(sorted(g.neighbors(root))))]
        path = [root]
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if nxt == parent[node]:
                    continue
                if nxt in parent:
                    if nxt in path:
                        return path[path.index(nxt):]
                    continue
                parent[nxt] = node
                stack.append((nxt, iter(sorted(g.neighbors(nxt)))))
                path.append(nxt)
                advanced = True
                break
            if not advanced:
                stack.pop()
                path.pop()
    return None


def hamilton_path(g: Graph) -> Optional[list[int]]:
    """One Hamilton path of an undirected graph, or None.

    Backtracking over start nodes in ascending id order; the first path found
    is returned, making the witness deterministic.
    """
    nodes = sorted(g.nodes)
    n = len(nodes)
    if n == 0:
        return None
    if n == 1:
        return nodes
    # Cheap rejections: a Hamilton path needs a connected graph with at most
    # two degree-1 endpoints.
    if not _is_connected(g):
        return None
    if sum(1 for v in nodes if len(g.neighbors(v)) == 1) > 2:
        return None

    def extend(path: list[int], used: set[int]) -> Optional[list[int]]:
        if len(path) == n:
            return path
        for nxt in sorted(g.neighbors(path[-1])):
            if nxt in used:
                continue
            used.add(nxt)
            path.append(nxt)
            found = extend(path, used)
            if found is not None:
                return found
            path.pop()
            used.remove(nxt)
        return None

    for start in nodes:
        found = extend([start], {start})
        if found is not None:
            return list(found)
    return None


def _is_connected(g: Graph) -> bool:
    if not g.nodes:
        return True
    start = next(iter(g.nodes))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x) | g.in_neighbors(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == g.nodes


def shortest_path(g: Graph, u: int, v: int) -> tuple[list[int], int]:
    """Minimum-weight path from u to v and its total weight.

    Uniform-cost search keyed on (weight, path) pops the lexicographically
    smallest node sequence among optimal paths first.
    """
    if u not in g.nodes or v not in g.nodes:
        raise NodeNotFound(f"query nodes ({u}, {v}) not in graph")
    if u == v:
        return [u], 0
    heap: list[tuple[int, tuple[int, ...]]] = [(0, (u,))]
    done: set[int] = set()
    while heap:
        dist, path = heapq.heappop(heap)
        node = path[-1]
        if node in done:
            continue
        done.add(node)
        if node == v:
            return list(path), dist
        for nxt in sorted(g.neighbors(node)):
            if nxt not in done:
                heapq.heappush(heap, (dist + g.edge_weight(node, nxt), path + (nxt,)))
    raise NoPath(f"no path from {u} to {v}")


def topo_sort(g: Graph) -> list[int]:
    """Kahn's algorithm, smallest id first among available nodes."""
    if not g.directed:
        raise NotADag("topological sort requires a directed graph")
    indeg = {v: len(g.in_neighbors(v)) for v in g.nodes}
    ready = [v for v in g.nodes if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in sorted(g.neighbors(v)):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(order) != len(g.nodes):
        raise NotADag("graph contains a directed cycle")
    return order


def zero_indegree(g: Graph) -> set[int]:
    if not g.directed:
        raise NotADag("in-degree-0 set requires a directed graph")
    return {v for v in g.nodes if not g.in_neighbors(v)}


def longest_simple_path(g: Graph, u: int, v: int) -> list[int]:
    """Maximum-weight (or maximum-hop, if unweighted) simple path from u to v.

    Exhaustive backtracking; ties broken by the lexicographically smallest
    node sequence.
    """
    if u not in g.nodes or v not in g.nodes:
        raise NodeNotFound(f"query nodes ({u}, {v}) not in graph")
    best: Optional[tuple[int, tuple[int, ...]]] = None

    def visit(path: list[int], used: set[int], weight: int):
        nonlocal best
        if path[-1] == v:
            key = (-weight, tuple(path))
            if best is None or key < best:
                best = key
            return
        for nxt in sorted(g.neighbors(path[-1])):
            if nxt in used:
                continue
            used.add(nxt)
            path.append(nxt)
            visit(path, used, weight + g.edge_weight(path[-2], nxt))
            path.pop()
            used.remove(nxt)

    if u == v:
        return [u]
    visit([u], {u}, 0)
    if best is None:
        raise NoPath(f"no path from {u} to {v}")
    return list(best[1])


# -- answer validation -------------------------------------------------------


def _is_valid_path(g: Graph, nodes: tuple[int, ...]) -> bool:
    if not nodes or any(n not in g.nodes for n in nodes):
        return False
    return all(g.has_edge(a, b) for a, b in zip(nodes, nodes[1:]))


def _path_weight(g: Graph, nodes: tuple[int, ...]) -> int:
    return sum(g.edge_weight(a, b) for a, b in zip(nodes, nodes[1:]))


def validate_answer(inst: TaskInstance, parsed: Answer) -> bool:
    """Check a parsed answer against a task instance.

    Tasks with many correct solutions (Hamilton path, shortest path,
    topological sort) accept any answer satisfying the task requirements, not
    just the stored witness.
    """
    if isinstance(parsed, Unparsed):
        return False
    task = inst.task
    g = inst.graph

    if task in (TaskKind.CONNECTIVITY, TaskKind.CYCLE):
        if not isinstance(parsed, YesNo):
            raise AnswerShapeMismatch(f"{task.value} expects a yes/no answer")
        if not isinstance(inst.gold, YesNo):
            raise AnswerShapeMismatch("gold answer is not yes/no")
        return parsed.value == inst.gold.value

    if task == TaskKind.HAMILTON_PATH:
        if not isinstance(parsed, PathAnswer):
            raise AnswerShapeMismatch("hamilton path expects a path answer")
        nodes = parsed.nodes
        return (
            len(nodes) == len(g.nodes)
            and len(set(nodes)) == len(nodes)
            and _is_valid_path(g, nodes)
        )

    if task == TaskKind.SHORTEST_PATH:
        if not isinstance(parsed, PathAnswer):
            raise AnswerShapeMismatch("shortest path expects a path answer")
        if not isinstance(inst.gold, PathAnswer) or inst.gold.weight is None:
            raise AnswerShapeMismatch("gold answer lacks the optimal weight")
        u, v = inst.query
        nodes = parsed.nodes
        if len(set(nodes)) != len(nodes):
            return False
        if not nodes or nodes[0] != u or nodes[-1] != v:
            return False
        if not _is_valid_path(g, nodes):
            return False
        # The path is the answer: a wrong *claimed* weight does not penalize a
        # genuinely optimal path.
        return _path_weight(g, nodes) == inst.gold.weight

    if task == TaskKind.TOPO_SORT:
        if not isinstance(parsed, OrderAnswer):
            raise AnswerShapeMismatch("topological sort expects an order answer")
        nodes = parsed.nodes
        if sorted(nodes) != sorted(g.nodes):
            return False
        pos = {n: i for i, n in enumerate(nodes)}
        return all(pos[e.u] < pos[e.v] for e in g.edges)

    if task == TaskKind.NODE_CLASSIFICATION:
        if not isinstance(parsed, LabelAnswer):
            raise AnswerShapeMismatch("node classification expects a label answer")
        if not isinstance(inst.gold, LabelAnswer):
            raise AnswerShapeMismatch("gold answer is not a label")
        return parsed.label == inst.gold.label

    raise AnswerShapeMismatch(f"unknown task {task!r}")
