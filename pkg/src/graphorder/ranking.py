"""Node importance scores driving the score-based description orders.

The recurrence implemented here is the unnormalized additive variant

    score(v) = alpha * sum_{u -> v} score(u) / out_degree(u) + (1 - alpha) * e_v

with e_v = 1 for the plain ranking. Symmetric graphs therefore converge to
1.0 per node (not 1/n), and an isolated node settles at (1 - alpha).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .answers import PathAnswer
from .errors import ConvergenceFailure, MissingWitness
from .graph import Graph
from .solvers import find_cycle, zero_indegree
from .tasks import TaskInstance, TaskKind

DEFAULT_ALPHA = 0.85
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 1000


@dataclass(frozen=True)
class RankScores:
    scores: dict[int, float]
    alpha: float
    residual: float
    iterations: int = 0

    def ranked_nodes(self) -> list[int]:
        """Nodes by descending score; ties broken by ascending id."""
        return sorted(self.scores, key=lambda v: (-self.scores[v], v))


@dataclass(frozen=True)
class PersonalizationVector:
    e: dict[int, float]
    task: TaskKind = field(default=TaskKind.CONNECTIVITY)

    def total(self) -> float:
        return sum(self.e.values())


def _iterate(
    g: Graph,
    restart: dict[int, float],
    alpha: float,
    tol: float,
    max_iter: int,
) -> RankScores:
    nodes = sorted(g.nodes)
    scores = {v: 1.0 for v in nodes}
    out_deg = {v: len(g.neighbors(v)) for v in nodes}
    in_nbrs = {v: sorted(g.in_neighbors(v)) for v in nodes}
    residual = float("inf")
    for iteration in range(1, max_iter + 1):
        new = {}
        for v in nodes:
            acc = sum(scores[u] / out_deg[u] for u in in_nbrs[v])
            new[v] = alpha * acc + restart[v]
        residual = max(abs(new[v] - scores[v]) for v in nodes)
        scores = new
        if residual < tol:
            return RankScores(scores, alpha, residual, iteration)
    raise ConvergenceFailure(residual, max_iter)


def pagerank(
    g: Graph,
    alpha: float = DEFAULT_ALPHA,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RankScores:
    """Fixed point of the unnormalized recurrence, from an all-ones start.

    Undirected edges count in both directions; edge weights are ignored
    (every edge splits a node's score by its plain degree).
    """
    if not g.nodes:
        raise ValueError("pagerank of an empty graph is undefined")
    restart = {v: 1.0 - alpha for v in g.nodes}
    return _iterate(g, restart, alpha, tol, max_iter)


def personalized_pagerank(
    g: Graph,
    e: PersonalizationVector,
    alpha: float = DEFAULT_ALPHA,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> RankScores:
    """Same iteration contract as pagerank with restart mass (1-alpha)*e_v."""
    if not g.nodes:
        raise ValueError("personalized pagerank of an empty graph is undefined")
    restart = {v: (1.0 - alpha) * e.e.get(v, 0.0) for v in g.nodes}
    return _iterate(g, restart, alpha, tol, max_iter)


def _uniform_over(members, all_nodes, task) -> PersonalizationVector:
    members = set(members)
    share = 1.0 / len(members)
    e = {v: (share if v in members else 0.0) for v in all_nodes}
    return PersonalizationVector(e, task)


def build_personalization(inst: TaskInstance) -> PersonalizationVector:
    """Task-specific restart distribution for the personalized ranking.

    Witness material comes from the instance: the query pair for
    connectivity, the stored gold path for Hamilton/shortest path, the cycle
    recorded at generation time (recomputed if absent) for cycle detection,
    the in-degree-0 set for topological sort, and hop distances from the
    query node for node classification.
    """
    task = inst.task
    g = inst.graph
    nodes = sorted(g.nodes)

    if task == TaskKind.CONNECTIVITY:
        if not inst.query or len(inst.query) != 2:
            raise MissingWitness("connectivity personalization needs the query pair")
        u, v = inst.query
        e = {w: 0.0 for w in nodes}
        e[u] = e[v] = 0.5
        return PersonalizationVector(e, task)

    if task == TaskKind.CYCLE:
        cycle = inst.metadata.get("cycle")
        if cycle is None:
            cycle = find_cycle(g)
        if cycle:
            return _uniform_over(cycle, nodes, task)
        # No cycle: uniform over all nodes.
        return _uniform_over(nodes, nodes, task)

    if task in (TaskKind.HAMILTON_PATH, TaskKind.SHORTEST_PATH):
        if not isinstance(inst.gold, PathAnswer) or not inst.gold.nodes:
            raise MissingWitness(f"{task.value} personalization needs the witness path")
        return _uniform_over(inst.gold.nodes, nodes, task)

    if task == TaskKind.TOPO_SORT:
        sources = zero_indegree(g)
        if not sources:
            raise MissingWitness("DAG has no in-degree-0 node")
        return _uniform_over(sources, nodes, task)

    if task == TaskKind.NODE_CLASSIFICATION:
        if inst.query is None or inst.query not in g.nodes:
            raise MissingWitness("node classification personalization needs the query node")
        dist = _hop_distances(g, inst.query)
        reachable = [v for v in nodes if v in dist]
        max_d = max(dist.values())
        raw = {v: max_d - dist[v] + 1 for v in reachable}
        total = sum(raw.values())
        # Unreachable nodes get zero restart mass; the printed formula assumes
        # every node is reachable from the query node.
        e = {v: (raw[v] / total if v in raw else 0.0) for v in nodes}
        return PersonalizationVector(e, task)

    raise MissingWitness(f"unknown task {task!r}")


def _hop_distances(g: Graph, source: int) -> dict[int, int]:
    dist = {source: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for v in frontier:
            for w in sorted(g.neighbors(v)):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    return dist
