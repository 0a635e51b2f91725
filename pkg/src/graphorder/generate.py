"""Task graph generation and subgraph sampling.

Erdos-Renyi draws feed the five structural tasks; node classification runs on
subgraphs sampled from loaded attributed graphs. Every generated instance is
filtered so that it has a valid, well-defined solution, and everything is
deterministic given (config, seed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from .answers import OrderAnswer, PathAnswer, YesNo, LabelAnswer
from .errors import (
    GenerationExhausted,
    NodeNotFound,
    NoEligibleQueryNode,
)
from .graph import Edge, Graph, QUERY_LABEL, induced_subgraph
from .seeding import derive_seed
from .solvers import connected_pair, find_cycle, hamilton_path, shortest_path, topo_sort
from .tasks import TaskInstance, TaskKind

DEFAULT_REJECTION_BUDGET = 10_000


@dataclass(frozen=True)
class GenConfig:
    n_min: int = 5
    n_max: int = 15
    p: float = 0.3
    weight_min: int = 1
    weight_max: int = 4
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must be a probability")
        if self.n_min > self.n_max or self.n_min < 1:
            raise ValueError("need 1 <= n_min <= n_max")
        if self.weight_min > self.weight_max or self.weight_min < 1:
            raise ValueError("need 1 <= weight_min <= weight_max")


def gen_er(cfg: GenConfig, directed: bool = False) -> Graph:
    """Erdos-Renyi draw: n uniform in [n_min, n_max], each pair kept with prob p."""
    rng = random.Random(cfg.seed)
    n = rng.randint(cfg.n_min, cfg.n_max)
    nodes = range(n)
    edges = []
    if directed:
        pairs = [(i, j) for i in nodes for j in nodes if i != j]
    else:
        pairs = [(i, j) for i in nodes for j in nodes if i < j]
    for u, v in pairs:
        if rng.random() < cfg.p:
            edges.append((u, v))
    return Graph(directed, nodes, edges)


def orient_dag(g: Graph, seed: int = 0, permutation: Optional[list[int]] = None) -> Graph:
    """Orient an undirected graph acyclically along a random node permutation."""
    if g.directed:
        raise ValueError("orient_dag expects an undirected graph")
    if permutation is None:
        permutation = sorted(g.nodes)
        random.Random(seed).shuffle(permutation)
    pos = {v: i for i, v in enumerate(permutation)}
    if sorted(pos) != sorted(g.nodes):
        raise ValueError("permutation must cover exactly the graph's nodes")
    edges = []
    for e in g.edges:
        u, v = (e.u, e.v) if pos[e.u] < pos[e.v] else (e.v, e.u)
        edges.append(Edge(u, v, e.weight))
    return Graph(True, g.nodes, edges, g.labels)


def assign_weights(g: Graph, cfg: GenConfig, seed: Optional[int] = None) -> Graph:
    """Give every edge an integer weight uniform in [weight_min, weight_max]."""
    if g.weighted:
        raise ValueError("graph is already weighted")
    rng = random.Random(cfg.seed if seed is None else seed)
    edges = [
        Edge(e.u, e.v, rng.randint(cfg.weight_min, cfg.weight_max))
        for e in g.sorted_edges()
    ]
    return Graph(g.directed, g.nodes, edges, g.labels)


def gen_task_instance(
    task: TaskKind,
    cfg: GenConfig,
    budget: int = DEFAULT_REJECTION_BUDGET,
) -> TaskInstance:
    """Rejection-sample a solvable instance of a structural task.

    Node classification instances come from sampling instead; see
    sample_ego / sample_forest_fire / pick_query_node.
    """
    if task == TaskKind.NODE_CLASSIFICATION:
        raise ValueError("node classification instances come from graph sampling")

    for attempt in range(budget):
        sub_seed = derive_seed(cfg.seed, task.value, attempt)
        sub = replace(cfg, seed=sub_seed)
        g = gen_er(sub, directed=False)
        if not g.edges:
            continue  # an edgeless graph cannot be described by edge orders
        rng = random.Random(derive_seed(sub_seed, "query"))

        if task == TaskKind.CONNECTIVITY:
            if len(g.nodes) < 2:
                continue
            u, v = rng.sample(sorted(g.nodes), 2)
            gold = YesNo(connected_pair(g, u, v))
            return TaskInstance(task, g, (u, v), gold, {"attempt": attempt})

        if task == TaskKind.CYCLE:
            cycle = find_cycle(g)
            meta = {"attempt": attempt}
            if cycle is not None:
                meta["cycle"] = list(cycle)
            return TaskInstance(task, g, None, YesNo(cycle is not None), meta)

        if task == TaskKind.HAMILTON_PATH:
            path = hamilton_path(g)
            if path is None:
                continue
            return TaskInstance(task, g, None, PathAnswer(tuple(path)), {"attempt": attempt})

        if task == TaskKind.SHORTEST_PATH:
            if len(g.nodes) < 2:
                continue
            wg = assign_weights(g, cfg, seed=derive_seed(sub_seed, "weights"))
            u, v = rng.sample(sorted(wg.nodes), 2)
            if not connected_pair(wg, u, v):
                continue
            path, weight = shortest_path(wg, u, v)
            return TaskInstance(
                task, wg, (u, v), PathAnswer(tuple(path), weight), {"attempt": attempt}
            )

        if task == TaskKind.TOPO_SORT:
            dag = orient_dag(g, seed=derive_seed(sub_seed, "orient"))
            order = topo_sort(dag)
            return TaskInstance(task, dag, None, OrderAnswer(tuple(order)), {"attempt": attempt})

        raise ValueError(f"unknown task {task!r}")

    raise GenerationExhausted(f"no valid {task.value} instance in {budget} tries")


def sample_ego(
    g: Graph,
    center: int,
    hops: int = 3,
    max_nodes: int = 50,
    seed: int = 0,
) -> Graph:
    """Induced subgraph of the `hops`-ball around `center`.

    Nodes join in BFS discovery order with seeded tie-breaking inside each
    node's neighbor set, truncated at max_nodes.
    """
    if center not in g.nodes:
        raise NodeNotFound(f"center {center} not in graph")
    rng = random.Random(seed)
    kept = [center]
    kept_set = {center}
    frontier = [center]
    for _ in range(hops):
        nxt = []
        for v in frontier:
            if len(kept) >= max_nodes:
                break
            nbrs = sorted(g.neighbors(v))
            rng.shuffle(nbrs)
            for w in nbrs:
                if w in kept_set:
                    continue
                kept.append(w)
                kept_set.add(w)
                nxt.append(w)
                if len(kept) >= max_nodes:
                    break
        if len(kept) >= max_nodes or not nxt:
            break
        frontier = nxt
    return induced_subgraph(g, kept_set)


def sample_forest_fire(
    g: Graph,
    seed_node: int,
    p_burn: float = 0.3,
    max_nodes: int = 50,
    seed: int = 0,
) -> Graph:
    """Stochastic burn from seed_node: each unvisited neighbor of a burning
    node joins with probability p_burn, until max_nodes or the fire dies."""
    if seed_node not in g.nodes:
        raise NodeNotFound(f"seed node {seed_node} not in graph")
    rng = random.Random(seed)
    burned = {seed_node}
    queue = [seed_node]
    while queue and len(burned) < max_nodes:
        v = queue.pop(0)
        for w in sorted(g.neighbors(v)):
            if w in burned:
                continue
            if rng.random() < p_burn:
                burned.add(w)
                queue.append(w)
                if len(burned) >= max_nodes:
                    break
    return induced_subgraph(g, burned)


def pick_query_node(g: Graph, seed: int = 0) -> tuple[Graph, int, str]:
    """Mask one node's label with '?' and return (masked graph, node, true label).

    Eligible nodes are fully labeled and have at least one labeled neighbor to
    infer from.
    """
    if g.labels is None:
        raise NoEligibleQueryNode("graph has no labels")
    eligible = []
    for v in sorted(g.nodes):
        lbl = g.labels.get(v)
        if lbl is None or lbl == QUERY_LABEL:
            continue
        if any(
            g.labels.get(u) not in (None, QUERY_LABEL)
            for u in g.neighbors(v) | g.in_neighbors(v)
        ):
            eligible.append(v)
    if not eligible:
        raise NoEligibleQueryNode("no labeled node with a labeled neighbor")
    node = random.Random(seed).choice(eligible)
    gold = g.labels[node]
    labels = dict(g.labels)
    labels[node] = QUERY_LABEL
    masked = Graph(g.directed, g.nodes, g.edges, labels)
    return masked, node, gold


def make_classification_instance(
    source: Graph,
    sampler: str,
    seed: int,
    hops: int = 3,
    p_burn: float = 0.3,
    max_nodes: int = 50,
    source_name: str = "",
    budget: int = 100,
) -> TaskInstance:
    """Sample a labeled subgraph and mask one query node.

    The sampling center/seed node is drawn uniformly (seeded) from the source
    graph; samples without an eligible query node are redrawn.
    """
    if sampler not in ("ego", "forest_fire"):
        raise ValueError(f"unknown sampler {sampler!r}")
    if source.labels is None:
        raise NoEligibleQueryNode("source graph carries no labels")
    candidates = sorted(source.labels)
    for attempt in range(budget):
        s = derive_seed(seed, sampler, attempt)
        center = random.Random(derive_seed(s, "center")).choice(candidates)
        if sampler == "ego":
            sub = sample_ego(source, center, hops, max_nodes, seed=derive_seed(s, "sample"))
        else:
            sub = sample_forest_fire(source, center, p_burn, max_nodes, seed=derive_seed(s, "sample"))
        try:
            masked, node, gold = pick_query_node(sub, seed=derive_seed(s, "mask"))
        except NoEligibleQueryNode:
            continue
        meta = {
            "sampler": sampler,
            "source": source_name,
            "center": center,
            "attempt": attempt,
        }
        return TaskInstance(TaskKind.NODE_CLASSIFICATION, masked, node, LabelAnswer(gold), meta)
    raise GenerationExhausted(f"no classification instance from {source_name!r} in {budget} tries")


def load_labeled_graph(edge_path: str | Path, label_path: str | Path) -> Graph:
    """Load an undirected attributed graph from plain text exports.

    The edge file holds one "u v" pair per line; the label file one
    "node label" pair per line. Blank lines and '#' comments are skipped.
    """
    edges = []
    nodes = set()
    for lineno, line in enumerate(Path(edge_path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{edge_path}:{lineno}: expected 'u v', got {line!r}")
        u, v = int(parts[0]), int(parts[1])
        nodes.update((u, v))
        if u != v:
            edges.append((u, v))
    labels = {}
    for lineno, line in enumerate(Path(label_path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(maxsplit=1)
        if len(parts) != 2:
            raise ValueError(f"{label_path}:{lineno}: expected 'node label', got {line!r}")
        labels[int(parts[0])] = parts[1]
        nodes.add(int(parts[0]))
    return Graph(False, nodes, edges, labels)
