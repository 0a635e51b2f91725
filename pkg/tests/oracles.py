"""Brute-force reference algorithms used to cross-check the exact solvers.

Everything here is deliberately naive: transitive closure by Floyd-Warshall,
cycle presence by edge counting per component, Hamilton and longest-path by
bitmask dynamic programming, shortest-path weights by Floyd-Warshall. None of
it shares code with the package under test.
"""

from __future__ import annotations

import itertools
import random
from typing import Optional

from graphorder.graph import Graph

INF = float("inf")


def _index(g: Graph) -> list[int]:
    return sorted(g.nodes)


def _adj_matrix(g: Graph) -> tuple[list[int], list[list[float]]]:
    nodes = _index(g)
    pos = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    dist = [[INF] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = 0.0
    for e in g.edges:
        w = 1 if e.weight is None else e.weight
        i, j = pos[e.u], pos[e.v]
        dist[i][j] = min(dist[i][j], w)
        if not g.directed:
            dist[j][i] = min(dist[j][i], w)
    return nodes, dist


def floyd_warshall(g: Graph) -> tuple[list[int], list[list[float]]]:
    nodes, dist = _adj_matrix(g)
    n = len(nodes)
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == INF:
                continue
            row = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < row[j]:
                    row[j] = alt
    return nodes, dist


def oracle_connected(g: Graph, u: int, v: int) -> bool:
    nodes, dist = floyd_warshall(g)
    pos = {x: i for i, x in enumerate(nodes)}
    return dist[pos[u]][pos[v]] < INF


def oracle_shortest_weight(g: Graph, u: int, v: int) -> Optional[int]:
    nodes, dist = floyd_warshall(g)
    pos = {x: i for i, x in enumerate(nodes)}
    d = dist[pos[u]][pos[v]]
    return None if d == INF else int(d)


def oracle_has_cycle(g: Graph) -> bool:
    """Undirected: some component has at least as many edges as nodes."""
    parent = {v: v for v in g.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            return True
        parent[ru] = rv
    return False


def oracle_hamilton_exists(g: Graph) -> bool:
    """Bitmask DP over (visited set, last node)."""
    nodes = _index(g)
    n = len(nodes)
    if n == 0:
        return False
    if n == 1:
        return True
    pos = {v: i for i, v in enumerate(nodes)}
    adj = [0] * n
    for e in g.edges:
        i, j = pos[e.u], pos[e.v]
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    reach = [0] * (1 << n)
    for i in range(n):
        reach[1 << i] = 1 << i
    full = (1 << n) - 1
    for mask in range(1, full + 1):
        lasts = reach[mask]
        if not lasts:
            continue
        if mask == full:
            return True
        for last in range(n):
            if not (lasts >> last) & 1:
                continue
            nxts = adj[last] & ~mask
            while nxts:
                nxt = (nxts & -nxts).bit_length() - 1
                reach[mask | (1 << nxt)] |= 1 << nxt
                nxts &= nxts - 1
    return False


def oracle_hamilton_by_permutations(g: Graph) -> bool:
    nodes = _index(g)
    if len(nodes) <= 1:
        return bool(nodes)
    for perm in itertools.permutations(nodes):
        if all(g.has_edge(a, b) for a, b in zip(perm, perm[1:])):
            return True
    return False


def oracle_longest_path_weight(g: Graph, u: int, v: int) -> Optional[int]:
    """Max total weight over simple u-v paths, by bitmask DP; None if no path."""
    nodes = _index(g)
    n = len(nodes)
    pos = {x: i for i, x in enumerate(nodes)}
    su, sv = pos[u], pos[v]
    if su == sv:
        return 0
    w = [[None] * n for _ in range(n)]
    for e in g.edges:
        i, j = pos[e.u], pos[e.v]
        wt = 1 if e.weight is None else e.weight
        w[i][j] = wt
        if not g.directed:
            w[j][i] = wt
    best: dict[tuple[int, int], int] = {(1 << su, su): 0}
    answer = None
    frontier = [(1 << su, su, 0)]
    while frontier:
        nxt_frontier = []
        for mask, last, total in frontier:
            for nxt in range(n):
                if (mask >> nxt) & 1 or w[last][nxt] is None:
                    continue
                nm, nt = mask | (1 << nxt), total + w[last][nxt]
                key = (nm, nxt)
                if best.get(key, -1) >= nt:
                    continue
                best[key] = nt
                if nxt == sv:
                    if answer is None or nt > answer:
                        answer = nt
                else:
                    nxt_frontier.append((nm, nxt, nt))
        frontier = nxt_frontier
    return answer


def oracle_pagerank(g: Graph, alpha: float = 0.85, iters: int = 5000) -> dict[int, float]:
    """Same recurrence, written independently over adjacency lists."""
    nodes = _index(g)
    out = {
        v: sorted(g.neighbors(v))
        for v in nodes
    }
    scores = {v: 1.0 for v in nodes}
    for _ in range(iters):
        new = {v: 1.0 - alpha for v in nodes}
        for u in nodes:
            if not out[u]:
                continue
            share = alpha * scores[u] / len(out[u])
            for v in out[u]:
                new[v] += share
        if max(abs(new[v] - scores[v]) for v in nodes) < 1e-13:
            return new
        scores = new
    return scores


def random_er_graph(
    rng: random.Random,
    n_max: int = 8,
    n_min: int = 2,
    weighted: bool = False,
    directed: bool = False,
    require_edge: bool = True,
) -> Graph:
    """An independent ER sampler for property tests (not the package's own)."""
    while True:
        n = rng.randint(n_min, n_max)
        p = rng.uniform(0.15, 0.6)
        edges = []
        for i in range(n):
            for j in range(n):
                if (j <= i if not directed else j == i):
                    continue
                if rng.random() < p:
                    w = rng.randint(1, 4) if weighted else None
                    edges.append((i, j) if w is None else (i, j, w))
        if edges or not require_edge:
            return Graph(directed, range(n), edges)


def all_graphs_up_to(n: int):
    """Every labeled undirected graph on 1..n nodes with at least one edge."""
    for size in range(2, n + 1):
        pairs = [(i, j) for i in range(size) for j in range(i + 1, size)]
        for bits in range(1, 1 << len(pairs)):
            edges = [pairs[k] for k in range(len(pairs)) if (bits >> k) & 1]
            yield Graph(False, range(size), edges)
