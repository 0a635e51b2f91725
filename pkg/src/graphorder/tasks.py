"""Task kinds and task instances."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

from .answers import Answer
from .graph import Graph


class TaskKind(Enum):
    CONNECTIVITY = "connectivity"
    CYCLE = "cycle"
    HAMILTON_PATH = "hamilton_path"
    SHORTEST_PATH = "shortest_path"
    TOPO_SORT = "topo_sort"
    NODE_CLASSIFICATION = "node_classification"


TRADITIONAL_TASKS = (
    TaskKind.CONNECTIVITY,
    TaskKind.CYCLE,
    TaskKind.HAMILTON_PATH,
    TaskKind.SHORTEST_PATH,
    TaskKind.TOPO_SORT,
)


@dataclass(frozen=True)
class TaskInstance:
    """A graph, a task, its query context, and the gold answer material.

    `query` is a (u, v) pair for connectivity/shortest path, the query node id
    for node classification, and None otherwise. `metadata` carries witness
    choices (e.g. the cycle found at generation time) and sampling provenance.
    """

    task: TaskKind
    graph: Graph
    query: Optional[Any]
    gold: Answer
    metadata: dict = field(default_factory=dict, compare=False)
