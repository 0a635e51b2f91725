"""Graph descriptions, task questions, and prompt assembly in five styles."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .errors import ExemplarsRequired, TemplateMismatch
from .graph import EdgeSequence, Graph, QUERY_LABEL
from .tasks import TaskInstance, TaskKind

STEP_BY_STEP = "Let's think step by step."
BUILD_GRAPH_LINE = "Let's construct a graph with the nodes and edges first"


class PromptStyle(Enum):
    ZERO_SHOT = "zero_shot"
    ZERO_SHOT_COT = "zero_shot_cot"
    FEW_SHOT = "few_shot"
    COT = "cot"
    COT_BAG = "cot_bag"


EXEMPLAR_STYLES = (PromptStyle.FEW_SHOT, PromptStyle.COT, PromptStyle.COT_BAG)


@dataclass(frozen=True)
class Exemplar:
    description: str
    question: str
    answer: str

    def __post_init__(self):
        if not self.answer:
            raise ValueError("exemplar answer must be non-empty")


def _render_edges(seq: EdgeSequence, with_weights: bool) -> str:
    parts = []
    for e in seq.edges:
        if with_weights:
            parts.append(f"({e.u}, {e.v}, {e.weight})")
        else:
            parts.append(f"({e.u}, {e.v})")
    return "[" + ", ".join(parts) + "]"


def encode_graph(g: Graph, seq: EdgeSequence, task: TaskKind) -> str:
    """Render the textual graph description for a given edge sequence.

    Node classification graphs get the adjacency-plus-label-mapping format;
    weighted graphs include the per-edge weight in each tuple. The label
    block lists nodes in the order they first appear in the sequence, so the
    description order also permutes the labels.
    """
    if not seq.matches(g):
        raise TemplateMismatch("edge sequence does not cover the graph's edges")

    if task == TaskKind.NODE_CLASSIFICATION:
        if g.labels is None:
            raise TemplateMismatch("node classification requires node labels")
        ordered_nodes: list[int] = []
        seen: set[int] = set()
        for e in seq.edges:
            for n in (e.u, e.v):
                if n not in seen:
                    seen.add(n)
                    ordered_nodes.append(n)
        for n in sorted(g.nodes):
            if n not in seen:
                seen.add(n)
                ordered_nodes.append(n)
        adjacency = _render_edges(seq, with_weights=False)
        mapping = " | ".join(
            f"node {n}: label {g.labels.get(n, QUERY_LABEL)}" for n in ordered_nodes
        )
        return f"Adjacency list: {adjacency} Node to label mapping: {mapping}"

    kind = "a directed" if g.directed else "an undirected"
    if g.weighted:
        return (
            f"In {kind} graph, (i, j, w) means that node i and node j are "
            f"connected by an edge with weight w, and the edges are: "
            f"{_render_edges(seq, with_weights=True)}."
        )
    return (
        f"In {kind} graph, (i, j) means that node i and node j are connected "
        f"with an edge, and the edges are: {_render_edges(seq, with_weights=False)}."
    )


_QUESTIONS = {
    TaskKind.CYCLE: "Is there a cycle in this graph?",
    TaskKind.HAMILTON_PATH: (
        "Is there a path in this graph that visits every node exactly once? "
        "If yes, give the path. Note that in a path, adjacent nodes must be "
        "connected with edges."
    ),
    TaskKind.TOPO_SORT: "Give any topological sorting of the graph.",
    TaskKind.NODE_CLASSIFICATION: "What is the label of the node labeled '?'?",
}


def make_question(inst: TaskInstance) -> str:
    task = inst.task
    if task == TaskKind.CONNECTIVITY:
        u, v = inst.query
        return (
            "Determine if there is a path between two nodes in the graph. "
            f"Is there a path between node {u} and node {v}?"
        )
    if task == TaskKind.SHORTEST_PATH:
        u, v = inst.query
        return f"Give the shortest path from node {u} to node {v}."
    return _QUESTIONS[task]


def build_prompt(
    style: PromptStyle,
    description: str,
    question: str,
    exemplars: Sequence[Exemplar] = (),
) -> str:
    """Assemble the full prompt text for one case."""
    if style in EXEMPLAR_STYLES and not exemplars:
        raise ExemplarsRequired(f"{style.value} prompts need at least one exemplar")

    if style == PromptStyle.ZERO_SHOT:
        return f"Graph: {description}\nQuestion: {question}\nAnswer:"
    if style == PromptStyle.ZERO_SHOT_COT:
        return f"Graph: {description}\nQuestion: {question} {STEP_BY_STEP}\nAnswer:"

    blocks = [
        f"Graph: {ex.description}\nQuestion: {ex.question} Answer: {ex.answer}"
        for ex in exemplars
    ]
    if style == PromptStyle.COT_BAG:
        target = f"Graph: {description}\nQuestion: {question}\n{BUILD_GRAPH_LINE}\nAnswer:"
    else:
        target = f"Graph: {description}\nQuestion: {question}\nAnswer:"
    return "\n".join(blocks + [target])


def load_exemplar_bank(path: Optional[str | Path] = None) -> dict:
    """Load the exemplar bank (task name -> list of exemplar dicts)."""
    if path is None:
        text = resources.files("graphorder").joinpath("data/exemplars.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)


def exemplars_for(task: TaskKind, style: PromptStyle, bank: Optional[dict] = None) -> list[Exemplar]:
    """Exemplars for a (task, style): reasoning answers for CoT styles, plain otherwise."""
    if style not in EXEMPLAR_STYLES:
        return []
    if bank is None:
        bank = load_exemplar_bank()
    entries = bank.get(task.value, [])
    key = "answer" if style == PromptStyle.FEW_SHOT else "answer_cot"
    return [Exemplar(e["description"], e["question"], e[key]) for e in entries]
