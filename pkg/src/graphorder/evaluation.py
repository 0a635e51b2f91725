"""Response parsing, case scoring, and aggregate metrics."""

from __future__ import annotations

import re
import statistics
from dataclasses import dataclass
from typing import Iterable, Optional

from .answers import (
    Answer,
    LabelAnswer,
    OrderAnswer,
    PathAnswer,
    Unparsed,
    YesNo,
)
from .errors import (
    AnswerShapeMismatch,
    EmptyInput,
    InsufficientOrders,
    InvalidBaseline,
)
from .graph import OrderKind
from .prompting import PromptStyle
from .solvers import validate_answer
from .tasks import TaskInstance, TaskKind

# Yes/no keyword anchors. Responses often restate the premise before
# concluding, so the match closest to the end of the text wins.
_YES_PATTERNS = [
    r"answer is[:\s]+yes",
    r"there is a cycle",
    r"there is a path",
    r"there exists a path",
    r"\byes\b",
]
_NO_PATTERNS = [
    r"answer is[:\s]+no",
    r"there is no cycle",
    r"there is no path",
    r"not connected",
    r"\bno\b",
]

_NODE_RUN = re.compile(r"\d+(?:\s*(?:,|->|→|=>)\s*\d+)+")
_WEIGHT = re.compile(r"total weight (?:of|is)[:\s]*([\d\s+*=-]+)")

_PATH_ANCHORS = {
    TaskKind.HAMILTON_PATH: [
        r"path that visits every node exactly once is",
        r"the path can be",
        r"the path is",
        r"path:",
    ],
    TaskKind.SHORTEST_PATH: [
        r"shortest path from node \d+ to node \d+ is",
        r"shortest path from \d+ to \d+ is",
        r"the shortest path is",
        r"shortest path:",
    ],
    TaskKind.TOPO_SORT: [
        r"topological (?:sorting|sort|sequence|order|ordering)[^:\n]{0,40}?(?:is|:)",
        r"topological (?:sorting|sort)",
    ],
}

_LABEL = re.compile(r"label(?:ed)?\s*(?:of[^:]{0,30})?(?:is|:)?\s*['\"]?([\w?]+)", re.IGNORECASE)


def _last_match_pos(text: str, patterns: list[str]) -> int:
    pos = -1
    for pat in patterns:
        for m in re.finditer(pat, text, re.IGNORECASE):
            pos = max(pos, m.end())
    return pos


def _extract_nodes(segment: str) -> Optional[list[int]]:
    m = _NODE_RUN.search(segment)
    if m is None:
        return None
    return [int(tok) for tok in re.findall(r"\d+", m.group(0))]


def _extract_after_anchor(task: TaskKind, text: str) -> Optional[list[int]]:
    anchors = _PATH_ANCHORS[task]
    candidates = []
    for pat in anchors:
        for m in re.finditer(pat, text, re.IGNORECASE):
            candidates.append(m.end())
    # Prefer the latest anchor that is actually followed by a node run.
    for end in sorted(candidates, reverse=True):
        nodes = _extract_nodes(text[end:])
        if nodes is not None:
            return nodes
    return None


def parse_response(task: TaskKind, text: str) -> Answer:
    """String-match a model response into a structured answer.

    Never raises: anything unrecognizable comes back as Unparsed.
    """
    if task in (TaskKind.CONNECTIVITY, TaskKind.CYCLE):
        yes_pos = _last_match_pos(text, _YES_PATTERNS)
        no_pos = _last_match_pos(text, _NO_PATTERNS)
        if yes_pos < 0 and no_pos < 0:
            return Unparsed("no yes/no keyword found")
        return YesNo(yes_pos > no_pos)

    if task == TaskKind.HAMILTON_PATH:
        nodes = _extract_after_anchor(task, text)
        if nodes is None:
            return Unparsed("no path found near an answer phrase")
        return PathAnswer(tuple(nodes))

    if task == TaskKind.SHORTEST_PATH:
        nodes = _extract_after_anchor(task, text)
        if nodes is None:
            return Unparsed("no path found near an answer phrase")
        weight = None
        wm = None
        for wm in _WEIGHT.finditer(text):
            pass
        if wm is not None:
            ints = re.findall(r"\d+", wm.group(1))
            if ints:
                weight = int(ints[-1])
        return PathAnswer(tuple(nodes), weight)

    if task == TaskKind.TOPO_SORT:
        nodes = _extract_after_anchor(task, text)
        if nodes is None:
            return Unparsed("no order found near an answer phrase")
        return OrderAnswer(tuple(nodes))

    if task == TaskKind.NODE_CLASSIFICATION:
        tokens = [m.group(1) for m in _LABEL.finditer(text) if m.group(1) != "?"]
        if not tokens:
            return Unparsed("no label token found")
        return LabelAnswer(tokens[-1])

    return Unparsed(f"unknown task {task!r}")


def score_case(inst: TaskInstance, parsed: Answer) -> bool:
    """Unparsed or wrongly-shaped answers never score; otherwise validate."""
    if isinstance(parsed, Unparsed):
        return False
    try:
        return validate_answer(inst, parsed)
    except AnswerShapeMismatch:
        return False


@dataclass(frozen=True)
class EvalRecord:
    case_id: str
    task: TaskKind
    order_kind: OrderKind
    style: PromptStyle
    response: str
    parsed: Answer
    correct: bool


@dataclass(frozen=True)
class ReportCell:
    task: TaskKind
    order_kind: OrderKind
    style: PromptStyle
    accuracy_pct: float
    n: int
    delta_pct: Optional[float] = None


def accuracy(records: Iterable[EvalRecord]) -> float:
    """Percent of correct records."""
    records = list(records)
    if not records:
        raise EmptyInput("accuracy of zero records is undefined")
    return 100.0 * sum(r.correct for r in records) / len(records)


def order_variance(acc_by_order: dict[OrderKind, float]) -> float:
    """Population variance of the per-order accuracies."""
    if len(acc_by_order) < 2:
        raise InsufficientOrders("variance needs at least two orders")
    return statistics.pvariance(acc_by_order.values())


def improvement(baseline_pct: float, value_pct: float) -> float:
    """Relative improvement over the baseline, in percent."""
    if baseline_pct <= 0:
        raise InvalidBaseline("baseline accuracy must be positive")
    return 100.0 * (value_pct - baseline_pct) / baseline_pct


def build_report(records: Iterable[EvalRecord]) -> list[ReportCell]:
    """One cell per (task, order, style) with accuracy and delta vs Random."""
    groups: dict[tuple, list[EvalRecord]] = {}
    for r in records:
        groups.setdefault((r.task, r.order_kind, r.style), []).append(r)
    acc = {key: accuracy(recs) for key, recs in groups.items()}
    cells = []
    for (task, order, style), recs in sorted(
        groups.items(), key=lambda kv: (kv[0][0].value, kv[0][2].value, kv[0][1].value)
    ):
        delta = None
        baseline = acc.get((task, OrderKind.RANDOM, style))
        if baseline is not None and order != OrderKind.RANDOM and baseline > 0:
            delta = improvement(baseline, acc[(task, order, style)])
        cells.append(ReportCell(task, order, style, acc[(task, order, style)], len(recs), delta))
    return cells


def best_orders(cells: Iterable[ReportCell]) -> dict[tuple[TaskKind, PromptStyle], OrderKind]:
    """The empirically best order per (task, style); ties keep the first by name."""
    best: dict[tuple, ReportCell] = {}
    for c in cells:
        key = (c.task, c.style)
        if key not in best or c.accuracy_pct > best[key].accuracy_pct:
            best[key] = c
    return {key: cell.order_kind for key, cell in best.items()}


def render_report(cells: list[ReportCell]) -> str:
    """Aligned plain-text table, one row per cell, plus best-order summary."""
    header = f"{'task':<20} {'style':<14} {'order':<14} {'n':>5} {'acc%':>8} {'delta%':>8}"
    lines = [header, "-" * len(header)]
    for c in cells:
        delta = f"{c.delta_pct:+.2f}" if c.delta_pct is not None else "-"
        lines.append(
            f"{c.task.value:<20} {c.style.value:<14} {c.order_kind.value:<14} "
            f"{c.n:>5} {c.accuracy_pct:>8.2f} {delta:>8}"
        )
    lines.append("")
    lines.append("best order per (task, style):")
    for (task, style), order in sorted(
        best_orders(cells).items(), key=lambda kv: (kv[0][0].value, kv[0][1].value)
    ):
        lines.append(f"  {task.value} / {style.value}: {order.value}")
    return "\n".join(lines) + "\n"


def render_gold_response(inst_task: TaskKind, gold: Answer, query=None) -> str:
    """Scripted model response replaying the gold answer.

    Phrased so that parse_response round-trips it; used by the mock endpoint
    in offline smoke tests.
    """
    if isinstance(gold, YesNo):
        if inst_task == TaskKind.CYCLE:
            return (
                "Yes, there is a cycle in this graph."
                if gold.value
                else "No, there is no cycle in this graph."
            )
        return "The answer is yes." if gold.value else "The answer is no."
    if isinstance(gold, PathAnswer):
        seq = ", ".join(str(n) for n in gold.nodes)
        if inst_task == TaskKind.SHORTEST_PATH:
            u, v = query
            return (
                f"The shortest path from node {u} to node {v} is {seq} "
                f"with a total weight of {gold.weight}."
            )
        return f"Yes. The path can be: {seq}."
    if isinstance(gold, OrderAnswer):
        seq = ", ".join(str(n) for n in gold.nodes)
        return f"The topological sorting of the graph is: {seq}"
    if isinstance(gold, LabelAnswer):
        return f"The label is {gold.label}."
    raise AnswerShapeMismatch(f"cannot render gold answer {gold!r}")
