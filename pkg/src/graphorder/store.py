"""Persistence for benchmark cases: newline-delimited JSON plus a manifest.

Records carry both the edge sequence and the rendered description so strict
readers can audit that the description regenerates byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from . import __about__
from .answers import Answer, answer_from_json, answer_to_json
from .errors import CorruptCase, ParseError, WriteError
from .graph import Edge, EdgeSequence, Graph, OrderKind
from .prompting import PromptStyle, encode_graph
from .solvers import validate_answer
from .tasks import TaskInstance, TaskKind


@dataclass(frozen=True)
class CaseRecord:
    case_id: str
    task: TaskKind
    order_kind: OrderKind
    style: PromptStyle
    seed: int
    graph: Graph
    edge_sequence: tuple[Edge, ...]
    description: str
    question: str
    prompt: str
    query: Optional[Any]
    gold: Answer
    metadata: dict = field(default_factory=dict)

    def instance(self) -> TaskInstance:
        return TaskInstance(self.task, self.graph, self.query, self.gold, dict(self.metadata))


@dataclass(frozen=True)
class DatasetManifest:
    counts: dict[str, int]  # "task|order|style" -> case count
    n_cases: int
    n_graphs: int
    config: dict
    global_seed: int
    version: str

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "global_seed": self.global_seed,
            "n_cases": self.n_cases,
            "n_graphs": self.n_graphs,
            "config": self.config,
            "counts": dict(sorted(self.counts.items())),
        }


def graph_to_json(g: Graph) -> dict:
    out = {
        "directed": g.directed,
        "nodes": sorted(g.nodes),
        "edges": [list(e.as_tuple()) for e in g.sorted_edges()],
    }
    if g.labels is not None:
        out["labels"] = {str(k): v for k, v in sorted(g.labels.items())}
    return out


def graph_from_json(data: dict) -> Graph:
    labels = data.get("labels")
    if labels is not None:
        labels = {int(k): v for k, v in labels.items()}
    return Graph(data["directed"], data["nodes"], [tuple(e) for e in data["edges"]], labels)


def record_to_json(rec: CaseRecord) -> dict:
    return {
        "case_id": rec.case_id,
        "task": rec.task.value,
        "order": rec.order_kind.value,
        "style": rec.style.value,
        "seed": rec.seed,
        "graph": graph_to_json(rec.graph),
        "edge_sequence": [list(e.as_tuple()) for e in rec.edge_sequence],
        "description": rec.description,
        "question": rec.question,
        "prompt": rec.prompt,
        "query": list(rec.query) if isinstance(rec.query, tuple) else rec.query,
        "gold": answer_to_json(rec.gold),
        "metadata": rec.metadata,
    }


def record_from_json(data: dict) -> CaseRecord:
    query = data.get("query")
    if isinstance(query, list):
        query = tuple(query)
    return CaseRecord(
        case_id=data["case_id"],
        task=TaskKind(data["task"]),
        order_kind=OrderKind(data["order"]),
        style=PromptStyle(data["style"]),
        seed=data["seed"],
        graph=graph_from_json(data["graph"]),
        edge_sequence=tuple(Edge(*e) for e in data["edge_sequence"]),
        description=data["description"],
        question=data["question"],
        prompt=data["prompt"],
        query=query,
        gold=answer_from_json(data["gold"]),
        metadata=data.get("metadata", {}),
    )


def build_manifest(records: list[CaseRecord], config: dict, global_seed: int) -> DatasetManifest:
    counts: dict[str, int] = {}
    graphs = set()
    for rec in records:
        key = f"{rec.task.value}|{rec.order_kind.value}|{rec.style.value}"
        counts[key] = counts.get(key, 0) + 1
        graphs.add(rec.graph.signature())
    return DatasetManifest(
        counts=counts,
        n_cases=len(records),
        n_graphs=len(graphs),
        config=config,
        global_seed=global_seed,
        version=__about__.__version__,
    )


def manifest_path(path: str | Path) -> Path:
    return Path(str(path) + ".manifest.json")


def write_cases(
    path: str | Path,
    records: list[CaseRecord],
    config: Optional[dict] = None,
    global_seed: int = 0,
) -> DatasetManifest:
    """Write one JSON record per line plus a manifest sidecar."""
    path = Path(path)
    manifest = build_manifest(records, config or {}, global_seed)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(json.dumps(record_to_json(rec), ensure_ascii=False))
                fh.write("\n")
        manifest_path(path).write_text(
            json.dumps(manifest.to_json(), indent=2, ensure_ascii=False) + "\n"
        )
    except OSError as exc:
        raise WriteError(f"cannot write dataset to {path}: {exc}") from exc
    return manifest


def read_cases(path: str | Path, strict: bool = False) -> list[CaseRecord]:
    """Read all case records; strict mode audits descriptions and golds."""
    records = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = record_from_json(json.loads(line))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise ParseError(lineno, f"malformed case record: {exc}") from exc
            if strict:
                _audit(rec, lineno)
            records.append(rec)
    return records


def _audit(rec: CaseRecord, lineno: int):
    seq = EdgeSequence(rec.order_kind, rec.edge_sequence)
    regenerated = encode_graph(rec.graph, seq, rec.task)
    if regenerated != rec.description:
        raise CorruptCase(f"line {lineno}: description does not regenerate from the edge sequence")
    if not validate_answer(rec.instance(), rec.gold):
        raise CorruptCase(f"line {lineno}: gold answer fails validation")
