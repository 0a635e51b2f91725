"""File-to-file pipeline stages: generate -> order -> prompt -> run -> score -> report.

Stages communicate only through files under one output directory, so every
intermediate artifact is auditable and any stage can be re-run idempotently.
All randomness derives from the global seed via stable sub-seed hashing.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from .answers import answer_from_json, answer_to_json
from .errors import GraphOrderError, StageDependencyError
from .evaluation import (
    EvalRecord,
    ReportCell,
    build_report,
    order_variance,
    parse_response,
    render_gold_response,
    render_report,
    score_case,
)
from .gateway import ModelEndpoint, cached_complete
from .generate import (
    GenConfig,
    gen_er,
    gen_task_instance,
    load_labeled_graph,
    make_classification_instance,
)
from .graph import Edge, EdgeSequence, Graph, MAIN_ORDERS, OrderKind
from .ordering import OrderContext, order_edges
from .prompting import (
    PromptStyle,
    build_prompt,
    encode_graph,
    exemplars_for,
    load_exemplar_bank,
    make_question,
)
from .ranking import build_personalization, pagerank, personalized_pagerank
from .seeding import derive_seed
from .solvers import longest_simple_path
from .store import (
    CaseRecord,
    graph_from_json,
    graph_to_json,
    read_cases,
    write_cases,
)
from .tasks import TRADITIONAL_TASKS, TaskInstance, TaskKind

MOCK_GOLD_URL = "mock://gold"

STAGES = ("generate", "order", "prompt", "run", "score", "report")


@dataclass
class PipelineConfig:
    out_dir: Path
    seed: int = 0
    stages: tuple[str, ...] = STAGES
    tasks: tuple[TaskKind, ...] = TRADITIONAL_TASKS + (TaskKind.NODE_CLASSIFICATION,)
    orders: tuple[OrderKind, ...] = MAIN_ORDERS
    styles: tuple[PromptStyle, ...] = (PromptStyle.ZERO_SHOT,)
    gen: GenConfig = field(default_factory=GenConfig)
    graphs_per_task: int = 280
    samples_per_source: int = 50
    sources: dict[str, tuple[Path, Path]] = field(default_factory=dict)
    synth_sources: int = 0
    ego_hops: int = 3
    fire_p: float = 0.3
    subgraph_cap: int = 50
    endpoint: Optional[ModelEndpoint] = None
    workers: int = 4
    strict_read: bool = False

    def path(self, name: str) -> Path:
        return Path(self.out_dir) / name


# -- instance (de)serialization ----------------------------------------------


def _instance_to_json(instance_id: str, seed: int, inst: TaskInstance) -> dict:
    return {
        "instance_id": instance_id,
        "task": inst.task.value,
        "seed": seed,
        "graph": graph_to_json(inst.graph),
        "query": list(inst.query) if isinstance(inst.query, tuple) else inst.query,
        "gold": answer_to_json(inst.gold),
        "metadata": inst.metadata,
    }


def _instance_from_json(data: dict) -> tuple[str, int, TaskInstance]:
    query = data.get("query")
    if isinstance(query, list):
        query = tuple(query)
    inst = TaskInstance(
        TaskKind(data["task"]),
        graph_from_json(data["graph"]),
        query,
        answer_from_json(data["gold"]),
        data.get("metadata", {}),
    )
    return data["instance_id"], data["seed"], inst


def _write_jsonl(path: Path, rows: list[dict]):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False))
            fh.write("\n")


def _read_jsonl(path: Path) -> list[dict]:
    rows = []
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append(json.loads(line))
    return rows


# -- generate ------------------------------------------------------------------


def synthesize_source(name: str, seed: int, n: int = 150, p: float = 0.04,
                      n_labels: int = 7) -> Graph:
    """A synthetic labeled graph standing in for a real attributed dataset."""
    g = gen_er(GenConfig(n_min=n, n_max=n, p=p, seed=seed))
    rng = random.Random(derive_seed(seed, "labels", name))
    labels = {v: str(rng.randrange(n_labels)) for v in g.nodes}
    return Graph(False, g.nodes, g.edges, labels)


def _load_sources(cfg: PipelineConfig) -> dict[str, Graph]:
    sources: dict[str, Graph] = {}
    for name, (edge_path, label_path) in sorted(cfg.sources.items()):
        sources[name] = load_labeled_graph(edge_path, label_path)
    for i in range(cfg.synth_sources):
        name = f"synthetic{i}"
        sources[name] = synthesize_source(name, derive_seed(cfg.seed, "source", name))
    return sources


def stage_generate(cfg: PipelineConfig) -> list[dict]:
    """Draw solvable task instances; graphs are globally distinct by signature."""
    rows: list[dict] = []
    seen_graphs: set = set()

    for task in cfg.tasks:
        if task == TaskKind.NODE_CLASSIFICATION:
            continue
        for i in range(cfg.graphs_per_task):
            for salt in itertools.count():
                seed = derive_seed(cfg.seed, "gen", task.value, i, salt)
                inst = gen_task_instance(task, replace(cfg.gen, seed=seed))
                sig = inst.graph.signature()
                if sig not in seen_graphs:
                    seen_graphs.add(sig)
                    break
            rows.append(_instance_to_json(f"{task.value}-{i:04d}", seed, inst))

    if TaskKind.NODE_CLASSIFICATION in cfg.tasks:
        for name, source in _load_sources(cfg).items():
            for sampler in ("ego", "forest_fire"):
                for i in range(cfg.samples_per_source):
                    for salt in itertools.count():
                        seed = derive_seed(cfg.seed, "t6", name, sampler, i, salt)
                        inst = make_classification_instance(
                            source,
                            sampler,
                            seed,
                            hops=cfg.ego_hops,
                            p_burn=cfg.fire_p,
                            max_nodes=cfg.subgraph_cap,
                            source_name=name,
                        )
                        sig = inst.graph.signature()
                        if sig not in seen_graphs:
                            seen_graphs.add(sig)
                            break
                    rows.append(
                        _instance_to_json(f"node_classification-{name}-{sampler}-{i:04d}", seed, inst)
                    )

    _write_jsonl(cfg.path("instances.jsonl"), rows)
    return rows


# -- order ---------------------------------------------------------------------


def _context_for(cfg: PipelineConfig, instance_id: str, inst: TaskInstance,
                 kind: OrderKind) -> OrderContext:
    seed = derive_seed(cfg.seed, "order", instance_id, kind.value)
    if kind == OrderKind.PAGERANK:
        return OrderContext(seed=seed, scores=pagerank(inst.graph))
    if kind == OrderKind.PPR:
        pv = build_personalization(inst)
        return OrderContext(seed=seed, scores=personalized_pagerank(inst.graph, pv))
    if kind == OrderKind.SHORTEST_PATH:
        return OrderContext(seed=seed, witness_path=inst.gold.nodes)
    if kind == OrderKind.LONGEST_PATH:
        u, v = inst.query
        return OrderContext(seed=seed, witness_path=longest_simple_path(inst.graph, u, v))
    return OrderContext(seed=seed)


def stage_order(cfg: PipelineConfig) -> list[dict]:
    src = cfg.path("instances.jsonl")
    if not src.exists():
        raise StageDependencyError(f"order stage needs {src}")
    rows = []
    for data in _read_jsonl(src):
        instance_id, seed, inst = _instance_from_json(data)
        for kind in cfg.orders:
            if kind in (OrderKind.SHORTEST_PATH, OrderKind.LONGEST_PATH):
                if inst.task != TaskKind.SHORTEST_PATH:
                    continue
            ctx = _context_for(cfg, instance_id, inst, kind)
            seq = order_edges(inst.graph, kind, ctx)
            row = dict(data)
            row["order"] = kind.value
            row["edge_sequence"] = [list(e.as_tuple()) for e in seq.edges]
            rows.append(row)
    _write_jsonl(cfg.path("ordered.jsonl"), rows)
    return rows


# -- prompt ----------------------------------------------------------------------


def stage_prompt(cfg: PipelineConfig):
    src = cfg.path("ordered.jsonl")
    if not src.exists():
        raise StageDependencyError(f"prompt stage needs {src}")
    bank = load_exemplar_bank()
    records: list[CaseRecord] = []
    for data in _read_jsonl(src):
        instance_id, seed, inst = _instance_from_json(data)
        kind = OrderKind(data["order"])
        seq = EdgeSequence(kind, tuple(Edge(*e) for e in data["edge_sequence"]))
        description = encode_graph(inst.graph, seq, inst.task)
        question = make_question(inst)
        for style in cfg.styles:
            prompt = build_prompt(
                style, description, question, exemplars_for(inst.task, style, bank)
            )
            records.append(
                CaseRecord(
                    case_id=f"{instance_id}|{kind.value}|{style.value}",
                    task=inst.task,
                    order_kind=kind,
                    style=style,
                    seed=seed,
                    graph=inst.graph,
                    edge_sequence=seq.edges,
                    description=description,
                    question=question,
                    prompt=prompt,
                    query=inst.query,
                    gold=inst.gold,
                    metadata=inst.metadata,
                )
            )
    config = {
        "gen": {
            "n_min": cfg.gen.n_min,
            "n_max": cfg.gen.n_max,
            "p": cfg.gen.p,
            "weight_min": cfg.gen.weight_min,
            "weight_max": cfg.gen.weight_max,
        },
        "graphs_per_task": cfg.graphs_per_task,
        "samples_per_source": cfg.samples_per_source,
        "ego_hops": cfg.ego_hops,
        "fire_p": cfg.fire_p,
        "subgraph_cap": cfg.subgraph_cap,
        "tasks": [t.value for t in cfg.tasks],
        "orders": [o.value for o in cfg.orders],
        "styles": [s.value for s in cfg.styles],
    }
    return write_cases(cfg.path("cases.jsonl"), records, config, cfg.seed)


# -- run ---------------------------------------------------------------------------


def _respond(cfg: PipelineConfig, rec: CaseRecord) -> dict:
    ep = cfg.endpoint
    if ep is not None and ep.base_url == MOCK_GOLD_URL:
        text = render_gold_response(rec.task, rec.gold, rec.query)
        return {"case_id": rec.case_id, "text": text, "cached": False}
    if ep is None:
        raise StageDependencyError("run stage needs an endpoint (or the mock gold endpoint)")
    try:
        result = cached_complete(ep, rec.prompt, cfg.path("cache"))
        return {"case_id": rec.case_id, "text": result.text, "cached": result.cached}
    except GraphOrderError as exc:
        # Per-case failures are recorded; the run continues.
        return {"case_id": rec.case_id, "text": None, "error": str(exc)}


def stage_run(cfg: PipelineConfig) -> list[dict]:
    src = cfg.path("cases.jsonl")
    if not src.exists():
        raise StageDependencyError(f"run stage needs {src}")
    records = read_cases(src, strict=cfg.strict_read)
    if cfg.endpoint is not None and cfg.endpoint.base_url != MOCK_GOLD_URL and cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(lambda r: _respond(cfg, r), records))
    else:
        rows = [_respond(cfg, rec) for rec in records]
    _write_jsonl(cfg.path("responses.jsonl"), rows)
    return rows


# -- score --------------------------------------------------------------------------


def stage_score(cfg: PipelineConfig) -> list[EvalRecord]:
    cases_path = cfg.path("cases.jsonl")
    responses_path = cfg.path("responses.jsonl")
    for p in (cases_path, responses_path):
        if not p.exists():
            raise StageDependencyError(f"score stage needs {p}")
    cases = {rec.case_id: rec for rec in read_cases(cases_path, strict=cfg.strict_read)}
    eval_records = []
    rows = []
    for resp in _read_jsonl(responses_path):
        rec = cases[resp["case_id"]]
        text = resp.get("text") or ""
        parsed = parse_response(rec.task, text)
        correct = score_case(rec.instance(), parsed)
        eval_records.append(
            EvalRecord(rec.case_id, rec.task, rec.order_kind, rec.style, text, parsed, correct)
        )
        rows.append(
            {
                "case_id": rec.case_id,
                "task": rec.task.value,
                "order": rec.order_kind.value,
                "style": rec.style.value,
                "response": text,
                "parsed": answer_to_json(parsed),
                "correct": correct,
            }
        )
    _write_jsonl(cfg.path("records.jsonl"), rows)
    return eval_records


# -- report ---------------------------------------------------------------------------


def _records_from_rows(rows: list[dict]) -> list[EvalRecord]:
    return [
        EvalRecord(
            row["case_id"],
            TaskKind(row["task"]),
            OrderKind(row["order"]),
            PromptStyle(row["style"]),
            row["response"],
            answer_from_json(row["parsed"]),
            row["correct"],
        )
        for row in rows
    ]


def task_variances(cells: list[ReportCell]) -> dict[TaskKind, float]:
    """Variance of order-average accuracy per task (fractions, not percent)."""
    by_task: dict[TaskKind, dict[OrderKind, list[float]]] = {}
    for c in cells:
        by_task.setdefault(c.task, {}).setdefault(c.order_kind, []).append(c.accuracy_pct)
    out = {}
    for task, per_order in by_task.items():
        if len(per_order) < 2:
            continue
        averages = {
            order: (sum(vals) / len(vals)) / 100.0 for order, vals in per_order.items()
        }
        out[task] = order_variance(averages)
    return out


def stage_report(cfg: PipelineConfig) -> list[ReportCell]:
    src = cfg.path("records.jsonl")
    if not src.exists():
        raise StageDependencyError(f"report stage needs {src}")
    records = _records_from_rows(_read_jsonl(src))
    cells = build_report(records)
    text = render_report(cells)
    variances = task_variances(cells)
    if variances:
        lines = ["", "accuracy variance across orders per task:"]
        for task, var in sorted(variances.items(), key=lambda kv: kv[0].value):
            lines.append(f"  {task.value}: {var:.6f}")
        text += "\n".join(lines) + "\n"
    cfg.path("report.txt").write_text(text)
    _write_jsonl(
        cfg.path("report.jsonl"),
        [
            {
                "task": c.task.value,
                "order": c.order_kind.value,
                "style": c.style.value,
                "n": c.n,
                "accuracy_pct": c.accuracy_pct,
                "delta_pct": c.delta_pct,
            }
            for c in cells
        ],
    )
    return cells


_STAGE_FUNCS = {
    "generate": stage_generate,
    "order": stage_order,
    "prompt": stage_prompt,
    "run": stage_run,
    "score": stage_score,
    "report": stage_report,
}


def run_pipeline(cfg: PipelineConfig) -> int:
    """Execute the selected stages in order; 0 on success.

    On failure an error summary is written next to the other artifacts and a
    nonzero status is returned.
    """
    Path(cfg.out_dir).mkdir(parents=True, exist_ok=True)
    for stage in cfg.stages:
        if stage not in _STAGE_FUNCS:
            raise ValueError(f"unknown stage {stage!r}")
        try:
            _STAGE_FUNCS[stage](cfg)
        except Exception as exc:  # surfaced via the error summary file
            cfg.path("errors.json").write_text(
                json.dumps({"stage": stage, "error": type(exc).__name__, "message": str(exc)})
                + "\n"
            )
            return 1
    return 0
