"""Pipeline stages, stage chaining, determinism, and the CLI front end."""

import json
from pathlib import Path

import pytest

from graphorder.cli import build_parser, config_from_args, main
from graphorder.gateway import ModelEndpoint
from graphorder.generate import GenConfig
from graphorder.graph import MAIN_ORDERS, OrderKind
from graphorder.pipeline import (
    MOCK_GOLD_URL,
    PipelineConfig,
    run_pipeline,
    stage_generate,
    stage_order,
    stage_prompt,
    synthesize_source,
)
from graphorder.prompting import PromptStyle
from graphorder.store import read_cases
from graphorder.tasks import TaskKind


def _mini_config(out_dir, **kw):
    kw.setdefault("seed", 5)
    kw.setdefault("tasks", (TaskKind.CONNECTIVITY, TaskKind.SHORTEST_PATH))
    kw.setdefault("orders", MAIN_ORDERS)
    kw.setdefault("styles", (PromptStyle.ZERO_SHOT,))
    kw.setdefault("graphs_per_task", 2)
    kw.setdefault("endpoint", ModelEndpoint(base_url=MOCK_GOLD_URL, model="mock"))
    return PipelineConfig(out_dir=Path(out_dir), **kw)


def _read_jsonl(path):
    return [json.loads(line) for line in Path(path).read_text().splitlines() if line]


def test_stage_generate_writes_distinct_solvable_instances(tmp_path):
    cfg = _mini_config(tmp_path, graphs_per_task=5)
    rows = stage_generate(cfg)
    assert len(rows) == 10
    sigs = {json.dumps(r["graph"], sort_keys=True) for r in rows}
    assert len(sigs) == 10  # graphs are globally deduplicated
    ids = [r["instance_id"] for r in rows]
    assert ids == sorted(ids) and len(set(ids)) == len(ids)


def test_stage_order_expands_main_orders_and_skips_extremes(tmp_path):
    cfg = _mini_config(tmp_path, orders=tuple(OrderKind))
    stage_generate(cfg)
    rows = stage_order(cfg)
    by_task = {}
    for r in rows:
        by_task.setdefault(r["task"], set()).add(r["order"])
    # Witness-path orders only exist for the shortest-path task.
    assert by_task["connectivity"] == {o.value for o in MAIN_ORDERS}
    assert by_task["shortest_path"] == {o.value for o in OrderKind}
    for r in rows:
        graph_edges = {tuple(e[:2]) for e in r["graph"]["edges"]}
        seq = [tuple(sorted(e[:2])) for e in r["edge_sequence"]]
        assert set(seq) == graph_edges and len(seq) == len(graph_edges)


def test_stage_prompt_builds_cases_for_each_style(tmp_path):
    cfg = _mini_config(
        tmp_path, styles=(PromptStyle.ZERO_SHOT, PromptStyle.COT_BAG)
    )
    stage_generate(cfg)
    stage_order(cfg)
    manifest = stage_prompt(cfg)
    assert manifest.n_cases == 2 * 2 * 5 * 2  # tasks x graphs x orders x styles
    records = read_cases(cfg.path("cases.jsonl"), strict=True)
    assert {r.style for r in records} == {PromptStyle.ZERO_SHOT, PromptStyle.COT_BAG}
    for r in records:
        assert r.prompt.endswith("Answer:")
        assert r.description in r.prompt


def test_full_pipeline_with_mock_endpoint_is_perfect(tmp_path):
    cfg = _mini_config(tmp_path)
    assert run_pipeline(cfg) == 0
    for name in ("instances.jsonl", "ordered.jsonl", "cases.jsonl",
                 "responses.jsonl", "records.jsonl", "report.jsonl", "report.txt"):
        assert cfg.path(name).exists()
    cells = _read_jsonl(cfg.path("report.jsonl"))
    assert cells and all(c["accuracy_pct"] == 100.0 for c in cells)
    assert all(r["correct"] for r in _read_jsonl(cfg.path("records.jsonl")))


def test_pipeline_is_deterministic_across_runs(tmp_path):
    cfg_a = _mini_config(tmp_path / "a")
    cfg_b = _mini_config(tmp_path / "b")
    for cfg in (cfg_a, cfg_b):
        cfg.stages = ("generate", "order", "prompt")
        assert run_pipeline(cfg) == 0
    for name in ("instances.jsonl", "ordered.jsonl", "cases.jsonl"):
        assert cfg_a.path(name).read_bytes() == cfg_b.path(name).read_bytes()


def test_pipeline_missing_dependency_writes_error_summary(tmp_path):
    cfg = _mini_config(tmp_path, stages=("order",))
    assert run_pipeline(cfg) == 1
    err = json.loads(cfg.path("errors.json").read_text())
    assert err["stage"] == "order"
    assert err["error"] == "StageDependencyError"


def test_node_classification_flows_through_pipeline(tmp_path):
    cfg = _mini_config(
        tmp_path,
        tasks=(TaskKind.NODE_CLASSIFICATION,),
        samples_per_source=2,
        synth_sources=1,
    )
    assert run_pipeline(cfg) == 0
    rows = _read_jsonl(cfg.path("instances.jsonl"))
    assert len(rows) == 4  # 1 source x 2 samplers x 2 samples
    assert {r["metadata"]["sampler"] for r in rows} == {"ego", "forest_fire"}
    cells = _read_jsonl(cfg.path("report.jsonl"))
    assert all(c["accuracy_pct"] == 100.0 for c in cells)


def test_synthesize_source_is_labeled_and_deterministic():
    a = synthesize_source("s0", seed=3)
    b = synthesize_source("s0", seed=3)
    assert a == b
    assert a.labels and set(a.labels) == a.nodes


def test_cli_parses_flags_into_config(tmp_path):
    parser = build_parser()
    args = parser.parse_args([
        "--out-dir", str(tmp_path),
        "--seed", "11",
        "--tasks", "cycle,topo_sort",
        "--orders", "random,bfs",
        "--styles", "zero_shot,cot",
        "--graphs-per-task", "3",
        "--n-min", "4", "--n-max", "6",
        "--model", "m1",
        "--temperature", "0.2",
        "all",
    ])
    cfg = config_from_args(args)
    assert cfg.seed == 11
    assert cfg.tasks == (TaskKind.CYCLE, TaskKind.TOPO_SORT)
    assert cfg.orders == (OrderKind.RANDOM, OrderKind.BFS)
    assert cfg.styles == (PromptStyle.ZERO_SHOT, PromptStyle.COT)
    assert cfg.graphs_per_task == 3
    assert cfg.gen == GenConfig(n_min=4, n_max=6, seed=11)
    assert cfg.endpoint.model == "m1"
    assert cfg.endpoint.temperature == 0.2
    assert cfg.stages == ("generate", "order", "prompt", "run", "score", "report")


def test_cli_end_to_end_with_mock_endpoint(tmp_path):
    rc = main([
        "--out-dir", str(tmp_path),
        "--seed", "2",
        "--tasks", "cycle",
        "--graphs-per-task", "2",
        "all",
    ])
    assert rc == 0
    report = (tmp_path / "report.txt").read_text()
    assert "100.00" in report
    assert "best order per (task, style):" in report


def test_cli_rejects_bad_source_spec():
    parser = build_parser()
    args = parser.parse_args(["--source", "nonsense", "generate"])
    with pytest.raises(SystemExit):
        config_from_args(args)
