"""Command-line front end for the benchmark pipeline.

Subcommands map one-to-one onto the pipeline stages; `all` chains every
stage. Only the `run` stage touches the network (unless pointed at the
built-in mock gold endpoint), so generation, scoring, and reporting are fully
offline and reproducible from the global seed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .gateway import ModelEndpoint
from .generate import GenConfig
from .graph import MAIN_ORDERS, OrderKind
from .pipeline import MOCK_GOLD_URL, STAGES, PipelineConfig, run_pipeline
from .prompting import PromptStyle
from .tasks import TRADITIONAL_TASKS, TaskKind


def _parse_tasks(text: str) -> tuple[TaskKind, ...]:
    if text == "all":
        return TRADITIONAL_TASKS + (TaskKind.NODE_CLASSIFICATION,)
    return tuple(TaskKind(t.strip()) for t in text.split(","))


def _parse_orders(text: str) -> tuple[OrderKind, ...]:
    if text == "main":
        return MAIN_ORDERS
    if text == "all":
        return tuple(OrderKind)
    return tuple(OrderKind(o.strip()) for o in text.split(","))


def _parse_styles(text: str) -> tuple[PromptStyle, ...]:
    if text == "all":
        return tuple(PromptStyle)
    return tuple(PromptStyle(s.strip()) for s in text.split(","))


def _parse_sources(entries: list[str]) -> dict[str, tuple[Path, Path]]:
    sources = {}
    for entry in entries:
        try:
            name, paths = entry.split("=", 1)
            edge_path, label_path = paths.split(",", 1)
        except ValueError:
            raise SystemExit(f"--source expects NAME=EDGEFILE,LABELFILE, got {entry!r}")
        sources[name] = (Path(edge_path), Path(label_path))
    return sources


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphorder",
        description="Generate, prompt, run, and score graph-reasoning benchmarks "
        "with controllable edge description orders.",
    )
    parser.add_argument("--out-dir", type=Path, default=Path("out"), help="artifact directory")
    parser.add_argument("--seed", type=int, default=0, help="global seed")
    parser.add_argument("--tasks", type=_parse_tasks, default="all",
                        help="comma-separated task names, or 'all'")
    parser.add_argument("--orders", type=_parse_orders, default="main",
                        help="comma-separated order names, 'main' (5 orders) or 'all' (7)")
    parser.add_argument("--styles", type=_parse_styles, default="zero_shot",
                        help="comma-separated prompt styles, or 'all'")
    parser.add_argument("--graphs-per-task", type=int, default=280)
    parser.add_argument("--samples-per-source", type=int, default=50)
    parser.add_argument("--source", action="append", default=[],
                        metavar="NAME=EDGEFILE,LABELFILE",
                        help="labeled source graph for node classification (repeatable)")
    parser.add_argument("--synth-sources", type=int, default=0,
                        help="synthesize N labeled source graphs instead of loading files")
    parser.add_argument("--n-min", type=int, default=5)
    parser.add_argument("--n-max", type=int, default=15)
    parser.add_argument("--p", type=float, default=0.3)
    parser.add_argument("--weight-min", type=int, default=1)
    parser.add_argument("--weight-max", type=int, default=4)
    parser.add_argument("--ego-hops", type=int, default=3)
    parser.add_argument("--fire-p", type=float, default=0.3)
    parser.add_argument("--subgraph-cap", type=int, default=50)
    parser.add_argument("--base-url", default=MOCK_GOLD_URL,
                        help=f"endpoint base URL; {MOCK_GOLD_URL!r} replays gold answers")
    parser.add_argument("--model", default="mock")
    parser.add_argument("--api-key-env", default="GRAPHORDER_API_KEY")
    parser.add_argument("--temperature", type=float, default=0.0)
    parser.add_argument("--timeout", type=float, default=60.0)
    parser.add_argument("--max-retries", type=int, default=3)
    parser.add_argument("--rate-limit", type=float, default=None,
                        help="max requests per second")
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--strict", action="store_true",
                        help="audit descriptions and golds when reading case files")
    parser.add_argument(
        "stage",
        choices=STAGES + ("all",),
        help="pipeline stage to run ('all' chains every stage)",
    )
    return parser


def config_from_args(args: argparse.Namespace) -> PipelineConfig:
    isinstance_str = isinstance(args.tasks, str)
    tasks = _parse_tasks(args.tasks) if isinstance_str else args.tasks
    orders = _parse_orders(args.orders) if isinstance(args.orders, str) else args.orders
    styles = _parse_styles(args.styles) if isinstance(args.styles, str) else args.styles
    endpoint = ModelEndpoint(
        base_url=args.base_url,
        model=args.model,
        api_key_env=args.api_key_env,
        temperature=args.temperature,
        timeout=args.timeout,
        max_retries=args.max_retries,
        rate_limit_per_s=args.rate_limit,
    )
    stages = STAGES if args.stage == "all" else (args.stage,)
    return PipelineConfig(
        out_dir=args.out_dir,
        seed=args.seed,
        stages=stages,
        tasks=tasks,
        orders=orders,
        styles=styles,
        gen=GenConfig(
            n_min=args.n_min,
            n_max=args.n_max,
            p=args.p,
            weight_min=args.weight_min,
            weight_max=args.weight_max,
            seed=args.seed,
        ),
        graphs_per_task=args.graphs_per_task,
        samples_per_source=args.samples_per_source,
        sources=_parse_sources(args.source),
        synth_sources=args.synth_sources,
        ego_hops=args.ego_hops,
        fire_p=args.fire_p,
        subgraph_cap=args.subgraph_cap,
        endpoint=endpoint,
        workers=args.workers,
        strict_read=args.strict,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    return run_pipeline(cfg)


if __name__ == "__main__":
    sys.exit(main())
