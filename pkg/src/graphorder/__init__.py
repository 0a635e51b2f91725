"""Benchmark generation and evaluation for graph reasoning over text.

The toolkit generates task graphs, serializes them under controllable edge
description orders, builds prompts in several styles, scores model responses
against exact solvers, and reports order-sensitivity metrics.
"""

from .__about__ import __version__
from .answers import LabelAnswer, OrderAnswer, PathAnswer, Unparsed, YesNo
from .graph import Edge, EdgeSequence, Graph, OrderKind, line_graph
from .tasks import TaskInstance, TaskKind
from .generate import GenConfig, gen_er, gen_task_instance
from .ordering import OrderContext, order_edges
from .ranking import build_personalization, pagerank, personalized_pagerank
from .prompting import PromptStyle, build_prompt, encode_graph, make_question
from .evaluation import accuracy, improvement, order_variance, parse_response, score_case
from .solvers import (
    connected_pair,
    find_cycle,
    hamilton_path,
    longest_simple_path,
    shortest_path,
    topo_sort,
    validate_answer,
)

__all__ = [
    "__version__",
    "Edge",
    "EdgeSequence",
    "Graph",
    "OrderKind",
    "line_graph",
    "TaskInstance",
    "TaskKind",
    "GenConfig",
    "gen_er",
    "gen_task_instance",
    "OrderContext",
    "order_edges",
    "pagerank",
    "personalized_pagerank",
    "build_personalization",
    "PromptStyle",
    "encode_graph",
    "make_question",
    "build_prompt",
    "parse_response",
    "score_case",
    "accuracy",
    "order_variance",
    "improvement",
    "connected_pair",
    "find_cycle",
    "hamilton_path",
    "shortest_path",
    "topo_sort",
    "longest_simple_path",
    "validate_answer",
    "YesNo",
    "PathAnswer",
    "OrderAnswer",
    "LabelAnswer",
    "Unparsed",
]
