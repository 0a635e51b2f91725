"""Dataset persistence: JSONL round trips, manifests, and strict audits."""

import json

import pytest

from graphorder.answers import PathAnswer, YesNo
from graphorder.errors import CorruptCase, ParseError, WriteError
from graphorder.graph import Edge, EdgeSequence, Graph, OrderKind
from graphorder.prompting import PromptStyle, build_prompt, encode_graph, make_question
from graphorder.store import (
    CaseRecord,
    graph_from_json,
    graph_to_json,
    manifest_path,
    read_cases,
    record_from_json,
    record_to_json,
    write_cases,
)
from graphorder.tasks import TaskInstance, TaskKind


def _case(case_id="c1"):
    g = Graph(False, range(3), [(0, 1), (1, 2)])
    seq = EdgeSequence(OrderKind.BFS, (Edge(0, 1), Edge(1, 2)))
    inst = TaskInstance(TaskKind.CONNECTIVITY, g, (0, 2), YesNo(True))
    description = encode_graph(g, seq, inst.task)
    question = make_question(inst)
    return CaseRecord(
        case_id=case_id,
        task=inst.task,
        order_kind=OrderKind.BFS,
        style=PromptStyle.ZERO_SHOT,
        seed=7,
        graph=g,
        edge_sequence=seq.edges,
        description=description,
        question=question,
        prompt=build_prompt(PromptStyle.ZERO_SHOT, description, question),
        query=inst.query,
        gold=inst.gold,
        metadata={"attempt": 0},
    )


def test_graph_json_round_trip():
    g = Graph(True, range(4), [Edge(0, 1, 2), Edge(3, 2, 1)], {0: "a", 1: "?"})
    assert graph_from_json(graph_to_json(g)) == g
    unlabeled = Graph(False, range(3), [(0, 2)])
    assert graph_from_json(graph_to_json(unlabeled)) == unlabeled


def test_record_json_round_trip():
    rec = _case()
    back = record_from_json(record_to_json(rec))
    assert back == rec
    assert back.instance().gold == rec.gold


def test_write_and_read_cases(tmp_path):
    path = tmp_path / "cases.jsonl"
    records = [_case("a"), _case("b")]
    manifest = write_cases(path, records, {"note": "test"}, global_seed=7)
    assert manifest.n_cases == 2
    assert manifest.n_graphs == 1  # both cases share one graph
    assert manifest.counts == {"connectivity|bfs|zero_shot": 2}
    sidecar = json.loads(manifest_path(path).read_text())
    assert sidecar["global_seed"] == 7 and sidecar["config"] == {"note": "test"}
    assert read_cases(path) == records


def test_read_cases_reports_bad_line_number(tmp_path):
    path = tmp_path / "cases.jsonl"
    good = json.dumps(record_to_json(_case()))
    path.write_text(good + "\n{broken\n")
    with pytest.raises(ParseError) as exc:
        read_cases(path)
    assert exc.value.line_number == 2


def test_strict_read_audits_description(tmp_path):
    path = tmp_path / "cases.jsonl"
    row = record_to_json(_case())
    row["description"] = "tampered"
    path.write_text(json.dumps(row) + "\n")
    with pytest.raises(CorruptCase):
        read_cases(path, strict=True)


def test_strict_read_audits_gold(tmp_path):
    g = Graph(False, range(4), [(0, 1), (1, 2), (2, 3), (0, 2)])
    seq = EdgeSequence(OrderKind.RANDOM, tuple(g.sorted_edges()))
    # Gold claims a Hamilton path that skips node 3.
    inst = TaskInstance(TaskKind.HAMILTON_PATH, g, None, PathAnswer((0, 1, 2)))
    description = encode_graph(g, seq, inst.task)
    question = make_question(inst)
    rec = CaseRecord(
        "bad", inst.task, OrderKind.RANDOM, PromptStyle.ZERO_SHOT, 1,
        g, seq.edges, description, question,
        build_prompt(PromptStyle.ZERO_SHOT, description, question),
        None, inst.gold, {},
    )
    path = tmp_path / "cases.jsonl"
    path.write_text(json.dumps(record_to_json(rec)) + "\n")
    with pytest.raises(CorruptCase):
        read_cases(path, strict=True)
    read_cases(path, strict=False)  # non-strict readers accept it


def test_strict_read_accepts_clean_files(tmp_path):
    path = tmp_path / "cases.jsonl"
    write_cases(path, [_case()])
    assert len(read_cases(path, strict=True)) == 1


def test_write_cases_surfaces_os_errors(tmp_path):
    target = tmp_path / "blocker"
    target.write_text("a file, not a directory")
    with pytest.raises(WriteError):
        write_cases(target / "cases.jsonl", [_case()])


def test_shortest_path_record_round_trip(tmp_path):
    g = Graph(False, range(3), [Edge(0, 1, 2), Edge(1, 2, 3)])
    seq = EdgeSequence(OrderKind.SHORTEST_PATH, (Edge(0, 1, 2), Edge(1, 2, 3)))
    inst = TaskInstance(TaskKind.SHORTEST_PATH, g, (0, 2), PathAnswer((0, 1, 2), 5))
    description = encode_graph(g, seq, inst.task)
    question = make_question(inst)
    rec = CaseRecord(
        "sp", inst.task, OrderKind.SHORTEST_PATH, PromptStyle.ZERO_SHOT, 1,
        g, seq.edges, description, question,
        build_prompt(PromptStyle.ZERO_SHOT, description, question),
        inst.query, inst.gold, {},
    )
    path = tmp_path / "cases.jsonl"
    write_cases(path, [rec])
    assert read_cases(path, strict=True) == [rec]
