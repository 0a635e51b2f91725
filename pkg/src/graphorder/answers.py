"""Answer value types shared by solvers, generation, and evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union


@dataclass(frozen=True)
class YesNo:
    value: bool


@dataclass(frozen=True)
class PathAnswer:
    nodes: tuple[int, ...]
    weight: Optional[int] = None


@dataclass(frozen=True)
class OrderAnswer:
    nodes: tuple[int, ...]


@dataclass(frozen=True)
class LabelAnswer:
    label: str


@dataclass(frozen=True)
class Unparsed:
    reason: str


Answer = Union[YesNo, PathAnswer, OrderAnswer, LabelAnswer, Unparsed]

_KINDS = {
    YesNo: "yes_no",
    PathAnswer: "path",
    OrderAnswer: "order",
    LabelAnswer: "label",
    Unparsed: "unparsed",
}


def answer_to_json(ans: Answer) -> dict:
    kind = _KINDS[type(ans)]
    if isinstance(ans, YesNo):
        return {"kind": kind, "value": ans.value}
    if isinstance(ans, PathAnswer):
        out = {"kind": kind, "nodes": list(ans.nodes)}
        if ans.weight is not None:
            out["weight"] = ans.weight
        return out
    if isinstance(ans, OrderAnswer):
        return {"kind": kind, "nodes": list(ans.nodes)}
    if isinstance(ans, LabelAnswer):
        return {"kind": kind, "label": ans.label}
    return {"kind": kind, "reason": ans.reason}


def answer_from_json(data: dict) -> Answer:
    kind = data["kind"]
    if kind == "yes_no":
        return YesNo(bool(data["value"]))
    if kind == "path":
        return PathAnswer(tuple(data["nodes"]), data.get("weight"))
    if kind == "order":
        return OrderAnswer(tuple(data["nodes"]))
    if kind == "label":
        return LabelAnswer(str(data["label"]))
    if kind == "unparsed":
        return Unparsed(str(data.get("reason", "")))
    raise ValueError(f"unknown answer kind: {kind!r}")
