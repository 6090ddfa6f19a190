"""JSON document format for graphs, orientations and flows.

Schema::

    {
      "vertices": ["u", "v"],
      "edges": [{"id": "a", "ends": ["u", "u"], "sign": -1}, ...],
      "orientation": {"a": [1, 1], ...},      # optional, s0 * s1 == -sign
      "flow": {"a": 1, ...}                    # optional, missing edges are 0
    }

An orientation may be partial; commands that need a total one fill the gaps
with the default orientation (value +1 at slot 0).
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .core import (Edge, GraphError, IntFlow, Orientation, SignedFlowError, SignedGraph,
                   validate_graph)


class ParseError(SignedFlowError, ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass
class Document:
    graph: SignedGraph
    orientation: Orientation | None = None
    flow: IntFlow | None = None
    digest: str = ""

    def eps(self) -> Orientation:
        """The stated orientation completed by the default on unlisted edges."""
        base = Orientation.default(self.graph).to_dict()
        if self.orientation is not None:
            base.update(self.orientation.to_dict())
        return Orientation(self.graph, {e: tuple(v) for e, v in base.items()})


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _parse_graph(data: dict) -> SignedGraph:
    if not isinstance(data, dict):
        raise ParseError("$", "document must be a JSON object")
    verts = data.get("vertices")
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise ParseError("vertices", "expected a list of string ids")
    raw = data.get("edges")
    if not isinstance(raw, list):
        raise ParseError("edges", "expected a list")
    edges = []
    for i, item in enumerate(raw):
        where = f"edges[{i}]"
        if not isinstance(item, dict):
            raise ParseError(where, "expected an object")
        eid, ends, sign = item.get("id"), item.get("ends"), item.get("sign")
        if not isinstance(eid, str):
            raise ParseError(f"{where}.id", "expected a string")
        if not (isinstance(ends, list) and len(ends) == 2 and all(isinstance(v, str) for v in ends)):
            raise ParseError(f"{where}.ends", "expected two vertex ids")
        if not _is_int(sign):
            raise ParseError(f"{where}.sign", "expected +1 or -1")
        edges.append(Edge(eid, tuple(ends), sign))
    g = SignedGraph(verts, edges)
    problems = validate_graph(g)
    if problems:
        raise GraphError(problems)
    return g


def _parse_orientation(g: SignedGraph, raw) -> Orientation:
    if not isinstance(raw, dict):
        raise ParseError("orientation", "expected an object keyed by edge id")
    vals = {}
    for eid, pair in raw.items():
        where = f"orientation.{eid}"
        if eid not in g.edge_ids():
            raise ParseError(where, "unknown edge")
        if not (isinstance(pair, list) and len(pair) == 2 and all(_is_int(x) and x in (-1, 1) for x in pair)):
            raise ParseError(where, "expected [s0, s1] with values in {-1, +1}")
        if pair[0] * pair[1] != -g.sign(eid):
            raise ParseError(where, f"slot product {pair[0] * pair[1]} violates s0*s1 = -sign = {-g.sign(eid)} "
                                    f"on edge {eid!r}")
        vals[eid] = (pair[0], pair[1])
    return Orientation(g, vals)


def _parse_flow(g: SignedGraph, raw) -> IntFlow:
    if not isinstance(raw, dict):
        raise ParseError("flow", "expected an object keyed by edge id")
    for eid, x in raw.items():
        if eid not in g.edge_ids():
            raise ParseError(f"flow.{eid}", "unknown edge")
        if not _is_int(x):
            raise ParseError(f"flow.{eid}", "expected an integer")
    return IntFlow(g, raw)


def parse_document(data: dict) -> Document:
    g = _parse_graph(data)
    eps = _parse_orientation(g, data["orientation"]) if data.get("orientation") is not None else None
    flow = _parse_flow(g, data["flow"]) if data.get("flow") is not None else None
    digest = hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()
    return Document(g, eps, flow, digest)


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return parse_document(data)


def load(path: str | Path) -> Document:
    return loads(Path(path).read_text())


def to_document(g: SignedGraph, eps: Orientation | None = None, flow: IntFlow | None = None) -> dict:
    out: dict = {"vertices": list(g.vertices),
                 "edges": [{"id": e.id, "ends": list(e.ends), "sign": e.sign} for e in g.edges]}
    if eps is not None:
        out["orientation"] = {e: list(eps.pair(e)) for e in g.sort_edges(eps.edges)}
    if flow is not None:
        out["flow"] = dict(flow.items())
    return out


def dumps(obj) -> str:
    """Stable JSON used for every report (sorted keys, two-space indent)."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
