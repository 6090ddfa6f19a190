"""Graphviz DOT rendering.

Slot value +1 draws an arrowhead pointing into the vertex at that end, -1
an arrowhead pointing away (``inv``).  Negative edges are dashed.  Block
cycles become clusters and block-path edges are bold.
"""
from __future__ import annotations

from .core import Edge, IntFlow, Orientation, SignedGraph
from .cycletree import CycleTree


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _arrow(value: int | None) -> str:
    if value is None:
        return "none"
    return "normal" if value > 0 else "inv"


def _edge_line(e: Edge, eps: Orientation | None, flow: IntFlow | None, bold: bool) -> str:
    attrs = [f"label={_q(e.id + ('' if flow is None else f' ({flow[e.id]})'))}", "dir=both"]
    tail = head = None
    if eps is not None and eps.covers(e.id):
        tail, head = eps[(e.id, 0)], eps[(e.id, 1)]
    attrs.append(f"arrowtail={_arrow(tail)}")
    attrs.append(f"arrowhead={_arrow(head)}")
    style = ["dashed" if e.sign < 0 else "solid"]
    if bold:
        style.append("bold")
    attrs.append(f"style={_q(','.join(style))}")
    return f"  {_q(e.ends[0])} -> {_q(e.ends[1])} [{', '.join(attrs)}];"


def to_dot(g: SignedGraph, eps: Orientation | None = None, tree: CycleTree | None = None,
           flow: IntFlow | None = None, name: str = "signed") -> str:
    """Deterministic DOT text: vertices and edges in input order."""
    lines = [f"digraph {_q(name)} {{", "  node [shape=circle];"]
    in_cluster: set[str] = set()
    bold: set[str] = set()
    if tree is not None:
        for i, c in enumerate(tree.cycles):
            lines.append(f"  subgraph cluster_{i} {{")
            lines.append(f"    label={_q(('balanced' if c.balanced else 'unbalanced') + f' cycle {i}')};")
            for v in c.vertices:
                if v not in in_cluster:
                    lines.append(f"    {_q(v)};")
                    in_cluster.add(v)
            lines.append("  }")
        bold = {e for p in tree.paths for e in p.edges}
    used = set(g.vertices_of(tree.edges)) if tree is not None else set(g.vertices)
    for v in g.vertices:
        if v in used and v not in in_cluster:
            lines.append(f"  {_q(v)};")
    for e in g.edges:
        if tree is None or e.id in tree.edges:
            lines.append(_edge_line(e, eps, flow, e.id in bold))
    lines.append("}")
    return "\n".join(lines) + "\n"
