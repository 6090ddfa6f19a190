"""Write Graphviz files for a cycle-tree and its direction.

Run: python demos/dot_export.py  (then e.g. ``dot -Tsvg g3.dot``)
"""
from pathlib import Path

from signedflow import fixtures
from signedflow.cycletree import detect_cycle_tree, find_direction
from signedflow.dot import to_dot

for name in ("g3", "g5"):
    doc = fixtures.ALL[name]()
    t = detect_cycle_tree(doc.graph, doc.graph.edge_ids())
    text = to_dot(doc.graph, find_direction(t), t, doc.flow, name=name)
    Path(f"{name}.dot").write_text(text)
    print(f"wrote {name}.dot ({len(text.splitlines())} lines)")
