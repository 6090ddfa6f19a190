"""Midway-back avoided closed walks never have a triple vertex, but they need
not be Eulerian: they may retrace an edge or leave the same slot twice.

Run: python demos/avoided_walks.py
"""
from collections import Counter

from signedflow.oracle import enumerate_avoided_walks, graph_family
from signedflow.walk import eulerian_obstructions, has_triple_vertex, is_eulerian_walk

kinds = Counter()
shown = set()
total = 0
for g in graph_family(3, 4):
    for w in enumerate_avoided_walks(g, 8):
        total += 1
        assert not has_triple_vertex(w)
        obs = eulerian_obstructions(w)
        assert is_eulerian_walk(w) == (not obs)
        if obs:
            kind = "retrace" if "retraces" in obs[-1] else "repeated slot"
            kinds[kind] += 1
            if kind not in shown:
                shown.add(kind)
                print(kind, w, obs)
print(f"{total} avoided closed walks; not Eulerian: {dict(kinds)}")
