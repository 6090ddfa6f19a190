"""Reduce a flow to minimal Eulerian walks and show each step of the search.

Run: python demos/reduce_flow.py
"""
from signedflow import fixtures
from signedflow.cycletree import classify_circuit
from signedflow.fra import decompose_flow, is_indecomposable

doc = fixtures.g3(2)
print("flow", doc.flow.nonzero())

trace = []
dec = decompose_flow(doc.flow, doc.orientation, trace=trace)
for run in trace:
    print(f"term {run['term']}:")
    for ev in run["events"]:
        print("   ", ev)

for term in dec.terms:
    print("walk", term.walk.edges(), "->", term.flow.nonzero(), classify_circuit(term.tree).type.value)

# doubling a circuit flow makes it decomposable
print("indecomposable?", bool(is_indecomposable(doc.flow, doc.orientation)))
print("g3 at scale 1?", bool(is_indecomposable(fixtures.g3().flow, doc.orientation)))
