"""A non-circuit Eulerian cycle-tree is half a sum of Type III circuits.

Two negative loops sit on opposite corners of a balanced square.  The
all-ones flow is indecomposable, yet its support is not a circuit: it is
half the sum of the two dumbbells obtained by going around either side.

Run: python demos/half_integer_g5.py
"""
from signedflow import fixtures
from signedflow.cycletree import half_integer_decomposition
from signedflow.fra import decompose_flow, is_indecomposable

doc = fixtures.g5()
verdict = is_indecomposable(doc.flow, doc.orientation)
print("indecomposable:", bool(verdict))

walk = decompose_flow(doc.flow, doc.orientation).terms[0].walk
hd = half_integer_decomposition(verdict.tree, walk)
print("walk", walk.edges())
for c, cls in zip(hd.circuits, hd.circuit_classes):
    print("   summand", sorted(c.edges), cls.type.value)
print("sum of summand indicators", hd.twice_identity)
print("identity holds:", hd.identity_holds())
