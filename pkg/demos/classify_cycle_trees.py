"""Recognize cycle-trees, test the parity condition and find their directions.

Run: python demos/classify_cycle_trees.py
"""
from signedflow import fixtures
from signedflow.cycletree import check_parity, classify_circuit, detect_cycle_tree, find_direction, indicator

for name in ("triangle", "g2", "g3", "g5", "unbalanced"):
    g = fixtures.ALL[name]().graph
    t = detect_cycle_tree(g, g.edge_ids())
    parity = check_parity(t)
    print(f"{name}: {len(t.cycles)} block cycles, {len(t.paths)} block paths, parity {'ok' if parity else 'fails'}")
    if not parity:
        for row in parity.cycles:
            print("   cycle", row["edges"], "balanced" if row["balanced"] else "unbalanced",
                  "with", row["intersections"], "intersection vertices")
        continue
    eps = find_direction(t)
    print("   direction", eps.to_dict())
    print("   indicator", indicator(t).nonzero())
    print("   class", classify_circuit(t).type.value)
