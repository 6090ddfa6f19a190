"""Compare the structural indecomposability test with brute force on a small family.

The full acceptance sweep uses 4 vertices, 5 edges and bound 3; this one
stays small enough to finish in a few seconds.

Run: python demos/oracle_agreement.py
"""
from signedflow.sweep import run_sweep

rep = run_sweep(3, 4, 2, workers=1)
for k, v in rep.summary().items():
    print(f"{k:>24}: {v}")
