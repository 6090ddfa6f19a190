"""Small worked examples used by the tests, demos and the ``fixtures/`` files."""
from __future__ import annotations

from .core import IntFlow, Orientation, SignedGraph
from .io import Document


def triangle(flow: int = 1) -> Document:
    """Balanced triangle x-y-z, cyclically oriented, ``f`` constant."""
    g = SignedGraph.build(["x", "y", "z"], [("t1", "x", "y", 1), ("t2", "y", "z", 1), ("t3", "z", "x", 1)])
    eps = Orientation.default(g)
    return Document(g, eps, IntFlow(g, [flow] * 3))


def g2(scale: int = 1) -> Document:
    """Two negative loops at one vertex (Type II)."""
    g = SignedGraph.build(["v"], [("a", "v", "v", -1), ("b", "v", "v", -1)])
    eps = Orientation(g, {"a": (1, 1), "b": (-1, -1)})
    return Document(g, eps, IntFlow(g, {"a": scale, "b": scale}))


def g3(scale: int = 1) -> Document:
    """Negative loops at u and v joined by a positive edge (Type III dumbbell)."""
    g = SignedGraph.build(["u", "v"], [("a", "u", "u", -1), ("p", "u", "v", 1), ("b", "v", "v", -1)])
    eps = Orientation(g, {"a": (1, 1), "p": (-1, 1), "b": (-1, -1)})
    return Document(g, eps, IntFlow(g, {"a": scale, "p": 2 * scale, "b": scale}))


def g5() -> Document:
    """Negative loops at opposite corners of a balanced square, ``f`` = 1.

    An indecomposable flow whose support is not a circuit.
    """
    g = SignedGraph.build(["v1", "v2", "v3", "v4"], [
        ("a", "v1", "v1", -1), ("b", "v3", "v3", -1),
        ("e12", "v1", "v2", 1), ("e23", "v2", "v3", 1), ("e34", "v3", "v4", 1), ("e41", "v4", "v1", 1),
    ])
    eps = Orientation(g, {"a": (1, 1), "b": (-1, -1), "e12": (-1, 1), "e23": (-1, 1),
                          "e34": (1, -1), "e41": (1, -1)})
    return Document(g, eps, IntFlow(g, [1] * 6))


def unbalanced_cycle() -> Document:
    """A lone unbalanced triangle: a cycle-tree failing the parity condition."""
    g = SignedGraph.build(["x", "y", "z"], [("t1", "x", "y", 1), ("t2", "y", "z", 1), ("t3", "z", "x", -1)])
    return Document(g, Orientation.default(g), None)


ALL = {
    "triangle": triangle,
    "triangle2": lambda: triangle(2),
    "g2": g2,
    "g2_double": lambda: g2(2),
    "g3": g3,
    "g3_double": lambda: g3(2),
    "g5": g5,
    "unbalanced": unbalanced_cycle,
}
