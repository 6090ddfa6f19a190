"""Directed walks on signed graphs.

A step traverses one edge from ``from_end`` to the opposite end and records
the direction values at both slots.  Loops are traversed in the sense given
by ``from_end``.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .core import (FlowError, IntFlow, InvariantViolation, Orientation, SignedGraph, Slot,
                   sign_of_edge_set)


class WalkError(FlowError):
    pass


@dataclass(frozen=True)
class WalkStep:
    edge: str
    from_end: int
    dir_from: int
    dir_to: int

    @property
    def from_slot(self) -> Slot:
        return (self.edge, self.from_end)

    @property
    def to_slot(self) -> Slot:
        return (self.edge, 1 - self.from_end)

    def slot_dirs(self) -> dict[Slot, int]:
        return {self.from_slot: self.dir_from, self.to_slot: self.dir_to}

    def reversed(self) -> "WalkStep":
        return WalkStep(self.edge, 1 - self.from_end, self.dir_to, self.dir_from)

    def to_dict(self) -> dict:
        return {"edge": self.edge, "from_end": self.from_end,
                "dir_from": self.dir_from, "dir_to": self.dir_to}


class DirectedWalk:
    """Start vertex plus an ordered tuple of :class:`WalkStep`."""

    def __init__(self, graph: SignedGraph, start: str, steps: Iterable[WalkStep]):
        self.graph = graph
        self.start = start
        self.steps: tuple[WalkStep, ...] = tuple(steps)

    @classmethod
    def along(cls, graph: SignedGraph, start: str, path: Sequence[tuple[str, int]],
              eps: Orientation) -> "DirectedWalk":
        """Walk over ``(edge, from_end)`` pairs with direction values read off ``eps``."""
        steps = [WalkStep(e, end, eps[(e, end)], eps[(e, 1 - end)]) for e, end in path]
        return cls(graph, start, steps)

    @classmethod
    def propagate(cls, graph: SignedGraph, start: str, path: Sequence[tuple[str, int]],
                  first: int = 1) -> "DirectedWalk":
        """Walk whose direction is generated from ``first`` at the initial slot."""
        steps = []
        d = first
        for e, end in path:
            d_to = -graph.sign(e) * d
            steps.append(WalkStep(e, end, d, d_to))
            d = -d_to
        return cls(graph, start, steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __eq__(self, other) -> bool:
        return (isinstance(other, DirectedWalk) and self.start == other.start
                and self.steps == other.steps)

    def __hash__(self) -> int:
        return hash((self.start, self.steps))

    def __repr__(self) -> str:
        return f"DirectedWalk({self.start!r}, {[s.edge for s in self.steps]})"

    def vertices(self) -> list[str]:
        """``u_0, ..., u_n`` (length ``n + 1``)."""
        us = [self.start]
        for s in self.steps:
            us.append(self.graph.edge(s.edge).ends[1 - s.from_end])
        return us

    def edges(self) -> list[str]:
        return [s.edge for s in self.steps]

    def edge_counts(self) -> Counter:
        return Counter(s.edge for s in self.steps)

    def support(self) -> frozenset[str]:
        return frozenset(self.edges())

    @property
    def is_closed(self) -> bool:
        if not self.steps:
            return False
        us = self.vertices()
        return us[0] == us[-1] and self.steps[0].dir_from + self.steps[-1].dir_to == 0

    def rotated(self, k: int) -> "DirectedWalk":
        """Closed walk re-started at vertex ``u_k``."""
        k %= len(self.steps)
        return DirectedWalk(self.graph, self.vertices()[k], self.steps[k:] + self.steps[:k])

    def segment(self, i: int, j: int) -> "DirectedWalk":
        """Sub-walk ``u_i x_{i+1} ... x_j u_j``."""
        return DirectedWalk(self.graph, self.vertices()[i], self.steps[i:j])

    def negated(self) -> "DirectedWalk":
        """Same walk with the opposite direction."""
        return DirectedWalk(self.graph, self.start,
                            [WalkStep(s.edge, s.from_end, -s.dir_from, -s.dir_to) for s in self.steps])

    def to_dict(self) -> dict:
        return {"start": self.start, "steps": [s.to_dict() for s in self.steps]}

    @classmethod
    def from_dict(cls, graph: SignedGraph, data: dict) -> "DirectedWalk":
        return cls(graph, data["start"],
                   [WalkStep(d["edge"], d["from_end"], d["dir_from"], d["dir_to"]) for d in data["steps"]])


def validate_walk(w: DirectedWalk) -> list[str]:
    """Violations of the directed-walk invariants (empty list means valid)."""
    g = w.graph
    problems = []
    cur = w.start
    if cur not in g.vertices:
        problems.append(f"start vertex {cur!r} not in graph")
    for i, s in enumerate(w.steps, 1):
        try:
            e = g.edge(s.edge)
        except KeyError:
            problems.append(f"step {i}: unknown edge {s.edge!r}")
            return problems
        if s.from_end not in (0, 1):
            problems.append(f"step {i}: from_end must be 0 or 1")
            return problems
        if e.ends[s.from_end] != cur:
            problems.append(f"step {i}: vertex mismatch, edge {s.edge!r} does not leave {cur!r} at end {s.from_end}")
        if s.dir_from not in (-1, 1) or s.dir_to not in (-1, 1):
            problems.append(f"step {i}: direction values must be -1 or +1")
        elif s.dir_from * s.dir_to != -e.sign:
            problems.append(f"step {i}: direction product {s.dir_from * s.dir_to} != -sign {-e.sign} on {s.edge!r}")
        if i > 1 and w.steps[i - 2].dir_to + s.dir_from != 0:
            problems.append(f"step {i}: no alternation at {cur!r}")
        cur = e.ends[1 - s.from_end]
    return problems


def walk_sign(w: DirectedWalk) -> int:
    return sign_of_edge_set(w.graph, w.edges())


def is_midway_back_avoided(w: DirectedWalk) -> bool:
    """Every revisit ``u_a = u_b`` (``a < b < n``) arrives with the value ``u_a`` departed with."""
    us = w.vertices()
    n = len(w.steps)
    first_seen: dict[str, list[int]] = {}
    for b in range(n):
        for a in first_seen.get(us[b], ()):
            if w.steps[b - 1].dir_to != w.steps[a].dir_from:
                return False
        first_seen.setdefault(us[b], []).append(b)
    return True


def vertex_multiplicity(w: DirectedWalk) -> Counter:
    """Occurrences of each vertex among ``u_0 .. u_{n-1}`` of a closed walk."""
    return Counter(w.vertices()[:-1])


def has_triple_vertex(w: DirectedWalk) -> bool:
    return any(c >= 3 for c in vertex_multiplicity(w).values())


def double_vertices(w: DirectedWalk) -> list[str]:
    return [v for v, c in vertex_multiplicity(w).items() if c == 2]


def is_eulerian_walk(w: DirectedWalk) -> bool:
    """Closed, balanced, and every repeated edge carries the same slot directions."""
    if not w.is_closed or validate_walk(w) or walk_sign(w) != 1:
        return False
    seen: dict[str, dict[Slot, int]] = {}
    for s in w.steps:
        dirs = s.slot_dirs()
        if seen.setdefault(s.edge, dirs) != dirs:
            return False
    return True


def eulerian_obstructions(w: DirectedWalk) -> list[str]:
    """Why a midway-back avoided closed walk fails to be Eulerian.

    For such walks, being Eulerian is equivalent to having no departure
    slot used twice and no step that immediately retraces the previous one
    (cyclically).  Avoidance alone does not rule either out: a doubled
    unbalanced cycle repeats slots, and ``e, e`` on a non-loop backtracks.
    """
    out = []
    seen: set = set()
    for i, s in enumerate(w.steps):
        if s.from_slot in seen:
            out.append(f"step {i} leaves slot {s.from_slot} a second time")
        seen.add(s.from_slot)
    n = len(w.steps)
    for i in range(n):
        s, t = w.steps[i], w.steps[(i + 1) % n]
        if t.edge == s.edge and t.from_slot == s.to_slot:
            out.append(f"step {(i + 1) % n} retraces edge {s.edge!r}")
    return out


def walk_orientation(w: DirectedWalk) -> Orientation:
    """Orientation on ``supp W`` induced by a walk whose repeated edges agree."""
    vals: dict[str, tuple[int, int]] = {}
    for s in w.steps:
        pair = [0, 0]
        pair[s.from_end], pair[1 - s.from_end] = s.dir_from, s.dir_to
        if vals.setdefault(s.edge, tuple(pair)) != tuple(pair):
            raise WalkError(f"edge {s.edge!r} traversed with conflicting directions")
    return Orientation(w.graph, vals, check=False)


def characteristic_vector(w: DirectedWalk, eps: Orientation) -> IntFlow:
    """Sum over traversals of the coupling between ``eps`` and the walk direction."""
    if not w.is_closed:
        raise WalkError("characteristic vector is defined for directed closed walks only")
    vals = [0] * len(w.graph.edges)
    for s in w.steps:
        vals[w.graph.edge_index(s.edge)] += eps[s.from_slot] * s.dir_from
    return IntFlow(w.graph, vals)


def reverse_walk(w: DirectedWalk) -> DirectedWalk:
    us = w.vertices()
    return DirectedWalk(w.graph, us[-1], [s.reversed() for s in reversed(w.steps)])


def is_minimal_eulerian(w: DirectedWalk) -> bool:
    """Structural test: ``Sigma(W)`` is an Eulerian cycle-tree and the edge
    multiplicities of ``W`` equal its indicator (1 on block cycles, 2 on paths)."""
    from .cycletree import NotCycleTree, check_parity, detect_cycle_tree, indicator

    if not is_eulerian_walk(w):
        return False
    try:
        t = detect_cycle_tree(w.graph, w.support())
    except NotCycleTree:
        return False
    if not check_parity(t).ok:
        return False
    counts = w.edge_counts()
    return all(counts[e] == m for e, m in indicator(t).items())


def is_elementary_walk(w: DirectedWalk) -> bool:
    from .cycletree import CircuitType, classify_circuit, detect_cycle_tree

    if not is_minimal_eulerian(w):
        return False
    return classify_circuit(detect_cycle_tree(w.graph, w.support())).type is not CircuitType.NOT_CIRCUIT


def require_closed_directed(w: DirectedWalk) -> None:
    problems = validate_walk(w)
    if problems or not w.is_closed:
        raise InvariantViolation(f"not a directed closed walk: {problems or 'open'}")
