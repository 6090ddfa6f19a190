"""Signed multigraphs, half-edge orientations, and integer flows.

Every edge has two end slots ``(edge_id, 0)`` and ``(edge_id, 1)``.  An
orientation assigns ``+1`` (arrow pointing away from the vertex) or ``-1``
(arrow pointing toward it) to each slot, with the product of the two slot
values equal to ``-sign``.  On a positive loop the two slots therefore carry
one ``+1`` and one ``-1``; on a negative loop they are equal.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property
from math import prod

Slot = tuple[str, int]


class SignedFlowError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(SignedFlowError, ValueError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class OrientationError(SignedFlowError, ValueError):
    pass


class FlowError(SignedFlowError, ValueError):
    pass


class InvariantViolation(SignedFlowError, AssertionError):
    """A guaranteed postcondition failed; indicates a bug, never bad input."""


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple[str, str]
    sign: int

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]

    def other_end(self, end: int) -> str:
        return self.ends[1 - end]


class SignedGraph:
    """Finite signed multigraph; loops and parallel edges allowed.

    Construction does not validate; call :func:`validate_graph` or use
    :meth:`build`, which raises :class:`GraphError` on bad input.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge]):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.edges: tuple[Edge, ...] = tuple(edges)

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable) -> "SignedGraph":
        """Build from ``(id, u, v, sign)`` tuples or :class:`Edge` objects and validate."""
        es = [e if isinstance(e, Edge) else Edge(str(e[0]), (e[1], e[2]), e[3]) for e in edges]
        g = cls(vertices, es)
        problems = validate_graph(g)
        if problems:
            raise GraphError(problems)
        return g

    def __repr__(self) -> str:
        return f"SignedGraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, SignedGraph) and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.vertices, self.edges))

    @cached_property
    def _edge_index(self) -> dict[str, int]:
        return {e.id: i for i, e in enumerate(self.edges)}

    @cached_property
    def _vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _slots_at(self) -> dict[str, tuple[Slot, ...]]:
        at: dict[str, list[Slot]] = {v: [] for v in self.vertices}
        for e in self.edges:
            for end in (0, 1):
                at.setdefault(e.ends[end], []).append((e.id, end))
        return {v: tuple(s) for v, s in at.items()}

    def edge(self, eid: str) -> Edge:
        return self.edges[self._edge_index[eid]]

    def edge_index(self, eid: str) -> int:
        return self._edge_index[eid]

    def vertex_index(self, v: str) -> int:
        return self._vertex_index[v]

    def sign(self, eid: str) -> int:
        return self.edge(eid).sign

    def slot_vertex(self, slot: Slot) -> str:
        return self.edge(slot[0]).ends[slot[1]]

    def slots_at(self, v: str) -> tuple[Slot, ...]:
        return self._slots_at.get(v, ())

    def slots(self) -> Iterator[Slot]:
        for e in self.edges:
            yield (e.id, 0)
            yield (e.id, 1)

    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def sort_edges(self, eids: Iterable[str]) -> list[str]:
        """Edge ids in input order."""
        return sorted(set(eids), key=self.edge_index)

    def vertices_of(self, eids: Iterable[str]) -> list[str]:
        """Vertices touched by ``eids``, in input order."""
        vs = {v for eid in eids for v in self.edge(eid).ends}
        return sorted(vs, key=self.vertex_index)

    def with_sign(self, eid: str, sign: int) -> "SignedGraph":
        es = [Edge(e.id, e.ends, sign) if e.id == eid else e for e in self.edges]
        return SignedGraph(self.vertices, es)

    def subgraph(self, eids: Iterable[str]) -> "SignedGraph":
        """Edge-induced subgraph keeping only touched vertices."""
        keep = set(eids)
        es = [e for e in self.edges if e.id in keep]
        return SignedGraph(self.vertices_of(keep), es)

    def is_connected(self, eids: Iterable[str] | None = None) -> bool:
        eids = list(self.edge_ids() if eids is None else eids)
        if not eids:
            return False
        return len(connected_components(self, eids)) == 1


def validate_graph(g: SignedGraph) -> list[str]:
    """Return the list of invariant violations of ``g`` (empty when well formed)."""
    problems = []
    seen_v = set()
    for v in g.vertices:
        if v in seen_v:
            problems.append(f"duplicate vertex id {v!r}")
        seen_v.add(v)
    seen_e = set()
    for e in g.edges:
        if e.id in seen_e:
            problems.append(f"duplicate edge id {e.id!r}")
        seen_e.add(e.id)
        if len(e.ends) != 2:
            problems.append(f"edge {e.id!r} must have exactly two ends")
            continue
        for end in e.ends:
            if end not in seen_v:
                problems.append(f"dangling end: edge {e.id!r} references missing vertex {end!r}")
        if e.sign not in (-1, 1) or isinstance(e.sign, bool):
            problems.append(f"edge {e.id!r} has sign {e.sign!r}, expected -1 or +1")
    return problems


def connected_components(g: SignedGraph, eids: Iterable[str]) -> list[list[str]]:
    """Edge sets of the connected components of the edge-induced subgraph."""
    parent: dict[str, str] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    eids = g.sort_edges(eids)
    for eid in eids:
        for v in g.edge(eid).ends:
            parent.setdefault(v, v)
    for eid in eids:
        a, b = (find(v) for v in g.edge(eid).ends)
        if a != b:
            parent[a] = b
    groups: dict[str, list[str]] = {}
    for eid in eids:
        groups.setdefault(find(g.edge(eid).ends[0]), []).append(eid)
    return list(groups.values())


class Orientation(Mapping):
    """Slot values on a set of edges; enforces ``value(e,0)*value(e,1) == -sign(e)``."""

    def __init__(self, graph: SignedGraph, values: Mapping[str, tuple[int, int]] | None = None,
                 *, check: bool = True):
        self.graph = graph
        self._values: dict[str, tuple[int, int]] = dict(values or {})
        if check:
            for eid, (a, b) in self._values.items():
                if eid not in graph._edge_index:
                    raise OrientationError(f"orientation references unknown edge {eid!r}")
                if a not in (-1, 1) or b not in (-1, 1):
                    raise OrientationError(f"edge {eid!r}: slot values must be -1 or +1, got {[a, b]}")
                if a * b != -graph.sign(eid):
                    raise OrientationError(
                        f"edge {eid!r}: slot product {a * b} violates s0*s1 = -sign = {-graph.sign(eid)}")

    @classmethod
    def default(cls, graph: SignedGraph, eids: Iterable[str] | None = None) -> "Orientation":
        """Slot 0 gets ``+1``; slot 1 whatever the sign forces."""
        eids = graph.edge_ids() if eids is None else eids
        return cls(graph, {eid: (1, -graph.sign(eid)) for eid in eids}, check=False)

    @classmethod
    def from_slot(cls, graph: SignedGraph, slot_values: Mapping[Slot, int]) -> "Orientation":
        vals: dict[str, list[int]] = {}
        for (eid, end), s in slot_values.items():
            vals.setdefault(eid, [0, 0])[end] = s
        return cls(graph, {eid: tuple(v) for eid, v in vals.items()})

    def __getitem__(self, slot: Slot) -> int:
        return self._values[slot[0]][slot[1]]

    def __iter__(self) -> Iterator[Slot]:
        for eid in self._values:
            yield (eid, 0)
            yield (eid, 1)

    def __len__(self) -> int:
        return 2 * len(self._values)

    def __eq__(self, other) -> bool:
        if isinstance(other, Orientation):
            return self._values == other._values
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._values.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {list(v)}" for k, v in self._values.items())
        return f"Orientation({{{body}}})"

    @property
    def edges(self) -> frozenset[str]:
        return frozenset(self._values)

    def pair(self, eid: str) -> tuple[int, int]:
        return self._values[eid]

    def covers(self, eid: str) -> bool:
        return eid in self._values

    def negated(self) -> "Orientation":
        return Orientation(self.graph, {e: (-a, -b) for e, (a, b) in self._values.items()}, check=False)

    def restrict(self, eids: Iterable[str]) -> "Orientation":
        return Orientation(self.graph, {e: self._values[e] for e in eids}, check=False)

    def flip_edges(self, eids: Iterable[str]) -> "Orientation":
        flip = set(eids)
        vals = {e: ((-a, -b) if e in flip else (a, b)) for e, (a, b) in self._values.items()}
        return Orientation(self.graph, vals, check=False)

    def to_dict(self) -> dict[str, list[int]]:
        return {e: list(v) for e, v in self._values.items()}


def coupling(e1: Orientation, e2: Orientation, x: str) -> int:
    """+1 where the orientations agree on edge ``x``, -1 where they disagree, 0 off-domain."""
    if not (e1.covers(x) and e2.covers(x)):
        return 0
    return e1[(x, 0)] * e2[(x, 0)]


class IntFlow(Mapping):
    """Integer edge function on a graph; missing edges read as 0."""

    def __init__(self, graph: SignedGraph, values: Mapping[str, int] | Iterable[int] | None = None):
        self.graph = graph
        if values is None:
            vals = [0] * len(graph.edges)
        elif isinstance(values, Mapping):
            vals = [0] * len(graph.edges)
            for eid, x in values.items():
                if int(x) != x:
                    raise FlowError(f"flow value on {eid!r} is not an integer: {x!r}")
                vals[graph.edge_index(eid)] = int(x)
        else:
            vals = [int(x) for x in values]
            if len(vals) != len(graph.edges):
                raise FlowError("flow vector length does not match edge count")
        self.values: tuple[int, ...] = tuple(vals)

    def __getitem__(self, eid: str) -> int:
        return self.values[self.graph.edge_index(eid)]

    def __iter__(self) -> Iterator[str]:
        return iter(self.graph.edge_ids())

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntFlow):
            return self.values == other.values and self.graph == other.graph
        if isinstance(other, Mapping):
            return dict(self) == {k: other.get(k, 0) for k in self}
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"IntFlow({dict(self)})"

    def _lift(self, other) -> tuple[int, ...]:
        if isinstance(other, IntFlow):
            return other.values
        return IntFlow(self.graph, other).values

    def __add__(self, other) -> "IntFlow":
        return IntFlow(self.graph, [a + b for a, b in zip(self.values, self._lift(other))])

    def __sub__(self, other) -> "IntFlow":
        return IntFlow(self.graph, [a - b for a, b in zip(self.values, self._lift(other))])

    def __neg__(self) -> "IntFlow":
        return IntFlow(self.graph, [-a for a in self.values])

    def __abs__(self) -> "IntFlow":
        return IntFlow(self.graph, [abs(a) for a in self.values])

    def scale(self, k: int) -> "IntFlow":
        return IntFlow(self.graph, [k * a for a in self.values])

    def is_zero(self) -> bool:
        return not any(self.values)

    def nonzero(self) -> dict[str, int]:
        return {e.id: x for e, x in zip(self.graph.edges, self.values) if x}


def boundary(f: IntFlow, eps: Orientation) -> dict[str, int]:
    """Vertex charges: sum of ``eps(slot) * f(edge)`` over the slots at each vertex."""
    g = f.graph
    charge = {v: 0 for v in g.vertices}
    for e, x in zip(g.edges, f.values):
        if x:
            a, b = eps.pair(e.id)
            charge[e.ends[0]] += a * x
            charge[e.ends[1]] += b * x
    return charge


def is_flow(f: IntFlow, eps: Orientation) -> bool:
    return not any(boundary(f, eps).values())


def support(f: Mapping[str, int]) -> frozenset[str]:
    return frozenset(e for e, x in f.items() if x)


def derived_orientation(f: Mapping[str, int], eps: Orientation) -> Orientation:
    """Negate ``eps`` on the edges where ``f`` is negative."""
    return eps.flip_edges(e for e, x in f.items() if x < 0)


def sign_of_edge_set(g: SignedGraph, edges: Iterable[str]) -> int:
    return prod(g.sign(e) for e in edges)


def incidence_coefficient(g: SignedGraph, eps: Orientation, v: str, eid: str) -> int:
    """Coefficient of ``f(eid)`` in the boundary at ``v``, by incidence class.

    Non-loop: eps(v, e); negative loop: 2 eps(v, e); positive loop and
    non-incident edges: 0.
    """
    e = g.edge(eid)
    if v not in e.ends:
        return 0
    if not e.is_loop:
        return eps[(eid, e.ends.index(v))]
    if e.sign < 0:
        return 2 * eps[(eid, 0)]
    return 0
