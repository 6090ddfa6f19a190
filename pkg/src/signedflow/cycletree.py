"""Cycle-trees: recognition, parity, directions, indicators, circuit types,
canonical walks, and the half-integer scale decomposition.

A cycle-tree is a connected signed subgraph whose blocks are cycles and
bridges, where bridges chain into paths joining two distinct cycles, no
vertex lies on three cycles, and no path touches a vertex shared by two
cycles.  Zero-length attachments (two cycles sharing a vertex) are recorded
as intersection vertices, not as path objects.
"""
from __future__ import annotations

import enum
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .core import (IntFlow, InvariantViolation, Orientation, SignedFlowError, SignedGraph, Slot,
                   connected_components, coupling, sign_of_edge_set)
from .walk import DirectedWalk, WalkStep, validate_walk


class NotCycleTree(SignedFlowError, ValueError):
    pass


class NoDirection(SignedFlowError, ValueError):
    pass


@dataclass(frozen=True)
class Cycle:
    """Simple cycle stored as a traversal ``v_0 x_1 v_1 ... x_l v_0``."""
    vertices: tuple[str, ...]
    steps: tuple[tuple[str, int], ...]
    sign: int

    @property
    def edges(self) -> tuple[str, ...]:
        return tuple(e for e, _ in self.steps)

    @property
    def balanced(self) -> bool:
        return self.sign == 1

    def __len__(self) -> int:
        return len(self.steps)

    def rotated_to(self, v: str) -> "Cycle":
        i = self.vertices.index(v)
        return Cycle(self.vertices[i:] + self.vertices[:i], self.steps[i:] + self.steps[:i], self.sign)


@dataclass(frozen=True)
class BlockPath:
    """Simple path ``v_0 y_1 ... y_m v_m`` of positive length."""
    vertices: tuple[str, ...]
    steps: tuple[tuple[str, int], ...]

    @property
    def edges(self) -> tuple[str, ...]:
        return tuple(e for e, _ in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def reversed(self) -> "BlockPath":
        return BlockPath(self.vertices[::-1], tuple((e, 1 - end) for e, end in reversed(self.steps)))

    def from_vertex(self, v: str) -> "BlockPath":
        if self.vertices[0] == v:
            return self
        if self.vertices[-1] == v:
            return self.reversed()
        raise ValueError(f"{v!r} is not an end of the path")


@dataclass(frozen=True)
class CycleTree:
    graph: SignedGraph
    edges: frozenset[str]
    cycles: tuple[Cycle, ...]
    paths: tuple[BlockPath, ...]
    intersection_vertices: frozenset[str]

    @property
    def vertices(self) -> list[str]:
        return self.graph.vertices_of(self.edges)

    def cycle_intersections(self, i: int) -> list[str]:
        return [v for v in self.cycles[i].vertices if v in self.intersection_vertices]

    def end_block_cycles(self) -> list[int]:
        """Indices of cycles with exactly one intersection vertex, ordered by
        their smallest edge in graph input order."""
        ends = [i for i in range(len(self.cycles)) if len(self.cycle_intersections(i)) == 1]
        return sorted(ends, key=lambda i: min(map(self.graph.edge_index, self.cycles[i].edges)))

    def units_at(self, v: str) -> list[tuple[str, int]]:
        """Blocks meeting ``v``: ``('c', i)`` for cycles, ``('p', j)`` for paths ending there."""
        out = [("c", i) for i, c in enumerate(self.cycles) if v in c.vertices]
        out += [("p", j) for j, p in enumerate(self.paths) if v in (p.vertices[0], p.vertices[-1])]
        return out

    def describe(self) -> dict:
        g = self.graph
        return {
            "edges": g.sort_edges(self.edges),
            "block_cycles": [{"vertices": list(c.vertices), "edges": list(c.edges),
                              "balanced": c.balanced} for c in self.cycles],
            "block_paths": [{"vertices": list(p.vertices), "edges": list(p.edges)} for p in self.paths],
            "intersection_vertices": sorted(self.intersection_vertices, key=g.vertex_index),
        }


def blocks(g: SignedGraph, eids: Iterable[str]) -> list[list[str]]:
    """Biconnected components (edge sets) of the edge-induced multigraph.

    Each loop is its own block; parallel edges form a block together.
    """
    eids = g.sort_edges(eids)
    adj: dict[str, list[tuple[str, str]]] = {}
    out: list[list[str]] = []
    for eid in eids:
        e = g.edge(eid)
        u, v = e.ends
        adj.setdefault(u, [])
        adj.setdefault(v, [])
        if e.is_loop:
            out.append([eid])
        else:
            adj[u].append((eid, v))
            adj[v].append((eid, u))
    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    stack: list[str] = []

    def dfs(u: str, parent_edge: str | None) -> None:
        disc[u] = low[u] = len(disc)
        for eid, w in adj[u]:
            if eid == parent_edge:
                continue
            if w not in disc:
                stack.append(eid)
                dfs(w, eid)
                low[u] = min(low[u], low[w])
                if low[w] >= disc[u]:
                    comp = []
                    while True:
                        x = stack.pop()
                        comp.append(x)
                        if x == eid:
                            break
                    out.append(g.sort_edges(comp))
            elif disc[w] < disc[u]:
                stack.append(eid)
                low[u] = min(low[u], disc[w])

    for v in sorted(adj, key=g.vertex_index):
        if v not in disc:
            dfs(v, None)
    return out


def is_cut_point(g: SignedGraph, eids: Iterable[str], v: str) -> bool:
    """Removing ``v`` from the 1-complex of ``eids`` increases its component count.

    A loop at ``v`` becomes an open arc of its own once ``v`` is removed.
    """
    eids = list(eids)
    before = len(connected_components(g, eids))
    parent: dict[str, str] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pieces = 0
    for eid in eids:
        e = g.edge(eid)
        if e.ends == (v, v):
            pieces += 1
            continue
        for u in e.ends:
            if u != v:
                parent.setdefault(u, u)
    for eid in eids:
        a, b = g.edge(eid).ends
        if v not in (a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    pieces += len({find(u) for u in parent})
    return pieces > before


def _build_cycle(g: SignedGraph, block: list[str]) -> Cycle:
    verts = g.vertices_of(block)
    start = verts[0]
    remaining = set(block)
    vs, steps = [], []
    cur = start
    while remaining:
        cands = sorted(((eid, end) for eid in remaining for end in (0, 1)
                        if g.edge(eid).ends[end] == cur),
                       key=lambda s: (g.edge_index(s[0]), s[1]))
        eid, end = cands[0]
        remaining.discard(eid)
        vs.append(cur)
        steps.append((eid, end))
        cur = g.edge(eid).ends[1 - end]
    return Cycle(tuple(vs), tuple(steps), sign_of_edge_set(g, block))


def _is_cycle_block(g: SignedGraph, block: list[str]) -> bool:
    deg: Counter = Counter()
    for eid in block:
        for v in g.edge(eid).ends:
            deg[v] += 1
    return len(deg) == len(block) and all(d == 2 for d in deg.values())


def detect_cycle_tree(g: SignedGraph, eids: Iterable[str]) -> CycleTree:
    """Decompose the subgraph induced by ``eids`` into block cycles and paths.

    Raises :class:`NotCycleTree` naming the violated condition.
    """
    return _detect(g, frozenset(eids))


@lru_cache(maxsize=8192)
def _detect(g: SignedGraph, edge_set: frozenset[str]) -> CycleTree:
    eids = g.sort_edges(edge_set)
    if not eids:
        raise NotCycleTree("empty edge set")
    if len(connected_components(g, eids)) != 1:
        raise NotCycleTree("edge set is not connected")
    cycles, bridges = [], []
    for b in blocks(g, eids):
        if len(b) == 1 and not g.edge(b[0]).is_loop:
            bridges.append(b[0])
        elif _is_cycle_block(g, b):
            cycles.append(_build_cycle(g, b))
        else:
            raise NotCycleTree(f"block {b} is not a single cycle (cycles share an edge)")
    if not cycles:
        raise NotCycleTree("no cycles: the subgraph is a tree")
    on_cycles: Counter = Counter(v for c in cycles for v in c.vertices)
    bridge_deg: Counter = Counter(v for eid in bridges for v in g.edge(eid).ends)
    for v in g.vertices_of(eids):
        c, b = on_cycles[v], bridge_deg[v]
        if c >= 3:
            raise NotCycleTree(f"vertex {v!r} lies on {c} cycles")
        if c == 2 and b:
            raise NotCycleTree(f"a path touches {v!r}, where two cycles already meet")
        if c == 1 and b >= 2:
            raise NotCycleTree(f"block paths meet at cycle vertex {v!r}")
        if c == 0 and b != 2:
            kind = "dangling" if b < 2 else "branching"
            raise NotCycleTree(f"{kind} path at vertex {v!r} (degree {b}, not on a cycle)")
    paths = []
    for comp in connected_components(g, bridges) if bridges else []:
        ends = [v for v in g.vertices_of(comp) if on_cycles[v]]
        start = min(ends, key=g.vertex_index)
        remaining = set(comp)
        vs, steps = [start], []
        cur = start
        while remaining:
            eid = next(x for x in g.sort_edges(remaining) if cur in g.edge(x).ends)
            end = g.edge(eid).ends.index(cur)
            remaining.discard(eid)
            steps.append((eid, end))
            cur = g.edge(eid).ends[1 - end]
            vs.append(cur)
        paths.append(BlockPath(tuple(vs), tuple(steps)))
    inter = frozenset(v for v in g.vertices_of(eids)
                      if on_cycles[v] == 2 or (on_cycles[v] == 1 and bridge_deg[v] == 1))
    for v in inter:
        if not is_cut_point(g, eids, v):
            raise NotCycleTree(f"intersection vertex {v!r} is not a cut-point")
    return CycleTree(g, frozenset(eids), tuple(cycles), tuple(paths), inter)


@dataclass
class ParityReport:
    ok: bool
    cycles: list[dict] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_parity(t: CycleTree) -> ParityReport:
    """Balanced cycles need an even, unbalanced ones an odd, intersection count."""
    rows = []
    for i, c in enumerate(t.cycles):
        n = len(t.cycle_intersections(i))
        good = (n % 2 == 0) if c.balanced else (n % 2 == 1)
        rows.append({"cycle": i, "edges": list(c.edges), "balanced": c.balanced,
                     "intersections": n, "ok": good})
    return ParityReport(all(r["ok"] for r in rows), rows)


def is_direction(t: CycleTree, eps: Orientation) -> bool:
    """Neither sink nor source anywhere, and each block cycle has a sink or
    source at every cut-point of the tree lying on it."""
    g = t.graph
    for v in t.vertices:
        vals = {eps[s] for s in g.slots_at(v) if s[0] in t.edges}
        if len(vals) == 1:
            return False
    for i, c in enumerate(t.cycles):
        ce = set(c.edges)
        for v in t.cycle_intersections(i):
            if len({eps[s] for s in g.slots_at(v) if s[0] in ce}) != 1:
                return False
    return True


def _first_end_block(t: CycleTree) -> tuple[int, str, BlockPath | None, int, str]:
    """Peel data for the first end-block cycle: (C0, u0, P, C1, w0)."""
    c0 = t.end_block_cycles()[0]
    (u0,) = t.cycle_intersections(c0)
    for kind, j in t.units_at(u0):
        if kind == "p":
            p = t.paths[j].from_vertex(u0)
            w0 = p.vertices[-1]
            c1 = next(i for k, i in t.units_at(w0) if k == "c")
            return c0, u0, p, c1, w0
        if kind == "c" and j != c0:
            return c0, u0, None, j, u0
    raise InvariantViolation("end-block cycle without attachment")


def _propagate(g: SignedGraph, steps, first: int, vals: dict[str, list[int]]) -> int:
    """Write walk-direction values along ``steps``; return the final arrival value."""
    d = first
    d_to = first
    for eid, end in steps:
        d_to = -g.sign(eid) * d
        pair = vals.setdefault(eid, [0, 0])
        pair[end], pair[1 - end] = d, d_to
        d = -d_to
    return d_to


def _direction(g: SignedGraph, t: CycleTree) -> dict[str, list[int]]:
    vals: dict[str, list[int]] = {}
    if len(t.cycles) == 1:
        (c,) = t.cycles
        last = _propagate(g, c.steps, 1, vals)
        if last != -1:
            raise InvariantViolation("balanced cycle failed to close")
        return vals
    c0, u0, p, c1, w0 = _first_end_block(t)
    cyc1 = t.cycles[c1].rotated_to(w0)
    z1, z1_end = cyc1.steps[0]
    last_e, last_end = cyc1.steps[-1]
    if g.edge_index(last_e) < g.edge_index(z1):
        z1, z1_end = last_e, 1 - last_end
    rest = t.edges - set(t.cycles[c0].edges) - set(p.edges if p else ())
    g1 = g.with_sign(z1, -g.sign(z1))
    t1 = detect_cycle_tree(g1, rest)
    vals = _direction(g1, t1)
    vals[z1][z1_end] = -vals[z1][z1_end]
    s = vals[z1][z1_end]
    if p is not None:
        at_u0 = _propagate(g, p.reversed().steps, -s, vals)
        target = -at_u0
    else:
        target = -s
    cyc0 = t.cycles[c0].rotated_to(u0)
    last = _propagate(g, cyc0.steps, target, vals)
    if last != target:
        raise InvariantViolation("end-block cycle is not unbalanced")
    return vals


def find_direction(t: CycleTree) -> Orientation:
    """The direction of an Eulerian cycle-tree, built by peeling end-block cycles.

    The sign is fixed so that the first slot of the tree's first edge is +1.
    """
    if not check_parity(t):
        raise NoDirection("parity condition fails; the cycle-tree admits no direction")
    vals = _direction(t.graph, t)
    first = t.graph.sort_edges(t.edges)[0]
    if vals[first][0] == -1:
        vals = {e: [-a, -b] for e, (a, b) in vals.items()}
    eps = Orientation(t.graph, {e: tuple(v) for e, v in vals.items()})
    if not is_direction(t, eps):
        raise InvariantViolation("constructed orientation is not a direction")
    return eps


def indicator(t: CycleTree) -> IntFlow:
    vals = dict.fromkeys(t.edges, 0)
    for c in t.cycles:
        for e in c.edges:
            vals[e] = 1
    for p in t.paths:
        for e in p.edges:
            vals[e] = 2
    return IntFlow(t.graph, vals)


def characteristic_flow(t: CycleTree, eps_t: Orientation, eps: Orientation) -> IntFlow:
    ind = indicator(t)
    return IntFlow(t.graph, {e: coupling(eps, eps_t, e) * ind[e] for e in t.edges})


class CircuitType(enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    TYPE_III = "TypeIII"
    NOT_CIRCUIT = "NotCircuit"


@dataclass(frozen=True)
class CircuitClass:
    type: CircuitType
    cycles: tuple[Cycle, ...] = ()
    path: BlockPath | None = None

    def to_dict(self) -> dict:
        out = {"type": self.type.value, "cycles": [list(c.edges) for c in self.cycles]}
        if self.path is not None:
            out["path"] = list(self.path.edges)
        return out


def classify_circuit(t: CycleTree) -> CircuitClass:
    if not check_parity(t):
        raise ValueError("classification requires an Eulerian cycle-tree")
    cs, ps = t.cycles, t.paths
    if len(cs) == 1 and not ps and cs[0].balanced:
        return CircuitClass(CircuitType.TYPE_I, cs)
    if len(cs) == 2 and not any(c.balanced for c in cs):
        shared = set(cs[0].vertices) & set(cs[1].vertices)
        if not ps and len(shared) == 1:
            return CircuitClass(CircuitType.TYPE_II, cs)
        if len(ps) == 1 and not shared and len(ps[0]) > 0:
            return CircuitClass(CircuitType.TYPE_III, cs, ps[0])
    return CircuitClass(CircuitType.NOT_CIRCUIT)


def canonical_closed_walk(t: CycleTree, eps_t: Orientation) -> DirectedWalk:
    """Closed walk using block-cycle edges once and block-path edges twice,
    crossing blocks at every cut-point; it starts on the first end-block cycle."""
    g = t.graph
    steps: list[WalkStep] = []

    def step(eid, end):
        steps.append(WalkStep(eid, end, eps_t[(eid, end)], eps_t[(eid, 1 - end)]))

    def detour(v, came_from):
        for unit in t.units_at(v):
            if unit == came_from:
                continue
            kind, j = unit
            if kind == "c":
                tour_cycle(j, v, root=False)
            else:
                p = t.paths[j].from_vertex(v)
                for eid, end in p.steps:
                    step(eid, end)
                detour(p.vertices[-1], unit)
                for eid, end in p.reversed().steps:
                    step(eid, end)

    def tour_cycle(i, v, root):
        c = t.cycles[i].rotated_to(v)
        for k, (eid, end) in enumerate(c.steps):
            step(eid, end)
            if k < len(c) - 1:
                detour(c.vertices[k + 1], ("c", i))
        if root:
            detour(v, ("c", i))

    if len(t.cycles) == 1:
        start = t.cycles[0].vertices[0]
        tour_cycle(0, start, root=True)
    else:
        c0 = t.end_block_cycles()[0]
        (start,) = t.cycle_intersections(c0)
        tour_cycle(c0, start, root=True)
    w = DirectedWalk(g, start, steps)
    if validate_walk(w) or not w.is_closed:
        raise InvariantViolation(f"canonical walk is not a directed closed walk: {validate_walk(w)}")
    return w


@dataclass
class HalfDecomposition:
    """``W = C_0 P_1 C_1 ... P_k C_k P_{k+1}`` with Type III pieces ``C_i P_{i+1} C_{i+1}``.

    ``twice_identity`` holds the exact ledger: the sum of the piece indicators,
    which must equal twice the indicator of the tree.
    """
    tree: CycleTree
    walk: DirectedWalk
    end_cycles: list[DirectedWalk]
    paths: list[DirectedWalk]
    circuits: list[CycleTree]
    circuit_classes: list[CircuitClass]
    twice_identity: dict[str, int]

    @property
    def k(self) -> int:
        return len(self.end_cycles) - 1

    def coefficients(self) -> list[Fraction]:
        return [Fraction(1, 2)] * len(self.circuits)

    def identity_holds(self) -> bool:
        ind = indicator(self.tree)
        return all(self.twice_identity.get(e, 0) == 2 * ind[e] for e in self.tree.graph.edge_ids())

    def to_dict(self) -> dict:
        g = self.tree.graph
        return {
            "k": self.k,
            "end_cycles": [w.edges() for w in self.end_cycles],
            "paths": [w.edges() for w in self.paths],
            "circuits": [{"edges": g.sort_edges(c.edges), "type": cc.type.value}
                         for c, cc in zip(self.circuits, self.circuit_classes)],
            "coefficient": "1/2",
            "twice_indicator_sum": {e: self.twice_identity[e] for e in g.sort_edges(self.twice_identity)},
        }


def half_integer_decomposition(t: CycleTree, w: DirectedWalk) -> HalfDecomposition:
    """Cut a minimum-length closed walk of a non-circuit Eulerian cycle-tree
    at its end-block cycle traversals."""
    g = t.graph
    if classify_circuit(t).type is not CircuitType.NOT_CIRCUIT:
        raise ValueError("half-integer decomposition needs a non-circuit Eulerian cycle-tree (k >= 1)")
    if validate_walk(w) or not w.is_closed:
        raise ValueError("walk must be a directed closed walk")
    ind = indicator(t)
    counts = w.edge_counts()
    if any(counts[e] != ind[e] for e in g.edge_ids()):
        raise ValueError("walk must use block-cycle edges once and block-path edges twice")

    n = len(w)
    owner: dict[str, int] = {}
    for i in t.end_block_cycles():
        for e in t.cycles[i].edges:
            owner[e] = i
    starts = [pos for pos in range(n) if w.steps[pos].edge in owner
              and owner.get(w.steps[pos - 1].edge) != owner[w.steps[pos].edge]]
    if len(starts) != len(t.end_block_cycles()):
        raise InvariantViolation("end-block cycles are not traversed contiguously")
    rw = w.rotated(starts[0])
    offs = [s - starts[0] for s in starts] + [n]
    end_cycles, paths = [], []
    for a, b in zip(offs, offs[1:]):
        l = len(t.cycles[owner[rw.steps[a].edge]])
        end_cycles.append(rw.segment(a, a + l))
        paths.append(rw.segment(a + l, b))
    circuits, classes = [], []
    twice: Counter = Counter()
    m = len(end_cycles)
    for i in range(m):
        es = set(end_cycles[i].edges()) | set(paths[i].edges()) | set(end_cycles[(i + 1) % m].edges())
        ct = detect_cycle_tree(g, es)
        circuits.append(ct)
        classes.append(classify_circuit(ct))
        for e, x in indicator(ct).nonzero().items():
            twice[e] += x
    hd = HalfDecomposition(t, rw, end_cycles, paths, circuits, classes, dict(twice))
    problems = verify_half_decomposition(hd)
    if problems:
        raise InvariantViolation("; ".join(problems))
    return hd


def verify_half_decomposition(hd: HalfDecomposition, eps_t: Orientation | None = None) -> list[str]:
    t = hd.tree
    problems = []
    ends = {frozenset(t.cycles[i].edges) for i in t.end_block_cycles()}
    if {frozenset(c.edges()) for c in hd.end_cycles} != ends or len(hd.end_cycles) != len(ends):
        problems.append("C_i are not exactly the end-block cycles")
    if hd.k < 1:
        problems.append("k must be at least 1")
    for j, p in enumerate(hd.paths, 1):
        vs = p.vertices()
        if len(p) == 0 or len(set(vs)) != len(vs):
            problems.append(f"P_{j} is not a simple open path of positive length")
    uses = Counter(e for p in hd.paths for e in p.edges())
    in_end = {e for c in hd.end_cycles for e in c.edges()}
    path_edges = {e for p in t.paths for e in p.edges}
    for e in t.edges:
        want = 0 if e in in_end else (2 if e in path_edges else 1)
        if uses[e] != want:
            problems.append(f"edge {e!r} appears in {uses[e]} paths, expected {want}")
    for i, cc in enumerate(hd.circuit_classes):
        if cc.type is not CircuitType.TYPE_III:
            problems.append(f"piece {i} is {cc.type.value}, not TypeIII")
        if eps_t is not None and not is_direction(hd.circuits[i], eps_t.restrict(hd.circuits[i].edges)):
            problems.append(f"piece {i} is not directed by the tree direction")
    if not hd.identity_holds():
        problems.append("I_T != 1/2 sum of piece indicators")
    return problems
