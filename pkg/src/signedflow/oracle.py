"""Brute-force ground truth for small instances.

Nothing here calls the structural fast paths in :mod:`signedflow.fra` or
:mod:`signedflow.cycletree` except where a check explicitly compares the two.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from math import prod

from .core import (Edge, IntFlow, Orientation, SignedFlowError, SignedGraph, connected_components,
                   incidence_coefficient, sign_of_edge_set)
from .cycletree import (CycleTree, NotCycleTree, check_parity, detect_cycle_tree, is_direction)
from .walk import DirectedWalk, WalkStep, is_eulerian_walk, walk_orientation

MAX_EDGES = 10
MAX_FLOW = 6
MAX_WALK = 12


class SizeGuard(SignedFlowError, ValueError):
    pass


def _guard_edges(g: SignedGraph, limit: int = MAX_EDGES) -> None:
    if len(g.edges) > limit:
        raise SizeGuard(f"{len(g.edges)} edges exceeds the oracle guard of {limit}")


def _kernel_points(g: SignedGraph, eps: Orientation, ranges: Sequence[Sequence[int]]) -> Iterator[tuple[int, ...]]:
    """All integer vectors with ``vals[i] in ranges[i]`` and zero boundary.

    Edges are assigned in order; a partial assignment is cut as soon as some
    vertex charge can no longer be cancelled by the unassigned edges.
    """
    m = len(g.edges)
    vidx = {v: i for i, v in enumerate(g.vertices)}
    coef = [[(vidx[v], c) for v in dict.fromkeys(e.ends)
             if (c := incidence_coefficient(g, eps, v, e.id))] for e in g.edges]
    reach = [max((abs(x) for x in r), default=0) for r in ranges]
    rem = [[0] * len(vidx) for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        rem[i] = list(rem[i + 1])
        for v, c in coef[i]:
            rem[i][v] += abs(c) * reach[i]
    charge = [0] * len(vidx)
    vals = [0] * m

    def rec(i):
        if i == m:
            yield tuple(vals)
            return
        after = rem[i + 1]
        for x in ranges[i]:
            for v, c in coef[i]:
                charge[v] += c * x
            if all(abs(charge[v]) <= after[v] for v, _ in coef[i]):
                vals[i] = x
                yield from rec(i + 1)
            for v, c in coef[i]:
                charge[v] -= c * x
        vals[i] = 0

    yield from rec(0)


@dataclass
class FlowBox:
    graph: SignedGraph
    eps: Orientation
    bound: int
    flows: list[IntFlow] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.flows)

    def __iter__(self):
        return iter(self.flows)

    def nontrivial(self) -> list[IntFlow]:
        return [f for f in self.flows if not f.is_zero()]


def enumerate_flows(g: SignedGraph, eps: Orientation, bound: int) -> FlowBox:
    """Every integer flow with ``|f(e)| <= bound``."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    _guard_edges(g)
    r = range(-bound, bound + 1)
    pts = _kernel_points(g, eps, [r] * len(g.edges))
    return FlowBox(g, eps, bound, [IntFlow(g, p) for p in pts])


def find_split(f: IntFlow, eps: Orientation) -> tuple[IntFlow, IntFlow] | None:
    """A sign-compatible split ``f = f1 + f2`` into nontrivial flows, or None."""
    g = f.graph
    _guard_edges(g)
    if max((abs(x) for x in f.values), default=0) > MAX_FLOW:
        raise SizeGuard(f"flow values exceed the oracle guard of {MAX_FLOW}")
    ranges = [range(0, x + 1) if x >= 0 else range(x, 1) for x in f.values]
    for p in _kernel_points(g, eps, ranges):
        if any(p) and p != f.values:
            f1 = IntFlow(g, p)
            return f1, f - f1
    return None


def brute_force_indecomposable(f: IntFlow, eps: Orientation) -> bool:
    if f.is_zero():
        raise ValueError("the zero flow is trivial")
    return find_split(f, eps) is None


def _closed_sub_walks(g: SignedGraph, budget: Counter, orient: Orientation,
                      first_slot: tuple[str, int]) -> Iterator[Counter]:
    """Edge multisets of directed closed walks within ``budget`` that leave
    ``first_slot`` first and read every slot direction off ``orient``."""
    start = g.slot_vertex(first_slot)
    d0 = orient[first_slot]
    used: Counter = Counter()

    def rec(v, arrive):
        if used and v == start and arrive == -d0:
            yield Counter(used)
        for eid, end in g.slots_at(v):
            if used[eid] >= budget[eid]:
                continue
            if used:
                if orient[(eid, end)] != -arrive:
                    continue
            elif (eid, end) != first_slot:
                continue
            used[eid] += 1
            yield from rec(g.edge(eid).ends[1 - end], orient[(eid, 1 - end)])
            used[eid] -= 1

    yield from rec(start, 0)


def brute_force_minimal_walk(w: DirectedWalk) -> bool:
    """No directed closed walk carrying the direction of ``w`` uses a proper
    sub-multiset of ``w``'s edges.

    Containment is between directed walks: the sub-walk must agree with
    ``w`` at every slot it uses, which is the sense in which minimality
    matches indecomposability of the characteristic vector.
    """
    if len(w) > MAX_WALK:
        raise SizeGuard(f"walk length {len(w)} exceeds the oracle guard of {MAX_WALK}")
    if not is_eulerian_walk(w):
        raise ValueError("walk is not Eulerian")
    full = w.edge_counts()
    g = w.graph
    orient = walk_orientation(w)
    for eid in g.sort_edges(full):
        for end in (0, 1):
            for ms in _closed_sub_walks(g, full, orient, (eid, end)):
                if ms != full:
                    return False
    return True


def min_closed_walk_length(g: SignedGraph, eids) -> int:
    """Length of the shortest closed walk (ignoring signs) using every edge of ``eids``."""
    eids = g.sort_edges(eids)
    target = frozenset(eids)
    best = None
    for length in range(len(eids), 2 * len(eids) + 1):
        for v0 in g.vertices_of(eids):
            stack = [(v0, 0, frozenset())]
            while stack:
                v, n, seen = stack.pop()
                if n == length:
                    if v == v0 and seen == target:
                        best = length
                        break
                    continue
                for eid, end in g.slots_at(v):
                    if eid in target:
                        stack.append((g.edge(eid).ends[1 - end], n + 1, seen | {eid}))
            if best is not None:
                return best
    raise ValueError("edge set admits no closed walk")


def enumerate_eulerian_cycle_trees(g: SignedGraph) -> list[CycleTree]:
    """Every edge subset inducing an Eulerian cycle-tree."""
    _guard_edges(g)
    out = []
    ids = g.edge_ids()
    for r in range(1, len(ids) + 1):
        for sub in itertools.combinations(ids, r):
            if len(connected_components(g, sub)) != 1:
                continue
            try:
                t = detect_cycle_tree(g, sub)
            except NotCycleTree:
                continue
            if check_parity(t):
                out.append(t)
    return out


def enumerate_directions(t: CycleTree) -> list[Orientation]:
    """Every orientation of ``t`` passing the direction predicate."""
    g = t.graph
    es = g.sort_edges(t.edges)
    out = []
    for choice in itertools.product((1, -1), repeat=len(es)):
        eps = Orientation(g, {e: (s, -g.sign(e) * s) for e, s in zip(es, choice)}, check=False)
        if is_direction(t, eps):
            out.append(eps)
    return out


def graph_family(max_vertices: int = 4, max_edges: int = 5, up_to_isomorphism: bool = False) -> Iterator[SignedGraph]:
    """Connected signed multigraphs on vertices ``0..n-1`` (all used), loops and
    parallel edges allowed, every sign pattern.

    Order: by vertex count, then edge count, then lexicographic multiset of
    ``((i, j), sign)`` with ``i <= j`` and ``+1`` before ``-1``.  Edges are named
    ``e0, e1, ...`` in that order.  With ``up_to_isomorphism`` only the
    lexicographically least vertex relabeling of each class is kept.
    """
    for n in range(1, max_vertices + 1):
        pairs = [(i, j) for i in range(n) for j in range(i, n)]
        types = [(p, s) for p in pairs for s in (1, -1)]
        seen = set()
        for m in range(1, max_edges + 1):
            for ms in itertools.combinations_with_replacement(types, m):
                if len({v for p, _ in ms for v in p}) != n:
                    continue
                if up_to_isomorphism:
                    key = min(tuple(sorted((tuple(sorted((perm[a], perm[b]))), s) for (a, b), s in ms))
                              for perm in itertools.permutations(range(n)))
                    if key in seen:
                        continue
                    seen.add(key)
                g = SignedGraph([str(i) for i in range(n)],
                                [Edge(f"e{k}", (str(a), str(b)), s) for k, ((a, b), s) in enumerate(ms)])
                if g.is_connected():
                    yield g


def graph_key(g: SignedGraph) -> str:
    """Compact id such as ``n2:0-0-,0-1+``."""
    parts = [f"{e.ends[0]}-{e.ends[1]}{'+' if e.sign > 0 else '-'}" for e in g.edges]
    return f"n{len(g.vertices)}:" + ",".join(parts)




def _cycle(anchor: str, fresh: int, length: int) -> tuple[list[tuple[str, str]], list[str]]:
    vs = [anchor] + [str(fresh + i) for i in range(length - 1)]
    if length == 1:
        return [(anchor, anchor)], vs
    return [(vs[i], vs[(i + 1) % length]) for i in range(length)], vs


def cycle_tree_shapes(max_edges: int = 8) -> list[list[tuple[str, str]]]:
    """Unsigned cycle-tree shapes with at most ``max_edges`` edges, one per
    isomorphism class, as edge lists on vertices ``"0", "1", ...``.

    Shapes grow from a single cycle by attaching, at a cycle vertex that is
    not yet an intersection vertex, either a new cycle or a path of positive
    length ending on a new cycle.
    """
    import networkx as nx

    out: list[list[tuple[str, str]]] = []
    buckets: dict[tuple, list] = {}
    frontier = []
    for length in range(1, max_edges + 1):
        es, vs = _cycle("0", 1, length)
        frontier.append((tuple(es), length, frozenset(vs)))
    while frontier:
        nxt = []
        for es, fresh, free in frontier:
            mg = nx.MultiGraph(list(es))
            key = (nx.weisfeiler_lehman_graph_hash(nx.Graph(mg)), tuple(sorted(d for _, d in mg.degree())),
                   sum(1 for u, v in es if u == v))
            bucket = buckets.setdefault(key, [])
            if any(nx.is_isomorphic(mg, h) for h in bucket):
                continue
            bucket.append(mg)
            out.append(list(es))
            room = max_edges - len(es)
            for v in sorted(free, key=int):
                rest = free - {v}
                for length in range(1, room + 1):
                    ce, vs = _cycle(v, fresh, length)
                    nxt.append((es + tuple(ce), fresh + length - 1, rest | frozenset(vs[1:])))
                for p in range(1, room):
                    path = [v] + [str(fresh + i) for i in range(p)]
                    pe = [(path[i], path[i + 1]) for i in range(p)]
                    for length in range(1, room - p + 1):
                        ce, vs = _cycle(path[-1], fresh + p, length)
                        nxt.append((es + tuple(pe) + tuple(ce), fresh + p + length - 1,
                                    rest | frozenset(vs[1:])))
        frontier = nxt
    return out


def cycle_tree_family(max_edges: int = 8, all_signs_up_to: int = 6, seed: int = 0) -> Iterator[SignedGraph]:
    """Signed cycle-trees over :func:`cycle_tree_shapes`.

    Shapes with at most ``all_signs_up_to`` edges get every sign pattern.
    Larger shapes get one pattern per choice of balanced/unbalanced for each
    block cycle, with the negative edges and the path-edge signs drawn from a
    seeded generator, so every parity configuration appears.
    """
    rng = random.Random(seed)
    for es in cycle_tree_shapes(max_edges):
        vertices = sorted({v for e in es for v in e}, key=int)
        base = SignedGraph(vertices, [Edge(f"e{k}", e, 1) for k, e in enumerate(es)])
        if len(es) <= all_signs_up_to:
            for signs in itertools.product((1, -1), repeat=len(es)):
                yield SignedGraph(vertices, [Edge(e.id, e.ends, s) for e, s in zip(base.edges, signs)])
            continue
        t = detect_cycle_tree(base, base.edge_ids())
        path_edges = [e for p in t.paths for e in p.edges]
        for pattern in itertools.product((1, -1), repeat=len(t.cycles)):
            sign = {e: rng.choice((1, -1)) for e in path_edges}
            for c, want in zip(t.cycles, pattern):
                cs = [rng.choice((1, -1)) for _ in c.edges]
                if prod(cs) != want:
                    cs[rng.randrange(len(cs))] *= -1
                sign.update(zip(c.edges, cs))
            yield SignedGraph(vertices, [Edge(e.id, e.ends, sign[e.id]) for e in base.edges])


def random_directed_walk(g: SignedGraph, rng, length: int) -> DirectedWalk:
    """Uniform random slot choices; the direction is fixed by a random first value."""
    slots = list(g.slots())
    eid, end = rng.choice(slots)
    start = g.slot_vertex((eid, end))
    d = rng.choice((1, -1))
    steps = []
    for i in range(length):
        if i:
            eid, end = rng.choice(g.slots_at(cur))
            d = -steps[-1].dir_to
        steps.append(WalkStep(eid, end, d, -g.sign(eid) * d))
        cur = g.edge(eid).ends[1 - end]
    return DirectedWalk(g, start, steps)


def random_closed_walks(graphs: Sequence[SignedGraph], count: int, seed: int = 0,
                        max_length: int = 10, keep: Callable[[DirectedWalk], bool] | None = None
                        ) -> list[DirectedWalk]:
    """``count`` random directed closed walks (optionally filtered by ``keep``)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        w = random_directed_walk(rng.choice(graphs), rng, rng.randint(1, max_length))
        if w.is_closed and (keep is None or keep(w)):
            out.append(w)
    return out


def enumerate_avoided_walks(g: SignedGraph, max_length: int) -> Iterator[DirectedWalk]:
    """Every midway-back avoided directed closed walk with at most ``max_length`` steps.

    Avoidance only looks at revisits strictly before the last step, so a
    prefix that violates it can be pruned.
    """
    def rec(start: str, steps: list[WalkStep], visits: dict[str, list[int]], cur: str):
        n = len(steps)
        if cur == start and steps[0].dir_from + steps[-1].dir_to == 0:
            yield DirectedWalk(g, start, list(steps))
        if n == max_length:
            return
        d = -steps[-1].dir_to
        if any(steps[a].dir_from != -d for a in visits.get(cur, ())):
            return
        visits.setdefault(cur, []).append(n)
        for eid, end in g.slots_at(cur):
            steps.append(WalkStep(eid, end, d, -g.sign(eid) * d))
            yield from rec(start, steps, visits, g.edge(eid).ends[1 - end])
            steps.pop()
        visits[cur].pop()

    for eid, end in g.slots():
        v = g.slot_vertex((eid, end))
        for d in (1, -1):
            yield from rec(v, [WalkStep(eid, end, d, -g.sign(eid) * d)], {v: [0]}, g.edge(eid).ends[1 - end])
