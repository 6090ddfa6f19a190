"""Exhaustive agreement sweep over a graph family.

Each graph is checked independently by :func:`check_graph`; :func:`run_sweep`
merges the per-graph reports in family order, so results do not depend on
the number of worker processes.
"""
from __future__ import annotations

import os
from collections import Counter
from collections.abc import Callable, Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import IntFlow, Orientation, SignedGraph, sign_of_edge_set
from .cycletree import (CircuitType, CycleTree, blocks, canonical_closed_walk, classify_circuit,
                        find_direction, half_integer_decomposition, is_cut_point,
                        verify_half_decomposition)
from .fra import decompose_flow, is_indecomposable
from .oracle import (MAX_WALK, brute_force_indecomposable, brute_force_minimal_walk,
                     enumerate_eulerian_cycle_trees, enumerate_flows, graph_family, graph_key)
from .walk import (characteristic_vector, double_vertices, has_triple_vertex, is_midway_back_avoided,
                   is_minimal_eulerian, walk_orientation)


@dataclass
class Row:
    graph: str
    flow: tuple[int, ...]
    oracle: bool
    fast: bool

    @property
    def agree(self) -> bool:
        return self.oracle == self.fast

    def to_dict(self) -> dict:
        return {"graph": self.graph, "flow": list(self.flow), "oracle": self.oracle, "fast": self.fast}


@dataclass
class SweepReport:
    graphs: int = 0
    flows: int = 0
    trees: int = 0
    circuits: int = 0
    non_circuits: int = 0
    terms: int = 0
    rows: list[Row] = field(default_factory=list)
    disagreements: list[str] = field(default_factory=list)
    decomposition_problems: list[str] = field(default_factory=list)
    census_problems: list[str] = field(default_factory=list)
    half_problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.disagreements or self.decomposition_problems
                    or self.census_problems or self.half_problems)

    def merge(self, other: "SweepReport") -> None:
        for name in ("graphs", "flows", "trees", "circuits", "non_circuits", "terms"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        for name in ("rows", "disagreements", "decomposition_problems", "census_problems", "half_problems"):
            getattr(self, name).extend(getattr(other, name))

    def summary(self) -> dict:
        return {
            "graphs": self.graphs, "flows": self.flows, "terms": self.terms,
            "eulerian_cycle_trees": self.trees, "circuits": self.circuits,
            "non_circuits": self.non_circuits,
            "disagreements": len(self.disagreements),
            "decomposition_problems": len(self.decomposition_problems),
            "census_problems": len(self.census_problems),
            "half_problems": len(self.half_problems),
            "ok": self.ok,
        }


def _degrees(t: CycleTree) -> Counter:
    deg: Counter = Counter()
    for e in t.edges:
        a, b = t.graph.edge(e).ends
        deg[a] += 1
        deg[b] += 1
    return deg


def circuit_templates(t: CycleTree) -> list[CircuitType]:
    """Circuit shapes matched by ``t``, decided from degrees and blocks only."""
    g = t.graph
    deg = _degrees(t)
    n_v, n_e = len(deg), len(t.edges)
    bl = blocks(g, t.edges)
    cyc = [b for b in bl if not (len(b) == 1 and not g.edge(b[0]).is_loop)]
    out = []
    if n_e == n_v and set(deg.values()) == {2} and sign_of_edge_set(g, t.edges) == 1:
        out.append(CircuitType.TYPE_I)
    if n_e == n_v + 1 and sorted(deg.values())[-1] == 4 and Counter(deg.values())[4] == 1 \
            and len(bl) == 2 and all(sign_of_edge_set(g, b) == -1 for b in bl):
        out.append(CircuitType.TYPE_II)
    if n_e == n_v + 1 and Counter(deg.values())[3] == 2 and max(deg.values()) == 3 \
            and len(cyc) == 2 and all(sign_of_edge_set(g, b) == -1 for b in cyc):
        out.append(CircuitType.TYPE_III)
    return out


def _check_decomposition(f: IntFlow, eps: Orientation, fast: bool, key: str, memo: dict) -> tuple[list[str], int]:
    problems = []
    g = f.graph
    tag = f"{key} f={list(f.values)}"
    d = decompose_flow(f, eps, check=False)
    problems += [f"{tag}: {p}" for p in d.verify()]
    for i, term in enumerate(d.terms):
        w = term.walk
        if characteristic_vector(w, eps) != term.flow:
            problems.append(f"{tag}: term {i} is not its walk's characteristic vector")
        if any(n > abs(f[e]) for e, n in w.edge_counts().items()):
            problems.append(f"{tag}: term {i} walk exceeds |f|")
        if has_triple_vertex(w):
            problems.append(f"{tag}: term {i} walk has a triple vertex")
        if not is_midway_back_avoided(w):
            problems.append(f"{tag}: term {i} walk is not midway-back avoided")
        for v in double_vertices(w):
            if not is_cut_point(g, w.support(), v):
                problems.append(f"{tag}: term {i} double vertex {v!r} is not a cut-point")
        minimal = is_minimal_eulerian(w)
        if not minimal:
            problems.append(f"{tag}: term {i} walk is not a minimal Eulerian walk")
        ms = (frozenset(w.edge_counts().items()), walk_orientation(w))
        if len(w) <= MAX_WALK and minimal:
            if ms not in memo:
                memo[ms] = brute_force_minimal_walk(w)
            if not memo[ms]:
                problems.append(f"{tag}: term {i} walk properly contains a directed closed walk")
    if fast and (len(d) != 1 or d.terms[0].flow != f):
        problems.append(f"{tag}: indecomposable flow did not reduce to a single term")
    return problems, len(d)


def _check_trees(g: SignedGraph, key: str, rep: SweepReport) -> None:
    trees = enumerate_eulerian_cycle_trees(g)
    rep.trees += len(trees)
    for t in trees:
        tag = f"{key} T={g.sort_edges(t.edges)}"
        contained = any(o.edges < t.edges for o in trees)
        cls = classify_circuit(t)
        is_circuit = cls.type is not CircuitType.NOT_CIRCUIT
        if is_circuit == contained:
            rep.census_problems.append(f"{tag}: class {cls.type.value} but contained={contained}")
        if is_circuit:
            rep.circuits += 1
            shapes = circuit_templates(t)
            if shapes != [cls.type]:
                rep.census_problems.append(f"{tag}: class {cls.type.value} but templates {[s.value for s in shapes]}")
            continue
        rep.non_circuits += 1
        rep.half_problems += [f"{tag}: {p}" for p in half_decomposition_problems(t)]


def half_decomposition_problems(t: CycleTree) -> list[str]:
    """Checks on the half-integer decomposition of a non-circuit Eulerian cycle-tree."""
    eps_t = find_direction(t)
    w = canonical_closed_walk(t, eps_t)
    try:
        hd = half_integer_decomposition(t, w)
    except Exception as exc:  # report, do not abort the sweep
        return [f"{type(exc).__name__}: {exc}"]
    probs = verify_half_decomposition(hd, eps_t)
    if not hd.identity_holds():
        probs.append("identity I_T = 1/2 sum fails")
    if any(c.type is not CircuitType.TYPE_III for c in hd.circuit_classes):
        probs.append("a summand is not Type III")
    if len(hd.circuits) != len(t.end_block_cycles()):
        probs.append("summand count differs from end-block count")
    return probs


def check_graph(g: SignedGraph, bound: int = 3, keep_rows: bool = False,
                decompose: bool = True, trees: bool = True) -> SweepReport:
    rep = SweepReport(graphs=1)
    key = graph_key(g)
    eps = Orientation.default(g)
    memo: dict = {}
    for f in enumerate_flows(g, eps, bound).nontrivial():
        rep.flows += 1
        oracle = brute_force_indecomposable(f, eps)
        fast = bool(is_indecomposable(f, eps))
        row = Row(key, f.values, oracle, fast)
        if keep_rows:
            rep.rows.append(row)
        if not row.agree:
            rep.disagreements.append(f"{key} f={list(f.values)}: oracle={oracle} fast={fast}")
        if decompose:
            probs, n = _check_decomposition(f, eps, fast, key, memo)
            rep.decomposition_problems += probs
            rep.terms += n
    if trees:
        _check_trees(g, key, rep)
    return rep


def _job(args) -> SweepReport:
    g, bound, keep_rows, decompose, trees = args
    return check_graph(g, bound, keep_rows, decompose, trees)


def run_sweep(max_vertices: int = 4, max_edges: int = 5, bound: int = 3, *, workers: int | None = None,
              up_to_isomorphism: bool = False, keep_rows: bool = False, decompose: bool = True,
              trees: bool = True, graphs: Iterable[SignedGraph] | None = None,
              progress: Callable[[int], None] | None = None) -> SweepReport:
    """Check every graph of the family (or ``graphs``); ``workers=None`` uses all CPUs."""
    if graphs is None:
        graphs = graph_family(max_vertices, max_edges, up_to_isomorphism)
    jobs = ((g, bound, keep_rows, decompose, trees) for g in graphs)
    if workers is None:
        workers = os.cpu_count() or 1
    total = SweepReport()
    if workers <= 1:
        results = map(_job, jobs)
        for i, r in enumerate(results, 1):
            total.merge(r)
            if progress:
                progress(i)
        return total
    with ProcessPoolExecutor(workers) as pool:
        for i, r in enumerate(pool.map(_job, jobs, chunksize=64), 1):
            total.merge(r)
            if progress:
                progress(i)
    return total
