"""Flow reduction: greedy extraction of minimal directed Eulerian walks.

``fra_run`` grows a half-open walk along the support of ``|f|`` oriented by
``eps_f`` and stops at the first of three closure patterns.  Repeating it
on the residual gives a sign-compatible decomposition of ``f`` into
cycle-tree indicator flows.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import (FlowError, IntFlow, InvariantViolation, Orientation, SignedFlowError,
                   derived_orientation, is_flow, support)
from .cycletree import (CycleTree, NotCycleTree, check_parity, detect_cycle_tree, indicator,
                        is_cut_point, is_direction)
from .walk import (DirectedWalk, WalkStep, characteristic_vector, double_vertices, has_triple_vertex,
                   is_midway_back_avoided, is_minimal_eulerian)


class EmptySupport(SignedFlowError, ValueError):
    pass


class TrivialFlow(EmptySupport):
    pass


def _require_flow(f: IntFlow, eps: Orientation) -> None:
    if not is_flow(f, eps):
        raise FlowError("input is not conservative at every vertex")


def fra_run(f: IntFlow, eps: Orientation, trace: list | None = None, check: bool = True) -> DirectedWalk:
    """Find one minimal directed Eulerian walk ``(W, eps_f)`` with ``f_W <= |f|``.

    Ties are broken by edge input order, then by slot index.  When ``trace``
    is a list, one dict per step or stop decision is appended to it.
    """
    g = f.graph
    if f.is_zero():
        raise EmptySupport("FRA needs a nontrivial flow")
    eps_f = derived_orientation(f, eps)
    residual = [abs(x) for x in f.values]
    log = trace.append if trace is not None else (lambda _: None)

    def take(eid: str, end: int) -> None:
        steps.append(WalkStep(eid, end, eps_f[(eid, end)], eps_f[(eid, 1 - end)]))
        us.append(g.edge(eid).ends[1 - end])
        residual[g.edge_index(eid)] -= 1

    x1 = next(e.id for e, r in zip(g.edges, residual) if r > 0)
    steps: list[WalkStep] = []
    us = [g.edge(x1).ends[0]]
    take(x1, 0)
    log({"step": 0, "edge": x1, "from": us[0], "to": us[1]})

    while True:
        ell = len(steps)
        u = us[ell]
        seen = [i for i in range(ell) if us[i] == u]
        if seen:
            beta = seen[-1]
            arrive = steps[ell - 1].dir_to
            leave_beta = steps[beta].dir_from
            earlier = seen[:-1]
            if len(earlier) > 1:
                raise InvariantViolation(f"FRA reached a triple vertex {u!r}")
            if earlier:
                alpha = earlier[0]
                if arrive == -leave_beta:
                    form, walk = 12, DirectedWalk(g, us[beta], steps[beta:ell])
                else:
                    form, walk = 13, DirectedWalk(g, us[alpha], steps[alpha:ell])
                log({"stop": 3, "form": form, "alpha": alpha, "beta": beta, "ell": ell})
                break
            pairs = [(a, c) for c in range(beta + 1, ell) for a in range(beta) if us[a] == us[c]]
            if pairs:
                gamma = min(c for _, c in pairs)
                alpha = max(a for a, c in pairs if c == gamma)
                if arrive == -leave_beta:
                    form, walk = 12, DirectedWalk(g, us[beta], steps[beta:ell])
                else:
                    back = [s.reversed() for s in reversed(steps[alpha:beta])]
                    form, walk = 14, DirectedWalk(g, us[beta], back + list(steps[gamma:ell]))
                log({"stop": 4, "form": form, "alpha": alpha, "beta": beta, "gamma": gamma, "ell": ell})
                break
            if arrive == -leave_beta:
                walk = DirectedWalk(g, us[beta], steps[beta:ell])
                log({"stop": 5, "form": 12, "beta": beta, "ell": ell})
                break
        want = -steps[ell - 1].dir_to
        last = steps[ell - 1].edge
        cands = [(eid, end) for eid, end in g.slots_at(u)
                 if eid != last and residual[g.edge_index(eid)] > 0 and eps_f[(eid, end)] == want]
        if not cands:
            raise InvariantViolation(f"FRA found no continuation at {u!r}")
        eid, end = min(cands, key=lambda s: (g.edge_index(s[0]), s[1]))
        take(eid, end)
        log({"step": 2, "edge": eid, "from": u, "to": us[-1]})

    if check:
        problems = check_fra_walk(walk, f, eps)
        if problems:
            raise InvariantViolation("; ".join(problems))
    return walk


def check_fra_walk(w: DirectedWalk, f: IntFlow, eps: Orientation) -> list[str]:
    """Postconditions every FRA output must satisfy."""
    problems = []
    if not w.is_closed:
        problems.append("walk is not closed")
    if not is_midway_back_avoided(w):
        problems.append("walk is not midway-back avoided")
    if has_triple_vertex(w):
        problems.append("walk has a triple vertex")
    for v in double_vertices(w):
        if not is_cut_point(w.graph, w.support(), v):
            problems.append(f"double vertex {v!r} is not a cut-point")
    if not is_minimal_eulerian(w):
        problems.append("walk is not a minimal Eulerian walk")
    counts = w.edge_counts()
    if any(counts[e] > abs(f[e]) for e in counts):
        problems.append("f_W exceeds |f|")
    if w.is_closed:
        fw = characteristic_vector(w, eps)
        if any(a * b < 0 for a, b in zip(fw.values, f.values)):
            problems.append("characteristic vector disagrees in sign with f")
    return problems


@dataclass
class Term:
    walk: DirectedWalk
    tree: CycleTree
    flow: IntFlow

    def to_dict(self) -> dict:
        return {"walk": self.walk.to_dict(), "flow": self.flow.nonzero(), "cycle_tree": self.tree.describe()}


@dataclass
class Decomposition:
    flow: IntFlow
    eps: Orientation
    terms: list[Term] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.terms)

    def total(self) -> IntFlow:
        acc = IntFlow(self.flow.graph)
        for t in self.terms:
            acc = acc + t.flow
        return acc

    def verify(self) -> list[str]:
        problems = []
        if self.total() != self.flow:
            problems.append("terms do not sum to f")
        for i, t in enumerate(self.terms):
            if t.flow.is_zero():
                problems.append(f"term {i} is trivial")
            if any(a * b < 0 for a, b in zip(t.flow.values, self.flow.values)):
                problems.append(f"term {i} is not sign-compatible with f")
        return problems


def decompose_flow(f: IntFlow, eps: Orientation, trace: list | None = None,
                   check: bool = True) -> Decomposition:
    """Split ``f`` into characteristic vectors of minimal directed Eulerian walks.

    ``check=False`` skips the per-walk contract in :func:`fra_run`, for
    callers that verify the terms themselves.
    """
    _require_flow(f, eps)
    g = f.graph
    eps_f = derived_orientation(f, eps)
    out = Decomposition(f, eps)
    residual = abs(f)
    while not residual.is_zero():
        run: list | None = [] if trace is not None else None
        w = fra_run(residual, eps_f, trace=run, check=check)
        if trace is not None:
            trace.append({"term": len(out.terms), "events": run})
        counts = w.edge_counts()
        residual = residual - IntFlow(g, dict(counts))
        out.terms.append(Term(w, detect_cycle_tree(g, w.support()), characteristic_vector(w, eps)))
    problems = out.verify()
    if problems:
        raise InvariantViolation("; ".join(problems))
    return out


@dataclass
class Verdict:
    indecomposable: bool
    tree: CycleTree | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.indecomposable


def is_indecomposable(f: IntFlow, eps: Orientation) -> Verdict:
    """Structural test: ``|f|`` is the indicator of an Eulerian cycle-tree on ``supp f``."""
    if f.is_zero():
        raise TrivialFlow("the zero flow is neither decomposable nor indecomposable")
    _require_flow(f, eps)
    g = f.graph
    try:
        t = detect_cycle_tree(g, support(f))
    except NotCycleTree as exc:
        return Verdict(False, None, f"support is not a cycle-tree: {exc}")
    if not check_parity(t):
        return Verdict(False, None, "support fails the parity condition")
    ind = indicator(t)
    if any(abs(x) != ind[e] for e, x in f.items()):
        return Verdict(False, None, "|f| differs from the cycle-tree indicator")
    eps_f = derived_orientation(f, eps).restrict(t.edges)
    if not is_direction(t, eps_f):
        raise InvariantViolation("eps_f is not a direction of the witness cycle-tree")
    return Verdict(True, t, "")
