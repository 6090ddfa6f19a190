"""Command-line front end.

Exit status: 0 success, 1 invalid input, 2 size guard, 3 internal invariant
violation.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import GraphError, InvariantViolation, SignedFlowError, boundary, derived_orientation
from .cycletree import (CircuitType, NotCycleTree, check_parity, classify_circuit, detect_cycle_tree,
                        find_direction, half_integer_decomposition, indicator)
from .dot import to_dot
from .fra import decompose_flow, is_indecomposable
from .io import Document, ParseError, dumps, load
from .oracle import SizeGuard, brute_force_indecomposable, enumerate_flows, graph_key
from .sweep import Row, run_sweep

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_INVARIANT = 0, 1, 2, 3


class InputError(SignedFlowError, ValueError):
    pass


def _report(args, doc: Document | None, result: dict) -> dict:
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}
    return {"command": echo, "input_digest": doc.digest if doc else None, "result": result}


def _require_flow(doc: Document) -> None:
    if doc.flow is None:
        raise InputError("flow: this command needs a flow in the input file")
    charges = {v: c for v, c in boundary(doc.flow, doc.eps()).items() if c}
    if charges:
        v, c = next(iter(charges.items()))
        raise InputError(f"flow: not conservative at vertex {v!r} (charge {c})")


def cmd_check(args) -> tuple[str, int]:
    doc = load(args.file)
    eps = doc.eps()
    result: dict = {
        "graph": {"vertices": len(doc.graph.vertices), "edges": len(doc.graph.edges), "ok": True},
        "orientation": "given" if doc.orientation is not None else "default",
    }
    status = EXIT_OK
    if doc.flow is not None:
        charges = {v: c for v, c in boundary(doc.flow, eps).items() if c}
        result["flow"] = {"ok": not charges, "charges": charges}
        if charges:
            v, c = next(iter(charges.items()))
            result["error"] = f"flow: not conservative at vertex {v!r} (charge {c})"
            status = EXIT_INPUT
    return dumps(_report(args, doc, result)), status


def _term_payload(term) -> dict:
    cls = classify_circuit(term.tree)
    out = term.to_dict()
    out["class"] = cls.to_dict()
    if cls.type is CircuitType.NOT_CIRCUIT:
        out["half_decomposition"] = half_integer_decomposition(term.tree, term.walk).to_dict()
    return out


def cmd_decompose(args) -> tuple[str, int]:
    doc = load(args.file)
    _require_flow(doc)
    f, eps = doc.flow, doc.eps()
    trace: list | None = [] if args.trace else None
    d = decompose_flow(f, eps, trace=trace)
    eps_f = derived_orientation(f, eps)
    if args.format == "dot":
        parts = [to_dot(doc.graph, eps_f.restrict(t.tree.edges), t.tree, t.flow, name=f"term{i}")
                 for i, t in enumerate(d.terms)]
        return "".join(parts), EXIT_OK
    result: dict = {"flow": dict(f.items()), "terms": [_term_payload(t) for t in d.terms]}
    if f.is_zero():
        result["notice"] = "trivial flow: empty decomposition"
    else:
        v = is_indecomposable(f, eps)
        result["indecomposable"] = v.indecomposable
    if trace is not None:
        result["trace"] = trace
    return dumps(_report(args, doc, result)), EXIT_OK


def cmd_classify(args) -> tuple[str, int]:
    doc = load(args.file)
    g = doc.graph
    if not g.is_connected():
        raise InputError("edges: the edge set does not induce a connected subgraph")
    t = detect_cycle_tree(g, g.edge_ids())
    parity = check_parity(t)
    result: dict = {"cycle_tree": t.describe(), "parity": {"ok": parity.ok, "cycles": parity.cycles}}
    eps_t = None
    if parity.ok:
        eps_t = find_direction(t)
        result["direction"] = {e: list(eps_t.pair(e)) for e in g.sort_edges(eps_t.edges)}
        result["indicator"] = dict(indicator(t).items())
        result["class"] = classify_circuit(t).to_dict()
    else:
        result["direction"] = None
        result["class"] = None
    if args.format == "dot":
        return to_dot(g, eps_t, t), EXIT_OK
    return dumps(_report(args, doc, result)), EXIT_OK


def cmd_oracle(args) -> tuple[str, int]:
    if args.family:
        rep = run_sweep(args.max_vertices, args.max_edges, args.bound, workers=args.workers,
                        keep_rows=bool(args.out))
        result: dict = {"summary": rep.summary()}
        for name in ("disagreements", "decomposition_problems", "census_problems", "half_problems"):
            result[name] = getattr(rep, name)
        if args.out:
            result["rows"] = [r.to_dict() for r in rep.rows]
        return dumps(_report(args, None, result)), EXIT_OK if rep.ok else EXIT_INVARIANT
    if not args.file:
        raise InputError("oracle: give a FILE or --family")
    doc = load(args.file)
    eps = doc.eps()
    if doc.flow is not None:
        _require_flow(doc)
        flows = [doc.flow] if not doc.flow.is_zero() else []
    else:
        flows = enumerate_flows(doc.graph, eps, args.bound).nontrivial()
    key = graph_key(doc.graph)
    rows = [Row(key, f.values, brute_force_indecomposable(f, eps), bool(is_indecomposable(f, eps)))
            for f in flows]
    bad = [r for r in rows if not r.agree]
    result = {"rows": [r.to_dict() for r in rows], "disagreements": len(bad)}
    return dumps(_report(args, doc, result)), EXIT_OK if not bad else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="signedflow", description="Flow decomposition on signed graphs.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, fmt=False):
        sp.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
        if fmt:
            sp.add_argument("--format", choices=("json", "dot"), default="json")

    sp = sub.add_parser("check", help="validate graph, orientation and flow")
    sp.add_argument("file")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("decompose", help="decompose a flow into minimal Eulerian walks")
    sp.add_argument("file")
    sp.add_argument("--trace", action="store_true", help="include the step-by-step reduction log")
    common(sp, fmt=True)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("classify", help="recognize and classify the graph as a cycle-tree")
    sp.add_argument("file")
    common(sp, fmt=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("oracle", help="compare the structural test with brute force")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--family", action="store_true", help="sweep the generated graph family")
    sp.add_argument("--max-vertices", type=int, default=4)
    sp.add_argument("--max-edges", type=int, default=5)
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--workers", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, status = args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except SizeGuard as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except GraphError as exc:
        print(f"invalid graph: {'; '.join(exc.violations)}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, InputError, NotCycleTree, SignedFlowError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
