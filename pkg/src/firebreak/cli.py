"""Command line entry point.

Reports are ``key=value`` lines on stdout.  Failures exit nonzero with one
JSON object ``{"error": ..., "message": ...}`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .exact import ExactError, solve_exhaustive
from .graph import GraphError, Instance
from .numeric import RATIONAL, ModeError, fmt

EXIT_FAIL = 1
EXIT_INVALID = 2


class CliError(Exception):
    def __init__(self, kind: str, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.kind = kind
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def _emit(**kv) -> None:
    for k, v in kv.items():
        if v is None:
            continue
        if isinstance(v, bool):
            v = "true" if v else "false"
        elif not isinstance(v, str):
            v = fmt(v)
        print(f"{k}={v}")


def _cut_label(inst: Instance, cut) -> str:
    g = inst.graph
    seen, parts = set(), []
    for e in sorted(cut):
        if e in seen:
            continue
        edge = g.edges[e]
        seen.add(e)
        if edge.pair is not None:
            seen.add(edge.pair)
        parts.append(f"{edge.tail}-{edge.head}")
    return ",".join(parts)


def _load(path) -> Instance:
    from .io import parse_instance

    return parse_instance(path)


def cmd_risk(args) -> int:
    from .risk import risk

    inst = _load(args.file)
    kw = {}
    if args.engine == "mc":
        kw = {"samples": args.samples, "seed": args.seed}
    res = risk(inst.graph, engine=args.engine, **kw)
    _emit(engine=args.engine, method=res.method, risk=res.value)
    if inst.mode == RATIONAL and args.engine != "mc":
        _emit(risk_float=repr(float(res.value)))
    if res.stderr is not None:
        _emit(stderr=repr(res.stderr), samples=str(res.samples), seed=str(args.seed))
    return 0


def cmd_solve(args) -> int:
    inst = _load(args.file)
    if args.algo == "tree":
        from .tree import solve_tree

        sol = solve_tree(inst, root=args.root, replace_on_tie=(args.ties == "cut"))
    else:
        sol = solve_exhaustive(inst)
    _emit(algo=args.algo, saved=sol.saved, risk=sol.risk, cost=sol.cost, cuts=_cut_label(inst, sol.cut))
    if inst.risk_threshold is not None:
        ok = sol.risk <= inst.risk_threshold
        _emit(threshold=inst.risk_threshold, feasible=ok)
        if not ok:
            raise CliError("infeasible", f"optimal risk {fmt(sol.risk)} exceeds threshold "
                           f"{fmt(inst.risk_threshold)}", EXIT_FAIL)
    return 0


def cmd_reduce(args) -> int:
    from . import io
    from .reductions import (
        flatten_costs,
        flatten_values,
        max2sat_to_wfl,
        partition_to_star_certified,
        r3sat_to_max2sat_certified,
    )

    text = Path(args.input).read_text()
    out = args.output
    if args.kind == "partition":
        inst, cert = partition_to_star_certified(io.loads_sizes(text))
        io.write_instance(out, inst, cert)
        _emit(vertices=str(inst.graph.n), edges=str(inst.graph.m), B=inst.budget, R=inst.risk_threshold)
    elif args.kind == "3sat-2sat":
        cert = r3sat_to_max2sat_certified(io.loads_cnf(text))
        Path(out).write_text(io.dumps_max2sat(cert.target))
        io.write_json(out + ".cert.json", cert.to_json())
        _emit(num_vars=str(cert.target.num_vars), clauses=str(len(cert.target.clauses)), K=str(cert.target.K))
    elif args.kind == "2sat-wfl":
        inst, cert = max2sat_to_wfl(io.loads_max2sat(text, args.k))
        io.write_instance(out, inst, cert)
        p = cert.params
        _emit(vertices=str(inst.graph.n), edges=str(inst.graph.m), s=p["s"], q=p["q"],
              omega=p["omega"], nu=p["nu"], B=p["B"], R=p["R"])
    elif args.kind == "flatten-values":
        inst, cert = flatten_values(io.loads_instance(text))
        io.write_instance(out, inst, cert)
        _emit(vertices=str(inst.graph.n), edges=str(inst.graph.m))
    elif args.kind == "flatten-costs":
        if args.f is None:
            raise CliError("usage", "flatten-costs needs --f")
        inst, cert = flatten_costs(io.loads_instance(text), args.f)
        io.write_instance(out, inst, cert)
        _emit(vertices=str(inst.graph.n), edges=str(inst.graph.m), M=str(cert.params["M"]),
              C=str(cert.params["C"]), R_prime=cert.params["R_prime"])
    _emit(output=out, certificate=out + ".cert.json")
    return 0


def cmd_gen(args) -> int:
    from .generators import generate
    from .io import write_instance

    kw = {}
    if args.budget is not None:
        kw["budget"] = args.budget
    inst = generate(args.kind, args.n, args.seed, **kw)
    write_instance(args.output, inst)
    _emit(kind=args.kind, vertices=str(inst.graph.n), edges=str(inst.graph.m), output=args.output)
    return 0


def cmd_verify(args) -> int:
    if args.what == "gadgets":
        from .reductions import verify_gadget_claims

        report = verify_gadget_claims()
        for line in report.lines():
            print(line)
        ok = report.passed
    else:
        from .reductions.chains import partition_chain, sat_chain, wfl_chain

        ok = True
        for fn in (partition_chain, sat_chain, wfl_chain):
            res = fn()
            print(f"{res.name}={'pass' if res.passed else 'FAIL'} agree={res.agree}/{res.total}")
            ok &= res.passed
    if not ok:
        raise CliError("verification_failed", f"{args.what} check failed", EXIT_FAIL)
    return 0


def cmd_bench(args) -> int:
    from .bench import run_suite, scaling_check, write_csv

    records = run_suite(args.suite, repeat=args.repeat)
    write_csv(args.out, records)
    _emit(records=str(len(records)), output=args.out)
    trees = [r for r in records if r.algo == "tree" and r.budget > 0]
    if len({(r.n_vertices, r.budget) for r in trees}) >= 2:
        rep = scaling_check(trees)
        _emit(scaling_slope=f"{rep.slope:.3f}", scaling_spread=f"{rep.spread:.3f}", scaling_pass=rep.passed)
    return 0


def cmd_export(args) -> int:
    from .dot import to_dot
    from .tree import TreeError, solve_tree

    inst = _load(args.dot)
    cut = frozenset()
    try:
        cut = solve_tree(inst).cut.members
    except TreeError:
        try:
            cut = solve_exhaustive(inst).cut.members
        except (ExactError, ValueError):
            cut = frozenset()
    sys.stdout.write(to_dot(inst, cut))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="firebreak", description="Firebreak placement on mixed graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("risk", help="evaluate the risk of an instance (no cut)")
    r.add_argument("--engine", choices=["windy", "exact", "naive", "mc"], required=True)
    r.add_argument("--samples", type=int, default=10_000)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("file")
    r.set_defaults(fn=cmd_risk)

    s = sub.add_parser("solve", help="optimal cut system within the budget")
    s.add_argument("--algo", choices=["tree", "exhaustive"], required=True)
    s.add_argument("--root", type=int, default=0, help="tree root (tree algo)")
    s.add_argument("--ties", choices=["cut", "keep"], default="cut",
                   help="tree algo: on equal value prefer the cut candidate (default) or keep the first")
    s.add_argument("file")
    s.set_defaults(fn=cmd_solve)

    d = sub.add_parser("reduce", help="build an instance from a source problem")
    d.add_argument("kind", choices=["partition", "3sat-2sat", "2sat-wfl", "flatten-values", "flatten-costs"])
    d.add_argument("--k", type=int, default=None, help="override K for 2sat-wfl")
    d.add_argument("--f", type=int, default=None, help="cost/probability bound for flatten-costs")
    d.add_argument("input")
    d.add_argument("output")
    d.set_defaults(fn=cmd_reduce)

    g = sub.add_parser("gen", help="write a deterministic random instance")
    g.add_argument("kind", choices=["tree", "star", "grid", "random"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--budget", type=int, default=None)
    g.add_argument("output")
    g.set_defaults(fn=cmd_gen)

    v = sub.add_parser("verify", help="exhaustive gadget and reduction checks")
    v.add_argument("what", choices=["gadgets", "chains"])
    v.set_defaults(fn=cmd_verify)

    b = sub.add_parser("bench", help="time solvers over a suite, write CSV")
    b.add_argument("--suite", required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--repeat", type=int, default=3)
    b.set_defaults(fn=cmd_bench)

    e = sub.add_parser("export", help="DOT rendering with the optimal cut styled")
    e.add_argument("--dot", required=True, metavar="FILE")
    e.set_defaults(fn=cmd_export)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except CliError as exc:
        err, code = {"error": exc.kind, "message": str(exc)}, exc.code
    except (GraphError, ModeError, ExactError, ValueError) as exc:
        err, code = {"error": type(exc).__name__, "message": str(exc)}, EXIT_INVALID
        path = getattr(exc, "path", None)
        if path:
            err["field"] = path
        line = getattr(exc, "line", None)
        if line is not None:
            err["line"] = line
    except OSError as exc:
        err, code = {"error": "io", "message": str(exc)}, EXIT_INVALID
    sys.stderr.write(json.dumps(err) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
