"""Instance, CNF and Max 2SAT file formats.

Instance files are JSON::

    {"mode": "rational" | "float",
     "vertices": [{"id": 0, "value": 1, "ignition": "1/2"}, ...],
     "edges": [{"tail": 0, "head": 1, "directed": false, "spread": 1, "cost": 1}, ...],
     "budget": 3, "risk_threshold": null}

Rational mode takes integers or ``"p/q"`` strings; float mode takes JSON
numbers.  :func:`dumps_instance` is canonical, so ``dumps(loads(text))`` is
byte-identical for any text it produced.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .graph import GraphError, Instance, build_graph
from .numeric import FLOAT, MODES, RATIONAL, ModeError, parse_fraction
from .reductions.sat import CnfInstance, Max2SatInstance, SatError


class FormatError(ValueError):
    """Schema problem; ``path`` names the offending field (``edges[2].cost``)."""

    def __init__(self, message: str, path: str = "", line: Optional[int] = None):
        self.path = path
        self.line = line
        where = path
        if line is not None:
            where = f"line {line}" + (f", {path}" if path else "")
        super().__init__(f"{where}: {message}" if where else message)


def _num(x: Any, mode: str, path: str):
    if isinstance(x, bool) or x is None:
        raise FormatError(f"expected a number, got {json.dumps(x)}", path)
    if mode == RATIONAL:
        if isinstance(x, float):
            raise ModeError(f"{path}: float {x!r} in a rational-mode instance (write \"p/q\")")
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            try:
                return parse_fraction(x)
            except ValueError as exc:
                raise FormatError(str(exc), path) from None
        raise FormatError(f"expected an integer or \"p/q\" string, got {json.dumps(x)}", path)
    if isinstance(x, str):
        raise ModeError(f"{path}: rational literal {x!r} in a float-mode instance")
    if isinstance(x, (int, float)):
        if not math.isfinite(x):
            raise FormatError(f"non-finite number {x!r}", path)
        return float(x)
    raise FormatError(f"expected a number, got {json.dumps(x)}", path)


def _obj(x: Any, path: str) -> dict:
    if not isinstance(x, dict):
        raise FormatError("expected an object", path)
    return x


def _req(d: dict, key: str, path: str):
    if key not in d:
        raise FormatError(f"missing field {key!r}", path)
    return d[key]


def _int(x: Any, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"expected an integer, got {json.dumps(x)}", path)
    return x


def _check_keys(d: dict, allowed: set, path: str) -> None:
    extra = sorted(set(d) - allowed)
    if extra:
        raise FormatError(f"unknown field {extra[0]!r}", path)


def instance_from_dict(doc: Any) -> Instance:
    doc = _obj(doc, "")
    _check_keys(doc, {"mode", "vertices", "edges", "budget", "risk_threshold"}, "")
    mode = _req(doc, "mode", "")
    if mode not in MODES:
        raise FormatError(f"mode must be one of {list(MODES)}, got {json.dumps(mode)}", "mode")
    vlist = _req(doc, "vertices", "")
    if not isinstance(vlist, list):
        raise FormatError("expected a list", "vertices")
    by_id = {}
    for k, v in enumerate(vlist):
        p = f"vertices[{k}]"
        v = _obj(v, p)
        _check_keys(v, {"id", "value", "ignition"}, p)
        vid = _int(_req(v, "id", p), f"{p}.id")
        if vid in by_id:
            raise FormatError(f"duplicate vertex id {vid}", f"{p}.id")
        val = _num(_req(v, "value", p), mode, f"{p}.value")
        ign = _num(_req(v, "ignition", p), mode, f"{p}.ignition")
        if val < 0:
            raise FormatError(f"negative value {val}", f"{p}.value")
        if not 0 <= ign <= 1:
            raise FormatError(f"ignition probability {ign} outside [0,1]", f"{p}.ignition")
        by_id[vid] = (val, ign)
    if sorted(by_id) != list(range(len(by_id))):
        raise FormatError("vertex ids must be exactly 0..n-1", "vertices")
    vertices = [by_id[i] for i in range(len(by_id))]
    elist = _req(doc, "edges", "")
    if not isinstance(elist, list):
        raise FormatError("expected a list", "edges")
    edges = []
    for k, e in enumerate(elist):
        p = f"edges[{k}]"
        e = _obj(e, p)
        _check_keys(e, {"tail", "head", "directed", "spread", "cost"}, p)
        t = _int(_req(e, "tail", p), f"{p}.tail")
        h = _int(_req(e, "head", p), f"{p}.head")
        d = _req(e, "directed", p)
        if not isinstance(d, bool):
            raise FormatError("expected true or false", f"{p}.directed")
        sp = _num(_req(e, "spread", p), mode, f"{p}.spread")
        cost = _num(_req(e, "cost", p), mode, f"{p}.cost")
        if not 0 <= sp <= 1:
            raise FormatError(f"spread probability {sp} outside [0,1]", f"{p}.spread")
        edges.append((t, h, d, sp, cost))
    budget = _num(_req(doc, "budget", ""), mode, "budget")
    rt = doc.get("risk_threshold")
    rt = None if rt is None else _num(rt, mode, "risk_threshold")
    try:
        g = build_graph(vertices, edges, mode)
        return Instance(g, budget, rt)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def loads_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, line=exc.lineno) from None
    return instance_from_dict(doc)


def parse_instance(path) -> Instance:
    return loads_instance(Path(path).read_text())


def _out(x, mode: str):
    if mode == FLOAT:
        return float(x)
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def instance_to_dict(inst: Instance) -> dict:
    g = inst.graph
    mode = g.mode
    return {
        "mode": mode,
        "vertices": [
            {"id": i, "value": _out(v.value, mode), "ignition": _out(v.ignition, mode)}
            for i, v in enumerate(g.vertices)
        ],
        "edges": [
            {"tail": e.tail, "head": e.head, "directed": e.directed,
             "spread": _out(e.spread, mode), "cost": _out(e.cost, mode)}
            for e in g.edges
        ],
        "budget": _out(inst.budget, mode),
        "risk_threshold": None if inst.risk_threshold is None else _out(inst.risk_threshold, mode),
    }


def dumps_instance(inst: Instance) -> str:
    """Canonical text: one vertex or edge per line, trailing newline."""
    d = instance_to_dict(inst)
    lines = ["{", f'  "mode": {json.dumps(d["mode"])},', '  "vertices": [']
    lines += [
        "    " + json.dumps(v, separators=(", ", ": ")) + ("," if k + 1 < len(d["vertices"]) else "")
        for k, v in enumerate(d["vertices"])
    ]
    lines += ["  ],", '  "edges": [']
    lines += [
        "    " + json.dumps(e, separators=(", ", ": ")) + ("," if k + 1 < len(d["edges"]) else "")
        for k, e in enumerate(d["edges"])
    ]
    lines += ["  ],", f'  "budget": {json.dumps(d["budget"])},',
              f'  "risk_threshold": {json.dumps(d["risk_threshold"])}', "}"]
    return "\n".join(lines) + "\n"


serialize = dumps_instance


def write_instance(path, inst: Instance, certificate=None) -> None:
    """Write ``path`` and, when given, the certificate to ``<path>.cert.json``."""
    Path(path).write_text(dumps_instance(inst))
    if certificate is not None:
        write_json(str(path) + ".cert.json", certificate.to_json())


def write_json(path, doc) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


# -- CNF / Max 2SAT -----------------------------------------------------------

def loads_cnf(text: str) -> CnfInstance:
    """DIMACS (``p cnf n m`` then zero-terminated clauses) or JSON ``{"num_vars", "clauses"}``."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = _obj(json.loads(text), "")
            return CnfInstance(_int(_req(doc, "num_vars", ""), "num_vars"),
                               tuple(tuple(c) for c in _req(doc, "clauses", "")))
        except json.JSONDecodeError as exc:
            raise FormatError(exc.msg, line=exc.lineno) from None
        except SatError as exc:
            raise FormatError(str(exc), "clauses") from None
    num_vars = None
    clauses, cur = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError("header must read 'p cnf <vars> <clauses>'", line=lineno)
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"bad literal {tok!r}", line=lineno) from None
            if lit == 0:
                clauses.append(tuple(cur))
                cur = []
            else:
                cur.append(lit)
    if cur:
        clauses.append(tuple(cur))
    if num_vars is None:
        raise FormatError("missing 'p cnf' header")
    try:
        return CnfInstance(num_vars, tuple(clauses))
    except SatError as exc:
        raise FormatError(str(exc)) from None


def dumps_cnf(cnf: CnfInstance) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    lines += [" ".join(str(x) for x in c) + " 0" for c in cnf.clauses]
    return "\n".join(lines) + "\n"


def loads_max2sat(text: str, k_override: Optional[int] = None) -> Max2SatInstance:
    try:
        doc = _obj(json.loads(text), "")
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, line=exc.lineno) from None
    _check_keys(doc, {"num_vars", "clauses", "K"}, "")
    n = _int(_req(doc, "num_vars", ""), "num_vars")
    clauses = _req(doc, "clauses", "")
    if not isinstance(clauses, list):
        raise FormatError("expected a list", "clauses")
    K = k_override if k_override is not None else _int(_req(doc, "K", ""), "K")
    try:
        return Max2SatInstance(n, tuple(tuple(c) for c in clauses), K)
    except SatError as exc:
        raise FormatError(str(exc), "clauses") from None


def dumps_max2sat(phi: Max2SatInstance) -> str:
    lines = ["{", f'  "num_vars": {phi.num_vars},', f'  "K": {phi.K},', '  "clauses": [']
    lines += [
        f"    [{a}, {b}]" + ("," if k + 1 < len(phi.clauses) else "")
        for k, (a, b) in enumerate(phi.clauses)
    ]
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def loads_sizes(text: str) -> list[int]:
    """Partition input: JSON ``{"sizes": [...]}``, a JSON list, or whitespace-separated integers."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise FormatError(exc.msg, line=exc.lineno) from None
        if isinstance(doc, dict):
            doc = _req(doc, "sizes", "")
        if not isinstance(doc, list):
            raise FormatError("expected a list of sizes", "sizes")
        return [_int(x, f"sizes[{k}]") for k, x in enumerate(doc)]
    try:
        return [int(tok) for tok in stripped.split()]
    except ValueError as exc:
        raise FormatError(str(exc)) from None
