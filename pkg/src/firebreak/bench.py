"""Benchmark harness: time solvers over a suite and check O(|V| * B^2) growth."""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .exact import ExactError, solve_exhaustive
from .generators import generate
from .io import FormatError, loads_instance
from .numeric import fmt
from .risk import windy_risk
from .tree import TreeError, TreeInstance, solve_tree

COLUMNS = ("id", "|V|", "|E|", "B", "algo", "ms", "value")


@dataclass(frozen=True)
class BenchRecord:
    id: str
    n_vertices: int
    n_edges: int
    budget: object
    algo: str
    ms: float
    value: object

    def row(self) -> list:
        return [self.id, self.n_vertices, self.n_edges, fmt(self.budget), self.algo,
                f"{self.ms:.4f}", fmt(self.value)]


def _best_ms(fn, repeat: int) -> tuple[float, object]:
    out = fn()  # warm-up: JIT compile and cached arrays
    best = math.inf
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best * 1e3, out


def run_one(ident: str, inst, algo: Optional[str] = None, repeat: int = 3, backend: str = "auto") -> BenchRecord:
    """Time one instance.  ``algo`` defaults to tree, then exhaustive, then windy risk.

    For ``tree`` the rooted tree is prepared once outside the timed region;
    ``backend`` is passed to :func:`solve_tree` (pin it when comparing sizes,
    since ``auto`` switches implementation at a work threshold).
    ``value`` is the saved value for solvers and the risk for ``windy``.
    """
    g = inst.graph
    tree = None
    if algo in (None, "tree"):
        try:
            tree = TreeInstance.from_instance(inst)
            algo = "tree"
        except TreeError:
            if algo == "tree":
                raise
    if algo is None:
        algo = "exhaustive" if len([l for l in g.links() if g.link_cost(l) <= inst.budget]) <= 16 else "windy"
    if algo == "tree":
        ms, sol = _best_ms(lambda: solve_tree(tree, backend=backend), repeat)
        value = sol.saved
    elif algo == "exhaustive":
        ms, sol = _best_ms(lambda: solve_exhaustive(inst), repeat)
        value = sol.saved
    elif algo == "windy":
        ms, res = _best_ms(lambda: windy_risk(g), repeat)
        value = res.value
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    return BenchRecord(ident, g.n, g.m, inst.budget, algo, ms, value)


def load_suite(path) -> list[tuple[str, object, Optional[str], str]]:
    """Suite = directory of instance files, or a JSON file.

    The JSON form holds ``"instances"`` (entries with ``"path"`` or a generator
    spec ``{"gen", "n", "seed", "budget", ...}``, optionally ``"algo"`` and
    ``"backend"``) and/or ``"grid"`` (a
    generator spec whose list-valued fields are expanded as a product).
    """
    path = Path(path)
    if path.is_dir():
        return [(p.stem, loads_instance(p.read_text()), None, "auto") for p in sorted(path.glob("*.json"))]
    doc = json.loads(path.read_text())
    out = []
    for k, entry in enumerate(doc.get("instances", [])):
        out.append(_entry(entry, path.parent, f"instances[{k}]"))
    grid = doc.get("grid")
    if grid:
        keys = sorted(grid)
        lists = [grid[k] if isinstance(grid[k], list) else [grid[k]] for k in keys]
        for combo in _product(lists):
            spec = dict(zip(keys, combo))
            out.append(_entry(spec, path.parent, "grid"))
    return out


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for rest in _product(lists[1:]):
            yield (head,) + rest


def _entry(entry: dict, base: Path, where: str):
    entry = dict(entry)
    algo = entry.pop("algo", None)
    backend = entry.pop("backend", "auto")
    if "path" in entry:
        p = base / entry["path"]
        return entry.get("id", p.stem), loads_instance(p.read_text()), algo, backend
    if "gen" not in entry:
        raise FormatError("suite entry needs 'path' or 'gen'", where)
    kind = entry.pop("gen")
    n = entry.pop("n")
    seed = entry.pop("seed", 0)
    ident = entry.pop("id", None) or f"{kind}-n{n}-s{seed}" + "".join(
        f"-{k}{v}" for k, v in sorted(entry.items()))
    return ident, generate(kind, n, seed, **entry), algo, backend


def run_suite(path, repeat: int = 3) -> list[BenchRecord]:
    return [run_one(ident, inst, algo, repeat, backend) for ident, inst, algo, backend in load_suite(path)]


def write_csv(path, records: Iterable[BenchRecord]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(COLUMNS)
        for r in records:
            w.writerow(r.row())


@dataclass(frozen=True)
class ScalingReport:
    slope: float
    spread: float
    normalized: tuple
    passed: bool


def scaling_check(records: Iterable[BenchRecord], factor: float = 3.0) -> ScalingReport:
    """Compare tree timings with ``|V| * B^2``.

    ``slope`` is the least-squares slope of log(ms) on log(|V| B^2) and
    ``spread`` the max/min ratio of ms / (|V| B^2); the check passes when the
    spread is at most ``factor``.
    """
    rows = [r for r in records if r.algo == "tree" and r.budget > 0]
    if len(rows) < 2:
        raise ValueError("scaling check needs at least two tree records with B > 0")
    work = np.array([r.n_vertices * float(r.budget) ** 2 for r in rows])
    ms = np.array([r.ms for r in rows])
    slope = float(np.polyfit(np.log(work), np.log(ms), 1)[0])
    norm = ms / work
    spread = float(norm.max() / norm.min())
    return ScalingReport(slope, spread, tuple(float(x) for x in norm), spread <= factor)


__all__ = ["BenchRecord", "COLUMNS", "ScalingReport", "load_suite", "run_one", "run_suite",
           "scaling_check", "write_csv", "ExactError"]
