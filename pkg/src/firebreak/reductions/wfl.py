"""Instance constructors: Partition to a star, Max 2SAT to a windy instance."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..graph import GraphError, Instance, build_graph
from ..numeric import RATIONAL
from .certificate import ReductionCertificate
from .sat import Max2SatInstance, SatError

MAX_LITERAL_OCCURRENCES = 4


def partition_to_star_certified(sizes: Sequence[int]) -> tuple[Instance, ReductionCertificate]:
    sizes = list(sizes)
    for s in sizes:
        if isinstance(s, bool) or not isinstance(s, int) or s <= 0:
            raise GraphError(f"partition sizes must be positive integers, got {s!r}")
    total = sum(sizes)
    if total % 2:
        raise GraphError(f"partition total {total} is odd")
    half = total // 2
    vertices = [(0, 1)] + [(s, 0) for s in sizes]
    edges = [(0, i + 1, False, 1, s) for i, s in enumerate(sizes)]
    g = build_graph(vertices, edges, RATIONAL)
    inst = Instance(g, Fraction(half), Fraction(half))
    cert = ReductionCertificate(
        "partition",
        inst,
        {"sizes": sizes, "S": half, "B": half, "R": half},
        ["center"] + [f"leaf[{i}]" for i in range(len(sizes))],
        [f"spoke[{i}]" for i in range(len(sizes))],
    )
    return inst, cert


def partition_to_star(sizes: Sequence[int]) -> Instance:
    """Center (value 0, always ignites) joined to one leaf per size (value = cost = size)."""
    return partition_to_star_certified(sizes)[0]


def wfl_parameters(n: int, m: int, K: int) -> dict:
    s = m + 1
    q = 1 - Fraction(1, 2 * K - 1)
    omega = 8 * m * (2 * K - 1)
    nu = 8 * m * (Fraction(5, 2) * omega + 2)
    B = n * s + m
    R = 2 * n * nu + m * omega * (Fraction(3, 2) + q) + m * (Fraction(7, 4) + q / 8) - Fraction(K, 8)
    return {"n": n, "m": m, "K": K, "s": s, "q": q, "omega": omega, "nu": nu, "B": B, "R": R}


def max2sat_to_wfl(phi: Max2SatInstance) -> tuple[Instance, ReductionCertificate]:
    """Windy instance whose decision answer equals ``max sat >= K``.

    Layout: variable paths ``x - x' - not x`` first (3 per variable), then
    clause paths ``l_x^c - c' - l_y^c`` (3 per clause), then two binding
    vertices per clause, each fed by uncuttable arcs from the literal vertex
    and from the clause-side copy of that literal.
    """
    if phi.K < 1:
        raise SatError("K must be at least 1")
    for lit, count in sorted(phi.literal_counts().items()):
        if count > MAX_LITERAL_OCCURRENCES:
            raise SatError(f"literal {lit} occurs in {count} clauses (at most {MAX_LITERAL_OCCURRENCES})")
    n, m = phi.num_vars, len(phi.clauses)
    p = wfl_parameters(n, m, phi.K)
    half = Fraction(1, 2)
    vertices, vorigin = [], []
    edges, eorigin = [], []
    for i in range(1, n + 1):
        for role in ("pos", "mid", "neg"):
            vertices.append((p["nu"], half))
            vorigin.append(f"var[{i}].{role}")
        base = 3 * (i - 1)
        edges += [(base, base + 1, False, 1, p["s"]), (base + 1, base + 2, False, 1, p["s"])]
        eorigin += [f"var[{i}].edge[0]", f"var[{i}].edge[1]"]

    def literal_vertex(lit: int) -> int:
        return 3 * (abs(lit) - 1) + (0 if lit > 0 else 2)

    clause_base = 3 * n
    for j, (a, b) in enumerate(phi.clauses):
        base = clause_base + 3 * j
        vertices += [(p["omega"], half), (p["omega"], p["q"]), (p["omega"], half)]
        vorigin += [f"clause[{j}].lit[{a}]", f"clause[{j}].mid", f"clause[{j}].lit[{b}]"]
        edges += [(base, base + 1, False, 1, 1), (base + 1, base + 2, False, 1, 1)]
        eorigin += [f"clause[{j}].edge[0]", f"clause[{j}].edge[1]"]
    bind_base = clause_base + 3 * m
    for j, clause in enumerate(phi.clauses):
        for k, lit in enumerate(clause):
            bv = bind_base + 2 * j + k
            vertices.append((1, 0))
            vorigin.append(f"bind[{j}].lit[{lit}]")
            side = clause_base + 3 * j + 2 * k
            edges += [(literal_vertex(lit), bv, True, 1, p["B"] + 1), (side, bv, True, 1, p["B"] + 1)]
            eorigin += [f"bind[{j}].from_var", f"bind[{j}].from_clause"]
    g = build_graph(vertices, edges, RATIONAL)
    inst = Instance(g, Fraction(p["B"]), p["R"])
    cert = ReductionCertificate(
        "max2sat",
        inst,
        p,
        vorigin,
        eorigin,
        {"clauses": [list(c) for c in phi.clauses], "num_vars": n},
    )
    return inst, cert


__all__ = [
    "MAX_LITERAL_OCCURRENCES", "max2sat_to_wfl", "partition_to_star",
    "partition_to_star_certified", "wfl_parameters",
]
