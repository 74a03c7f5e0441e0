"""Value flattening (edge subdivision) and cost flattening (vertex grids)."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Integral

from ..graph import GraphError, Instance, build_graph, normalize_windy
from ..numeric import FLOAT
from .certificate import ReductionCertificate


def _positive_int(x, what: str) -> int:
    if isinstance(x, bool):
        raise GraphError(f"{what} must be a positive integer, got {x!r}")
    if isinstance(x, Integral) or (isinstance(x, Fraction) and x.denominator == 1) or (
        isinstance(x, float) and x.is_integer()
    ):
        if x >= 1:
            return int(x)
    raise GraphError(f"{what} must be a positive integer, got {x}")


def flatten_values(inst: Instance) -> tuple[Instance, ReductionCertificate]:
    """Every vertex of value k becomes k unit-value vertices joined by uncuttable edges.

    The k-1 extra vertices of ``v`` are chained onto the first link incident to
    ``v`` (by link index); the original edge then leaves from the end of the
    chain with its own type, spread, cost and orientation.  A vertex with no
    incident link gets a pendant chain.  Budget and threshold are unchanged and
    ``extra["edge_map"]`` sends each old edge id to its new id.
    """
    g = inst.graph
    if not g.is_windy():
        raise GraphError("value flattening needs a windy instance")
    phi = [_positive_int(v.value, f"vertex {i} value") for i, v in enumerate(g.vertices)]
    heavy = inst.budget + 1
    one = g.vertices[0].value / g.vertices[0].value if g.n else 1
    zero = one - one

    first_link: dict[int, int] = {}
    for k, link in enumerate(g.links()):
        e = g.edges[link[0]]
        for v in (e.tail, e.head):
            first_link.setdefault(v, k)
    link_of = {e: k for k, link in enumerate(g.links()) for e in link}

    vertices = [(one, v.ignition) for v in g.vertices]
    vorigin = [f"orig[{v}]" for v in range(g.n)]
    new_edges, eorigin = [], []
    chain_end = {}
    for v in range(g.n):
        prev = v
        for k in range(phi[v] - 1):
            w = len(vertices)
            vertices.append((one, zero))
            vorigin.append(f"chain[{v}][{k}]")
            new_edges.append((prev, w, False, 1, heavy))
            eorigin.append(f"chain[{v}][{k}]")
            prev = w
        chain_end[v] = prev

    def attach(v: int, link_index: int) -> int:
        return chain_end[v] if first_link.get(v) == link_index else v

    edge_map = {}
    for i, e in enumerate(g.edges):
        k = link_of[i]
        edge_map[i] = len(new_edges)
        new_edges.append((attach(e.tail, k), attach(e.head, k), e.directed, e.spread, e.cost))
        eorigin.append(f"orig[{i}]")
    g2 = build_graph(vertices, new_edges, g.mode)
    out = Instance(g2, inst.budget, inst.risk_threshold)
    cert = ReductionCertificate(
        "flatten-values",
        out,
        {"B": inst.budget, "R": inst.risk_threshold, "heavy_cost": heavy, "values": phi},
        vorigin,
        eorigin,
        {"edge_map": edge_map},
    )
    return out, cert


def grid_ignition(p, M: int) -> float:
    """``1 - (1 - p) ** (1 / M**2)`` in float, with ``0 ** x = 0``."""
    p = Fraction(p) if not isinstance(p, float) else p
    if p == 1:
        return 1.0
    if p == 0:
        return 0.0
    return -math.expm1(math.log1p(-float(p)) / (M * M))


def perimeter(M: int) -> list[tuple[int, int]]:
    """Grid cells ``(row, col)`` clockwise from the top-left corner."""
    if M == 1:
        return [(0, 0)]
    cells = [(0, c) for c in range(M)]
    cells += [(r, M - 1) for r in range(1, M)]
    cells += [(M - 1, c) for c in range(M - 2, -1, -1)]
    cells += [(r, 0) for r in range(M - 2, 0, -1)]
    return cells


def flatten_costs(inst: Instance, f_bound: int) -> tuple[Instance, ReductionCertificate]:
    """Every vertex becomes an M x M unit grid and every edge of cost k becomes k unit edges.

    Opposite couples are first merged into undirected edges.  Joining edges
    keep the orientation of lone arcs.  The output is in float mode (grid
    ignition probabilities are irrational in general); the certificate keeps
    the base probability of each grid and ``M``.  ``extra["joining"]`` lists
    the new edge ids standing for each edge of the merged source graph.
    """
    f = _positive_int(f_bound, "f_bound")
    g0 = inst.graph
    if not g0.is_windy():
        raise GraphError("cost flattening needs a windy instance")
    for i, v in enumerate(g0.vertices):
        if v.value != 1:
            raise GraphError(f"vertex {i}: cost flattening needs unit values, got {v.value}")
        if isinstance(v.ignition, float):
            raise GraphError("cost flattening needs rational ignition probabilities")
        if (f * Fraction(v.ignition)).denominator != 1:
            raise GraphError(f"vertex {i}: f_bound * ignition {v.ignition} is not an integer")
    if inst.risk_threshold is None:
        raise GraphError("cost flattening needs a risk threshold")
    g = normalize_windy(g0)
    costs = []
    for i, e in enumerate(g.edges):
        c = _positive_int(e.cost, f"edge {i} cost")
        if c > f:
            raise GraphError(f"edge {i}: cost {c} exceeds f_bound {f}")
        costs.append(c)
    B = inst.budget
    if not (isinstance(B, Integral) or (isinstance(B, Fraction) and B.denominator == 1)):
        raise GraphError(f"budget {B} must be an integer")
    B = int(B)
    R = Fraction(inst.risk_threshold)
    C = -(-B // 2)
    root = math.isqrt(int(math.ceil(2 * R * f + 1)))
    while Fraction(root * root) < 2 * R * f + 1:
        root += 1
    M = max(1 + C * root, g.m * f)
    M = max(M, 1)

    per = perimeter(M)
    demand = [0] * g.n
    for e, c in zip(g.edges, costs):
        demand[e.tail] += c
        demand[e.head] += c
    if max(demand, default=0) > len(per):
        raise GraphError("perimeter too short for the joining edges")
    slots = []
    for x in range(g.n):
        d = demand[x]
        slots.append([per[(k * len(per)) // d] for k in range(d)])
    used = [0] * g.n

    def vid(x: int, cell: tuple[int, int]) -> int:
        return x * M * M + cell[0] * M + cell[1]

    vertices, vorigin = [], []
    for x, v in enumerate(g.vertices):
        pi = grid_ignition(v.ignition, M)
        for r in range(M):
            for c in range(M):
                vertices.append((1.0, pi))
                vorigin.append({"vertex": x, "cell": [r, c], "base": v.ignition, "root": M * M})
    edges, eorigin = [], []
    for x in range(g.n):
        for r in range(M):
            for c in range(M):
                if c + 1 < M:
                    edges.append((vid(x, (r, c)), vid(x, (r, c + 1)), False, 1.0, 1.0))
                    eorigin.append(f"grid[{x}]")
                if r + 1 < M:
                    edges.append((vid(x, (r, c)), vid(x, (r + 1, c)), False, 1.0, 1.0))
                    eorigin.append(f"grid[{x}]")
    joining = []
    for i, (e, c) in enumerate(zip(g.edges, costs)):
        ids = []
        for _ in range(c):
            a = vid(e.tail, slots[e.tail][used[e.tail]])
            b = vid(e.head, slots[e.head][used[e.head]])
            used[e.tail] += 1
            used[e.head] += 1
            ids.append(len(edges))
            edges.append((a, b, e.directed, 1.0, 1.0))
            eorigin.append(f"join[{i}]")
        joining.append(ids)
    g2 = build_graph(vertices, edges, FLOAT)
    out = Instance(g2, float(B), float(M * M * R))
    params = {"B": B, "R": R, "f": f, "C": C, "M": M, "B_prime": B, "R_prime": M * M * R}
    cert = ReductionCertificate("flatten-costs", out, params, vorigin, eorigin,
                                {"joining": joining, "merged_edges": [list(e.ends()) for e in g.edges]})
    return out, cert


__all__ = ["flatten_costs", "flatten_values", "grid_ignition", "perimeter"]
