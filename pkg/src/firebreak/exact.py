"""Exhaustive optimum and decision check for small instances.

Subsets are taken over links (undirected edges, opposite couples, lone arcs),
so every candidate is closed by construction.  Links costing more than the
budget can never be cut and are dropped before enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .graph import CutSystem, Instance, MixedGraph, cut_cost
from .numeric import RATIONAL, Number
from .risk import DEFAULT_ENUMERATION_BOUND, WindyEvaluator, exact_risk

MAX_LINKS = 22


class ExactError(ValueError):
    pass


@dataclass(frozen=True)
class Solution:
    cut: CutSystem
    cost: Number
    risk: Number
    saved: Number


def _candidate_links(g: MixedGraph, budget, max_links: int):
    """Affordable links with their costs, plus the budget, on a common scale.

    Rational costs are multiplied by the lcm of their denominators so the
    subset walk adds plain integers; the comparison ``cost <= budget`` is
    unchanged by the scaling.
    """
    links = [(link, g.link_cost(link)) for link in g.links() if g.link_cost(link) <= budget]
    if len(links) > max_links:
        raise ExactError(f"{len(links)} cuttable links exceed the exhaustive bound {max_links}")
    if g.mode == RATIONAL:
        scale = 1
        for _, c in links:
            scale = math.lcm(scale, Fraction(c).denominator)
        links = [(link, int(c * scale)) for link, c in links]
        budget = math.floor(Fraction(budget) * scale)
    return links, budget


def _subsets(links, budget) -> Iterator[tuple[tuple[int, ...], Number]]:
    """Every subset (as a tuple of link positions) whose cost fits in ``budget``."""
    n = len(links)
    stack = [((), budget - budget, 0)]
    while stack:
        chosen, cost, k = stack.pop()
        if k == n:
            yield chosen, cost
            continue
        # push "take" first so "skip" is explored first; order does not affect results
        c = cost + links[k][1]
        if c <= budget:
            stack.append((chosen + (k,), c, k + 1))
        stack.append((chosen, cost, k + 1))


class _Scorer:
    def __init__(self, g: MixedGraph, bound: int):
        self.g = g
        self.ev = WindyEvaluator(g)
        self.windy = g.is_windy()
        self.bound = bound

    def risk(self, cut_edges: frozenset) -> Number:
        if self.windy:
            return self.ev.value(i for i in range(self.g.m) if i not in cut_edges)
        return exact_risk(self.g, cut_edges, self.bound, self.ev).value


def _enumerate(inst: Instance, max_links: int, bound: int, budget=None):
    g = inst.graph
    budget = inst.budget if budget is None else budget
    links, scaled = _candidate_links(g, budget, max_links)
    scorer = _Scorer(g, bound)
    for chosen, _ in _subsets(links, scaled):
        members = frozenset(e for k in chosen for e in links[k][0])
        yield members, cut_cost(g, members), scorer.risk(members)


def _better(risk, members, best) -> bool:
    if best is None:
        return True
    if risk != best[0]:
        return risk < best[0]
    return tuple(sorted(members)) < tuple(sorted(best[1]))


def solve_exhaustive(
    inst: Instance,
    max_links: int = MAX_LINKS,
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND,
) -> Solution:
    """Minimum-risk closed cut system with cost at most B.

    Ties go to the lexicographically smallest sorted edge-id tuple.
    """
    best = None
    for members, cost, r in _enumerate(inst, max_links, enumeration_bound):
        if _better(r, members, best):
            best = (r, members, cost)
    r, members, cost = best
    return Solution(CutSystem(members), cost, r, inst.graph.total_value() - r)


def solve_profile(
    inst: Instance,
    budgets: Iterable[Number],
    max_links: int = MAX_LINKS,
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND,
) -> dict:
    """Optimal solutions for several budgets from one enumeration.

    Equivalent to calling :func:`solve_exhaustive` once per budget.
    """
    budgets = sorted(set(budgets))
    if not budgets:
        return {}
    # best first under the same order as _better; each budget takes the first that fits
    records = sorted(_enumerate(inst, max_links, enumeration_bound, budgets[-1]),
                     key=lambda t: (t[2], tuple(sorted(t[0]))))
    total = inst.graph.total_value()
    out = {}
    for b in budgets:
        members, cost, r = next(t for t in records if t[1] <= b)
        out[b] = Solution(CutSystem(members), cost, r, total - r)
    return out


def decide(
    inst: Instance,
    max_links: int = MAX_LINKS,
    enumeration_bound: int = DEFAULT_ENUMERATION_BOUND,
    witness: Optional[list] = None,
) -> bool:
    """Is there a closed cut of cost <= B with risk <= R?

    Feasible subsets are visited by decreasing cost (ties in enumeration
    order) and the search stops at the first witness; the answer does not
    depend on the order, only the time to find a witness does.
    """
    if inst.risk_threshold is None:
        raise ExactError("decide needs a risk threshold")
    g = inst.graph
    links, scaled = _candidate_links(g, inst.budget, max_links)
    subsets = sorted(_subsets(links, scaled), key=lambda t: t[1], reverse=True)
    scorer = _Scorer(g, enumeration_bound)
    for chosen, _ in subsets:
        members = frozenset(e for k in chosen for e in links[k][0])
        r = scorer.risk(members)
        if r <= inst.risk_threshold:
            if witness is not None:
                witness.append(Solution(CutSystem(members), cut_cost(g, members), r, g.total_value() - r))
            return True
    return False
