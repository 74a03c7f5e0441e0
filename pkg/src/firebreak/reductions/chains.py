"""Exhaustive equivalence suites: each construction against an independent brute force."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product

from ..exact import decide
from .sat import CnfInstance, Max2SatInstance, max2sat_brute, r3sat_to_max2sat
from .wfl import max2sat_to_wfl, partition_to_star


@dataclass
class ChainResult:
    name: str
    total: int = 0
    agree: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.total > 0 and self.agree == self.total

    def record(self, case, lhs: bool, rhs: bool) -> None:
        self.total += 1
        if lhs == rhs:
            self.agree += 1
        else:
            self.mismatches.append((case, lhs, rhs))


def _has_half_subset(sizes) -> bool:
    half = sum(sizes) // 2
    reach = {0}
    for s in sizes:
        reach |= {r + s for r in reach}
    return half in reach


def partition_chain(max_items: int = 5, max_size: int = 6) -> ChainResult:
    out = ChainResult("partition")
    for k in range(1, max_items + 1):
        for sizes in combinations_with_replacement(range(1, max_size + 1), k):
            if sum(sizes) % 2:
                continue
            out.record(sizes, decide(partition_to_star(sizes)), _has_half_subset(sizes))
    return out


def all_cnf_clauses(num_vars: int) -> list[tuple[int, ...]]:
    out = []
    for k in (2, 3):
        for vs in combinations(range(1, num_vars + 1), k):
            for signs in product((1, -1), repeat=k):
                out.append(tuple(s * v for s, v in zip(signs, vs)))
    return out


def sat_chain(num_vars: int = 4, max_clauses: int = 3) -> ChainResult:
    out = ChainResult("3sat-2sat")
    clauses = all_cnf_clauses(num_vars)
    for m in range(0, max_clauses + 1):
        for cs in combinations(clauses, m):
            cnf = CnfInstance(num_vars, cs)
            phi, K = r3sat_to_max2sat(cnf)
            out.record(cs, cnf.satisfiable(), max2sat_brute(phi, target=K) >= K)
    return out


def all_2clauses(num_vars: int) -> list[tuple[int, int]]:
    return [
        (s1 * a, s2 * b)
        for a, b in combinations(range(1, num_vars + 1), 2)
        for s1 in (1, -1)
        for s2 in (1, -1)
    ]


def wfl_chain(max_vars: int = 3, max_clauses: int = 3) -> ChainResult:
    out = ChainResult("2sat-wfl")
    for n in range(1, max_vars + 1):
        clauses = all_2clauses(n)
        for m in range(1, max_clauses + 1):
            for cs in combinations(clauses, m):
                for K in range(1, m + 1):
                    phi = Max2SatInstance(n, cs, K)
                    inst, _ = max2sat_to_wfl(phi)
                    out.record((n, cs, K), max2sat_brute(phi) >= K, decide(inst))
    return out


__all__ = ["ChainResult", "all_2clauses", "all_cnf_clauses", "partition_chain", "sat_chain", "wfl_chain"]
