"""CNF / Max 2SAT containers, the 3SAT to Max 2SAT gadgets and their checks.

Literals are signed 1-based variable indices (DIMACS style): ``3`` is x3 and
``-3`` its negation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

import numpy as np
from numba import njit

MAX_BRUTE_VARS = 24


class SatError(ValueError):
    pass


def _check_clause(clause: Sequence[int], num_vars: int, where: str) -> tuple[int, ...]:
    lits = tuple(int(x) for x in clause)
    for lit in lits:
        if lit == 0 or abs(lit) > num_vars:
            raise SatError(f"{where}: literal {lit} outside 1..{num_vars}")
    if len(set(lits)) != len(lits):
        raise SatError(f"{where}: repeated literal in {lits}")
    if len({abs(x) for x in lits}) != len(lits):
        raise SatError(f"{where}: clause {lits} holds a variable and its negation")
    return lits


@dataclass(frozen=True)
class CnfInstance:
    num_vars: int
    clauses: tuple

    def __post_init__(self):
        if self.num_vars < 0:
            raise SatError("num_vars must be non-negative")
        cl = []
        for i, c in enumerate(self.clauses):
            if not 1 <= len(c) <= 3:
                raise SatError(f"clause {i}: size {len(c)} not in 1..3")
            cl.append(_check_clause(c, self.num_vars, f"clause {i}"))
        object.__setattr__(self, "clauses", tuple(cl))

    def satisfiable(self) -> bool:
        return cnf_brute(self) is not None


@dataclass(frozen=True)
class Max2SatInstance:
    num_vars: int
    clauses: tuple
    K: int

    def __post_init__(self):
        if self.num_vars < 0:
            raise SatError("num_vars must be non-negative")
        cl = []
        for i, c in enumerate(self.clauses):
            if len(c) != 2:
                raise SatError(f"clause {i}: Max 2SAT clauses have two literals, got {len(c)}")
            cl.append(_check_clause(c, self.num_vars, f"clause {i}"))
        object.__setattr__(self, "clauses", tuple(cl))
        if not isinstance(self.K, int) or isinstance(self.K, bool):
            raise SatError("K must be an integer")
        if self.K > len(cl):
            raise SatError(f"K = {self.K} exceeds the clause count {len(cl)}")

    def literal_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for c in self.clauses:
            for lit in c:
                counts[lit] = counts.get(lit, 0) + 1
        return counts


def _lit_true(lit: int, assign: Sequence[bool]) -> bool:
    v = assign[abs(lit) - 1]
    return v if lit > 0 else not v


def count_satisfied(clauses, assign: Sequence[bool]) -> int:
    return sum(any(_lit_true(lit, assign) for lit in c) for c in clauses)


def cnf_brute(cnf: CnfInstance) -> Optional[tuple[bool, ...]]:
    """First satisfying assignment in binary order, or None."""
    if cnf.num_vars > MAX_BRUTE_VARS:
        raise SatError(f"{cnf.num_vars} variables exceed the brute-force bound {MAX_BRUTE_VARS}")
    for assign in product((False, True), repeat=cnf.num_vars):
        if count_satisfied(cnf.clauses, assign) == len(cnf.clauses):
            return assign
    return None


@njit(cache=True)
def _gray_max(num_vars, lit_var, lit_pos, occ_ptr, occ_clause, occ_slot, target):
    m = lit_var.shape[0]
    # all variables False to start
    true_count = np.zeros(m, np.int64)
    for c in range(m):
        for s in range(2):
            if not lit_pos[c, s]:
                true_count[c] += 1
    sat = 0
    for c in range(m):
        if true_count[c] > 0:
            sat += 1
    best = sat
    if best >= target:
        return best
    assign = np.zeros(num_vars, np.bool_)
    total = 1 << num_vars
    for i in range(1, total):
        v = 0
        x = i
        while (x & 1) == 0:
            x >>= 1
            v += 1
        assign[v] = not assign[v]
        now = assign[v]
        for k in range(occ_ptr[v], occ_ptr[v + 1]):
            c = occ_clause[k]
            s = occ_slot[k]
            before = true_count[c]
            if lit_pos[c, s] == now:
                true_count[c] = before + 1
                if before == 0:
                    sat += 1
            else:
                true_count[c] = before - 1
                if before == 1:
                    sat -= 1
        if sat > best:
            best = sat
            if best >= target:
                return best
    return best


def max2sat_brute(phi: Max2SatInstance, target: Optional[int] = None) -> int:
    """Maximum number of simultaneously satisfied clauses (Gray-code sweep).

    With ``target`` the sweep stops as soon as that many clauses are satisfied
    and returns the count reached, so ``>= target`` answers are still exact.
    """
    n = phi.num_vars
    if n > MAX_BRUTE_VARS:
        raise SatError(f"{n} variables exceed the brute-force bound {MAX_BRUTE_VARS}")
    m = len(phi.clauses)
    if m == 0:
        return 0
    lit_var = np.array([[abs(a) - 1 for a in c] for c in phi.clauses], dtype=np.int64)
    lit_pos = np.array([[a > 0 for a in c] for c in phi.clauses], dtype=np.bool_)
    occ: list[list[tuple[int, int]]] = [[] for _ in range(max(n, 1))]
    for c, clause in enumerate(phi.clauses):
        for s, lit in enumerate(clause):
            occ[abs(lit) - 1].append((c, s))
    occ_ptr = np.zeros(n + 1, dtype=np.int64)
    flat = []
    for v in range(n):
        flat.extend(occ[v])
        occ_ptr[v + 1] = len(flat)
    occ_clause = np.array([c for c, _ in flat], dtype=np.int64)
    occ_slot = np.array([s for _, s in flat], dtype=np.int64)
    stop = m + 1 if target is None else int(target)
    return int(_gray_max(n, lit_var, lit_pos, occ_ptr, occ_clause, occ_slot, stop))


# -- 3SAT -> Max 2SAT ---------------------------------------------------------

def three_clause_gadget(l1: int, l2: int, l3: int, a: int) -> list[tuple[int, ...]]:
    """The ten clauses replacing ``(l1, l2, l3)``; the last four are unit clauses."""
    return [(l1, l2), (l1, l3), (l2, l3), (l1, a), (l2, a), (l3, a), (-l1,), (-l2,), (-l3,), (-a,)]


def two_clause_gadget(x: int, y: int, z: int) -> list[tuple[int, int]]:
    """Eight clauses on fresh x, y, z of which exactly six hold under any assignment."""
    return [(x, y), (x, -y), (x, z), (x, -z), (-x, y), (-x, -y), (-x, z), (-x, -z)]


def unit_expansion(lit: int, r: int) -> list[tuple[int, int]]:
    return [(lit, r), (lit, -r)]


@dataclass
class SatCertificate:
    source: CnfInstance
    target: Max2SatInstance
    params: dict
    fresh_vars: dict = field(default_factory=dict)
    clause_origin: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "source": {"num_vars": self.source.num_vars, "clauses": [list(c) for c in self.source.clauses]},
            "params": dict(self.params),
            "fresh_vars": {str(k): v for k, v in sorted(self.fresh_vars.items())},
            "clause_origin": [list(x) for x in self.clause_origin],
        }


def r3sat_to_max2sat_certified(cnf: CnfInstance) -> SatCertificate:
    for i, c in enumerate(cnf.clauses):
        if len(c) not in (2, 3):
            raise SatError(f"clause {i}: only 2- and 3-clauses are accepted, got size {len(c)}")
    next_var = cnf.num_vars + 1
    fresh: dict[int, str] = {}
    out: list[tuple[int, int]] = []
    origin: list[tuple[int, str]] = []
    units: list[tuple[int, int]] = []
    n3 = 0
    for i, c in enumerate(cnf.clauses):
        if len(c) == 3:
            n3 += 1
            a = next_var
            next_var += 1
            fresh[a] = f"a[{i}]"
            for cl in three_clause_gadget(*c, a):
                if len(cl) == 1:
                    units.append((i, cl[0]))
                else:
                    out.append(cl)
                    origin.append((i, "3-clause gadget"))
        else:
            out.append(c)
            origin.append((i, "original"))
            x, y, z = next_var, next_var + 1, next_var + 2
            next_var += 3
            fresh.update({x: f"x[{i}]", y: f"y[{i}]", z: f"z[{i}]"})
            for cl in two_clause_gadget(x, y, z):
                out.append(cl)
                origin.append((i, "2-clause gadget"))
    for i, lit in units:
        r = next_var
        next_var += 1
        fresh[r] = f"r[{i},{lit}]"
        for cl in unit_expansion(lit, r):
            out.append(cl)
            origin.append((i, f"unit {lit}"))
    K = 7 * len(cnf.clauses) + 4 * n3
    target = Max2SatInstance(next_var - 1, tuple(out), K)
    params = {"K": K, "clauses": len(cnf.clauses), "three_clauses": n3}
    return SatCertificate(cnf, target, params, fresh, origin)


def r3sat_to_max2sat(cnf: CnfInstance) -> tuple[Max2SatInstance, int]:
    cert = r3sat_to_max2sat_certified(cnf)
    return cert.target, cert.target.K


# -- exhaustive gadget checks -------------------------------------------------

@dataclass(frozen=True)
class GadgetReport:
    checks: tuple  # (name, passed, detail)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        return [f"{name}={'pass' if ok else 'FAIL'} {detail}".rstrip() for name, ok, detail in self.checks]


def verify_gadget_claims(h_gadget: Optional[Sequence[Sequence[int]]] = None) -> GadgetReport:
    """Check the four gadget properties over every assignment of their variables.

    The 3-clause gadget uses variables 1, 2, 3 for the literals and 4 for the
    fresh variable.  ``h_gadget`` overrides the 2-clause gadget (variables
    1, 2, 3) so a damaged copy can be shown to fail.
    """
    g3 = three_clause_gadget(1, 2, 3, 4)
    at_most_seven = True
    worst = 0
    unsat_le_six = True
    sat_reaches_seven = True
    for lits in product((False, True), repeat=3):
        counts = [count_satisfied(g3, lits + (a,)) for a in (False, True)]
        worst = max(worst, *counts)
        at_most_seven &= max(counts) <= 7
        if any(lits):
            sat_reaches_seven &= 7 in counts
        else:
            unsat_le_six &= max(counts) <= 6
    checks = [
        ("three_clause_at_most_seven", at_most_seven, f"max={worst}"),
        ("three_clause_six_or_seven", unsat_le_six and sat_reaches_seven,
         f"unsat<=6:{unsat_le_six} sat_reaches_7:{sat_reaches_seven}"),
    ]
    h = two_clause_gadget(1, 2, 3) if h_gadget is None else [tuple(c) for c in h_gadget]
    seen = sorted({count_satisfied(h, a) for a in product((False, True), repeat=3)})
    checks.append(("two_clause_exactly_six", seen == [6], f"counts={seen}"))
    unit_ok = True
    for lit_val, r_val in product((False, True), repeat=2):
        got = count_satisfied(unit_expansion(1, 2), (lit_val, r_val))
        unit_ok &= got == (2 if lit_val else 1)
    checks.append(("unit_expansion", unit_ok, ""))
    return GadgetReport(tuple(checks))


__all__ = [
    "CnfInstance", "GadgetReport", "Max2SatInstance", "SatCertificate", "SatError",
    "cnf_brute", "count_satisfied", "max2sat_brute", "r3sat_to_max2sat",
    "r3sat_to_max2sat_certified", "three_clause_gadget", "two_clause_gadget",
    "unit_expansion", "verify_gadget_claims",
]
