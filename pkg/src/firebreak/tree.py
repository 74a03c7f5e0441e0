"""Optimal cut systems on trees with 0/1 ignition (double dynamic program).

Table A has one row per vertex in post order and one column per budget
``0..B``; every cell holds the best saved value (and a cut achieving it) for
the subtree when its root burns (``f_plus``) or stays safe (``f_minus``).
Row ``i`` is produced by :func:`table_st`, which attaches the children of
``v_i`` one at a time.  Edge costs are non-negative integers; a discordant
parent/child pair must pay for cutting the edge between them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Integral
from typing import Optional, Sequence

from .graph import CutSystem, Instance, close_cut, cut_cost, is_closed
from .numeric import RATIONAL, Number
from .risk import windy_risk


class TreeError(ValueError):
    pass


class _NegInf:
    """Marks an infeasible state; absorbs addition and sorts below every number."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInf()


# Persistent cut lists: None is empty, (edge, left, right) is a node whose
# edge may be None for a pure union.  Subtree cuts are disjoint, so sharing
# never duplicates an edge.
def _union(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return (None, a, b)


def _with(edge, a):
    return (edge, a, None)


def materialize(node) -> frozenset:
    out = set()
    stack = [node]
    seen = set()
    while stack:
        x = stack.pop()
        if x is None or id(x) in seen:
            continue
        seen.add(id(x))
        edge, left, right = x
        if edge is not None:
            out.add(edge)
        stack.append(left)
        stack.append(right)
    return frozenset(out)


@dataclass(frozen=True)
class DPCell:
    f_plus: object
    f_minus: object
    h_plus: object = None
    h_minus: object = None

    def cuts(self, burning_root: bool) -> frozenset:
        return materialize(self.h_plus if burning_root else self.h_minus)


@dataclass
class TreeInstance:
    """A rooted tree with a burning set, integer edge costs and integer budget.

    ``parent_edge[v]`` / ``parent_cost[v]`` describe the link to the parent
    (the root has ``-1`` / 0); ``link_edges`` maps a child vertex to the graph
    edge ids cut when that link is removed.
    """

    n: int
    root: int
    parent: list[int]
    children: list[list[int]]
    burning: frozenset
    values: list[Number]
    parent_cost: list[int]
    budget: int
    link_edges: dict[int, tuple[int, ...]] = field(default_factory=dict)
    source: Optional[Instance] = None
    _arrays: Optional[tuple] = field(default=None, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def total_value(self) -> Number:
        if "total" not in self._cache:
            self._cache["total"] = sum(self.values, zero_like(self.values))
        return self._cache["total"]

    def kernel_friendly(self) -> bool:
        """Values representable exactly by the float64 kernel."""
        if "friendly" not in self._cache:
            self._cache["friendly"] = _kernel_friendly(self.values)
        return self._cache["friendly"]

    def arrays(self) -> tuple:
        """Numpy view used by the compiled backend (built once, then cached)."""
        if self._arrays is None:
            from ._tree_kernel import arrays

            self._arrays = arrays(self)
        return self._arrays

    @property
    def order(self) -> list[int]:
        """Post order: children in stored order, root last."""
        out = []
        stack = [(self.root, 0)]
        while stack:
            v, k = stack.pop()
            if k < len(self.children[v]):
                stack.append((v, k + 1))
                stack.append((self.children[v][k], 0))
            else:
                out.append(v)
        return out

    @classmethod
    def from_instance(cls, inst: Instance, root: int = 0) -> "TreeInstance":
        g = inst.graph
        if g.n == 0:
            raise TreeError("empty graph")
        if not g.is_windy():
            raise TreeError("tree solver needs every spread probability equal to 1")
        burning = set()
        for v, vert in enumerate(g.vertices):
            if vert.ignition == 1:
                burning.add(v)
            elif vert.ignition != 0:
                raise TreeError(f"vertex {v}: ignition {vert.ignition} is not 0 or 1")
        budget = _as_int(inst.budget, "budget")
        adj: list[list[tuple[int, tuple[int, ...], int]]] = [[] for _ in range(g.n)]
        for link in g.links():
            e = g.edges[link[0]]
            if e.directed and len(link) == 1:
                raise TreeError(f"edge {link[0]}: a lone arc is not a tree edge")
            cost = _as_int(e.cost, f"edge {link[0]} cost")
            adj[e.tail].append((e.head, link, cost))
            adj[e.head].append((e.tail, link, cost))
        if len(g.links()) != g.n - 1:
            raise TreeError("graph is not a tree (|links| != |V| - 1)")
        if not 0 <= root < g.n:
            raise TreeError(f"root {root} out of range")
        parent = [-1] * g.n
        parent_cost = [0] * g.n
        children: list[list[int]] = [[] for _ in range(g.n)]
        link_edges: dict[int, tuple[int, ...]] = {}
        seen = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            for w, link, cost in sorted(adj[v]):
                if w in seen:
                    continue
                seen.add(w)
                parent[w] = v
                parent_cost[w] = cost
                link_edges[w] = link
                children[v].append(w)
                stack.append(w)
        if len(seen) != g.n:
            raise TreeError("graph is not connected")
        # integral rationals run as ints (much faster); _finish converts back
        values = [int(vt.value) if isinstance(vt.value, Fraction) and vt.value.denominator == 1
                  else vt.value for vt in g.vertices]
        return cls(g.n, root, parent, children, frozenset(burning),
                   values, parent_cost, budget, link_edges, inst)


def _as_int(x, what) -> int:
    if isinstance(x, bool):
        raise TreeError(f"{what} must be a non-negative integer")
    if isinstance(x, Integral):
        val = int(x)
    elif isinstance(x, Fraction) and x.denominator == 1:
        val = int(x)
    elif isinstance(x, float) and x.is_integer():
        val = int(x)
    else:
        raise TreeError(f"{what} must be a non-negative integer, got {x}")
    if val < 0:
        raise TreeError(f"{what} must be a non-negative integer, got {x}")
    return val


def _argmax(left: Sequence[object], right: Sequence[object], top: int):
    """Best split ``x in 0..top`` of ``left[x] + right[top - x]``; smallest x on ties."""
    best_x, best = 0, left[0] + right[top]
    for x in range(1, top + 1):
        cand = left[x] + right[top - x]
        if cand > best:
            best_x, best = x, cand
    return best_x, best


def table_st(
    inst: TreeInstance,
    table_a: dict,
    v: int,
    budget: Optional[int] = None,
    replace_on_tie: bool = True,
) -> list[DPCell]:
    """Last row of table ST for vertex ``v``; children of ``v`` must be in ``table_a``."""
    B = inst.budget if budget is None else budget
    v_burns = v in inst.burning
    zero_val = inst.values[v] - inst.values[v]
    if v_burns:
        row = [DPCell(zero_val, NEG_INF) for _ in range(B + 1)]
    else:
        row = [DPCell(zero_val, inst.values[v]) for _ in range(B + 1)]
    for child in inst.children[v]:
        c = inst.parent_cost[child]
        a = table_a[child]
        child_burns = child in inst.burning
        prev_p = [cell.f_plus for cell in row]
        prev_m = [cell.f_minus for cell in row]
        a_p = [cell.f_plus for cell in a]
        a_m = [cell.f_minus for cell in a]
        new = []
        for b in range(B + 1):
            # both burn: no cut
            z, fp = _argmax(prev_p, a_p, b)
            hp = _union(row[z].h_plus, a[b - z].h_plus)
            # v burns, child safe: cut the link
            if not child_burns and b >= c:
                z2, m2 = _argmax(prev_p, a_m, b - c)
                if m2 > fp or (replace_on_tie and m2 >= fp):
                    fp = m2
                    hp = _with(child, _union(row[z2].h_plus, a[b - c - z2].h_minus))
            fm, hm = NEG_INF, None
            if not v_burns:
                # v safe, child burns: cut the link.  The row's H^- is carried
                # over, never its H^+ (v is safe on this side).
                if b >= c:
                    z, fm = _argmax(prev_m, a_p, b - c)
                    hm = _with(child, _union(row[z].h_minus, a[b - c - z].h_plus))
                # both safe: no cut.  Reads the previous row at the split z2.
                if not child_burns:
                    z2, m2 = _argmax(prev_m, a_m, b)
                    if m2 > fm or (replace_on_tie and m2 >= fm):
                        fm = m2
                        hm = _union(row[z2].h_minus, a[b - z2].h_minus)
            new.append(DPCell(fp, fm, hp, hm))
        row = new
    return row


def build_table_a(inst: TreeInstance, replace_on_tie: bool = True) -> dict[int, list[DPCell]]:
    table: dict[int, list[DPCell]] = {}
    for v in inst.order:
        table[v] = table_st(inst, table, v, replace_on_tie=replace_on_tie)
    return table


@dataclass(frozen=True)
class TreeSolution:
    cut: CutSystem
    saved: Number
    cost: Number
    risk: Number
    root_burns: bool


def _finish(inst: TreeInstance, child_links: frozenset, saved, root_burns: bool) -> TreeSolution:
    edges = [e for child in child_links for e in inst.link_edges[child]]
    total = inst.total_value()
    if inst.source is not None and inst.source.mode == RATIONAL:
        saved, total = Fraction(saved), Fraction(total)
    if inst.source is not None:
        g = inst.source.graph
        cut = close_cut(g, edges)
        cost = cut_cost(g, cut)
    else:
        cut = CutSystem(frozenset(edges))
        cost = sum(inst.parent_cost[c] for c in child_links)
    return TreeSolution(cut, saved, cost, total - saved, root_burns)


def zero_like(values):
    if values and isinstance(values[0], float):
        return 0.0
    if values and isinstance(values[0], Fraction):
        return Fraction(0)
    return 0


def _solve_python(inst: TreeInstance, replace_on_tie: bool) -> TreeSolution:
    table = build_table_a(inst, replace_on_tie)
    final = table[inst.root][inst.budget]
    if final.f_minus > final.f_plus:
        return _finish(inst, final.cuts(False), final.f_minus, False)
    return _finish(inst, final.cuts(True), final.f_plus, True)


_COMPILED_MIN_WORK = 200_000


def _kernel_friendly(values) -> bool:
    """Integers whose total stays below 2**53 (every partial sum is then exact), or floats."""
    total = 0
    for x in values:
        if isinstance(x, float):
            continue
        if isinstance(x, Fraction) and x.denominator != 1:
            return False
        total += abs(int(x))
    return total < 2**53


def solve_tree(inst, backend: str = "auto", root: int = 0, replace_on_tie: bool = True) -> TreeSolution:
    """Maximise the saved value over cut systems of cost at most B.

    ``inst`` is a :class:`TreeInstance` or an :class:`Instance` on a tree.
    ``backend`` is ``"python"`` (exact numbers, persistent cut lists),
    ``"compiled"`` (numba kernel with back-pointers, int/float values) or
    ``"auto"``.  Both backends use identical tie-breaking: budget splits go to
    the smallest share for the earlier children, and when the second candidate
    of a cell (cut for ``f_plus``, no-cut for ``f_minus``) only ties the
    first, it wins iff ``replace_on_tie``.
    """
    if isinstance(inst, Instance):
        inst = TreeInstance.from_instance(inst, root)
    if backend == "auto":
        work = inst.n * (inst.budget + 1) ** 2
        backend = "compiled" if work >= _COMPILED_MIN_WORK and inst.kernel_friendly() else "python"
    if backend == "python":
        return _solve_python(inst, replace_on_tie)
    if backend == "compiled":
        if not inst.kernel_friendly():
            raise TreeError("compiled backend needs integer or float vertex values")
        from ._tree_kernel import solve_compiled

        child_links, saved, root_burns = solve_compiled(inst, replace_on_tie)
        return _finish(inst, child_links, saved, root_burns)
    raise TreeError(f"unknown backend {backend!r}")


def verify_solution(inst, sol) -> bool:
    """Closed, within budget, and the claimed saved value re-evaluates exactly."""
    if isinstance(inst, TreeInstance):
        if inst.source is None:
            return False
        src = inst.source
    else:
        src = inst
    g = src.graph
    members = sol.cut.members if isinstance(sol.cut, CutSystem) else frozenset(sol.cut)
    if not is_closed(g, members):
        return False
    if cut_cost(g, members) > src.budget:
        return False
    rho = windy_risk(g, members).value
    total = g.total_value()
    if g.mode == RATIONAL:
        return rho + sol.saved == total
    return abs(rho + sol.saved - total) <= 1e-9 * max(1.0, abs(total))
