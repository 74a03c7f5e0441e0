"""Risk of a post-cut graph: windy closed form, exact enumeration, Monte Carlo.

All public functions take the graph ``g`` plus an optional ``cut`` (a closed
set of edge ids) and evaluate ``G minus cut`` without materialising it; pass a
graph built by :func:`firebreak.graph.remove_cut` and no ``cut`` for the
literal ``G_H`` form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .graph import MixedGraph, _as_ids, ancestors, reachable_set, total_value
from .numeric import RATIONAL, Number, one, prod_complement, zero

WINDY = "windy_exact"
ENUMERATION = "enumeration"
MONTE_CARLO = "monte_carlo"

DEFAULT_ENUMERATION_BOUND = 20
NAIVE_BOUND = 16


class RiskError(ValueError):
    pass


@dataclass(frozen=True)
class RiskResult:
    value: Number
    method: str
    stderr: Optional[float] = None
    samples: Optional[int] = None


@dataclass(frozen=True)
class SpreadRealization:
    kept_edges: frozenset


def _active(g: MixedGraph, cut) -> list[int]:
    cut = _as_ids(cut)
    return [i for i in range(g.m) if i not in cut]


def _require_windy(g: MixedGraph, active: Iterable[int]) -> None:
    for i in active:
        if g.edges[i].spread != 1:
            raise RiskError(f"edge {i} has spread {g.edges[i].spread}; windy engine needs 1")


def ignition_probability(g: MixedGraph, ignited: Iterable[int]) -> Number:
    ignited = set(ignited)
    p = one(g.mode)
    for v, vert in enumerate(g.vertices):
        p *= vert.ignition if v in ignited else 1 - vert.ignition
    return p


def spread_probability(g: MixedGraph, s, cut=frozenset()) -> Number:
    kept = s.kept_edges if isinstance(s, SpreadRealization) else frozenset(s)
    active = _active(g, cut)
    if not kept <= set(active):
        raise RiskError("realization keeps an edge outside the post-cut edge set")
    p = one(g.mode)
    for i in active:
        pi = g.edges[i].spread
        p *= pi if i in kept else 1 - pi
    return p


def loss(g: MixedGraph, ignited: Iterable[int], kept=None) -> Number:
    """Value burnt from ``ignited`` when only ``kept`` edges transmit (default: all)."""
    cut = frozenset() if kept is None else frozenset(range(g.m)) - frozenset(kept)
    return total_value(g, reachable_set(g, ignited, cut))


def _tarjan(n: int, succ: list[list[int]]) -> tuple[list[int], int]:
    """Iterative Tarjan.  Components are numbered in emission order, so an arc
    between two components always goes from a higher to a lower number."""
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, k = work[-1]
            nbrs = succ[v]
            if k < len(nbrs):
                work[-1] = (v, k + 1)
                w = nbrs[k]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp, ncomp


class WindyEvaluator:
    """Windy closed form ``sum_x p_x * value(x)`` for many edge subsets of one graph.

    Strongly connected components are collapsed, then ancestor sets are
    accumulated over the condensation in topological order.  Complement
    products are memoised per ancestor set of ignitable vertices, which makes
    repeated evaluation on one graph (exhaustive search, enumeration) cheap.
    """

    def __init__(self, g: MixedGraph):
        self.g = g
        self.mode = g.mode
        self._ign = [v.ignition for v in g.vertices]
        # integral rationals as ints: most constructed instances have integer
        # values and int arithmetic is far cheaper than Fraction arithmetic
        self._val = [
            int(v.value) if isinstance(v.value, Fraction) and v.value.denominator == 1 else v.value
            for v in g.vertices
        ]
        self._arcs = []
        for e in g.edges:
            self._arcs.append((e.tail, e.head, not e.directed))
        self._ignitable = [i for i, p in enumerate(self._ign) if p]
        self._memo: dict[int, Number] = {}
        self._burn: dict[int, Number] = {}
        self.zero = zero(g.mode)
        self.one = one(g.mode)

    def complement(self, bits: int) -> Number:
        """Product of (1 - ignition) over the vertices in ``bits``."""
        got = self._memo.get(bits)
        if got is None:
            probs = []
            b = bits
            while b:
                low = b & -b
                probs.append(self._ign[low.bit_length() - 1])
                b ^= low
            got = prod_complement(probs, self.mode)
            self._memo[bits] = got
        return got

    def burn(self, bits: int) -> Number:
        """``1 - complement(bits)``, memoised separately."""
        got = self._burn.get(bits)
        if got is None:
            got = self.one - self.complement(bits)
            self._burn[bits] = got
        return got

    def value(self, active: Iterable[int]) -> Number:
        n = self.g.n
        succ: list[list[int]] = [[] for _ in range(n)]
        arcs = []
        for i in active:
            t, h, both = self._arcs[i]
            succ[t].append(h)
            arcs.append((t, h))
            if both:
                succ[h].append(t)
                arcs.append((h, t))
        comp, ncomp = _tarjan(n, succ)
        own = [0] * ncomp
        cval = [0] * ncomp
        for v in range(n):
            c = comp[v]
            if self._ign[v]:
                own[c] |= 1 << v
            cval[c] += self._val[v]
        preds: list[set[int]] = [set() for _ in range(ncomp)]
        for t, h in arcs:
            ct, ch = comp[t], comp[h]
            if ct != ch:
                preds[ch].add(ct)
        anc = [0] * ncomp
        total = 0
        for c in range(ncomp - 1, -1, -1):
            a = own[c]
            for p in preds[c]:
                a |= anc[p]
            anc[c] = a
            if cval[c] and a:
                total += cval[c] * self.burn(a)
        return Fraction(total) if self.mode == RATIONAL else float(total)

    def burn_probabilities(self, active: Iterable[int]) -> list[Number]:
        n = self.g.n
        succ: list[list[int]] = [[] for _ in range(n)]
        arcs = []
        for i in active:
            t, h, both = self._arcs[i]
            succ[t].append(h)
            arcs.append((t, h))
            if both:
                succ[h].append(t)
                arcs.append((h, t))
        comp, ncomp = _tarjan(n, succ)
        own = [0] * ncomp
        for v in self._ignitable:
            own[comp[v]] |= 1 << v
        preds: list[set[int]] = [set() for _ in range(ncomp)]
        for t, h in arcs:
            if comp[t] != comp[h]:
                preds[comp[h]].add(comp[t])
        anc = [0] * ncomp
        for c in range(ncomp - 1, -1, -1):
            a = own[c]
            for p in preds[c]:
                a |= anc[p]
            anc[c] = a
        return [self.one - self.complement(anc[comp[v]]) for v in range(n)]


def burn_probability(g: MixedGraph, x: int, cut=frozenset()) -> Number:
    _require_windy(g, _active(g, cut))
    return 1 - prod_complement((g.vertices[t].ignition for t in ancestors(g, x, cut)), g.mode)


def windy_risk(g: MixedGraph, cut=frozenset(), evaluator: Optional[WindyEvaluator] = None) -> RiskResult:
    active = _active(g, cut)
    _require_windy(g, active)
    ev = evaluator if evaluator is not None else WindyEvaluator(g)
    return RiskResult(ev.value(active), WINDY)


def exact_risk(
    g: MixedGraph,
    cut=frozenset(),
    bound: int = DEFAULT_ENUMERATION_BOUND,
    evaluator: Optional[WindyEvaluator] = None,
) -> RiskResult:
    """Sum over spread realizations of P(realization) * windy risk of it.

    Only edges with spread strictly between 0 and 1 are enumerated; the bound
    applies to their number.
    """
    active = _active(g, cut)
    sure = [i for i in active if g.edges[i].spread == 1]
    unsure = [i for i in active if 0 < g.edges[i].spread < 1]
    if len(unsure) > bound:
        raise RiskError(f"{len(unsure)} uncertain edges exceed the enumeration bound {bound}")
    ev = evaluator if evaluator is not None else WindyEvaluator(g)
    total = zero(g.mode)
    probs = [g.edges[i].spread for i in unsure]
    for mask in range(1 << len(unsure)):
        p = one(g.mode)
        kept = list(sure)
        for k, pi in enumerate(probs):
            if mask >> k & 1:
                p *= pi
                kept.append(unsure[k])
            else:
                p *= 1 - pi
        if p:
            total += p * ev.value(kept)
    return RiskResult(total, ENUMERATION)


def naive_risk(g: MixedGraph, cut=frozenset()) -> RiskResult:
    """Literal double sum over ignition sets and spread subgraphs (oracle only)."""
    active = _active(g, cut)
    if g.n + len(active) > NAIVE_BOUND:
        raise RiskError(f"|V|+|E| = {g.n + len(active)} exceeds the naive bound {NAIVE_BOUND}")
    total = zero(g.mode)
    vs = range(g.n)
    for ign_mask in range(1 << g.n):
        ignited = [v for v in vs if ign_mask >> v & 1]
        pi = ignition_probability(g, ignited)
        if not pi:
            continue
        for sp_mask in range(1 << len(active)):
            kept = frozenset(active[k] for k in range(len(active)) if sp_mask >> k & 1)
            ps = spread_probability(g, kept, cut)
            if ps:
                total += pi * ps * loss(g, ignited, kept)
    return RiskResult(total, ENUMERATION)


_BLOCK_ROWS = 2048


def _mc_losses(g: MixedGraph, active: list[int], seed: int, start: int, count: int) -> list[float]:
    """Losses of replications ``start .. start+count-1``.

    Replication ``r`` always consumes row ``r`` of one Philox stream keyed by
    ``seed`` (row width padded to whole counter blocks), so any split of the
    replication range reproduces the same draws.
    """
    n = g.n
    ncols = n + len(active)
    width = -(-max(ncols, 1) // 4) * 4
    bitgen = np.random.Philox(key=seed)
    bitgen.advance(start * width // 4)
    rng = np.random.Generator(bitgen)
    ign = np.array([float(v.ignition) for v in g.vertices])
    spr = np.array([float(g.edges[i].spread) for i in active])
    vals = [float(v.value) for v in g.vertices]
    ends = [(g.edges[i].tail, g.edges[i].head, not g.edges[i].directed) for i in active]
    out: list[float] = []
    done = 0
    while done < count:
        rows = min(_BLOCK_ROWS, count - done)
        u = rng.random((rows, width))
        lit = u[:, :n] < ign
        keep = u[:, n:ncols] < spr
        for r in range(rows):
            fired = np.flatnonzero(lit[r])
            if fired.size == 0:
                out.append(0.0)
                continue
            succ: list[list[int]] = [[] for _ in range(n)]
            for k in np.flatnonzero(keep[r]):
                t, h, both = ends[k]
                succ[t].append(h)
                if both:
                    succ[h].append(t)
            seen = set(int(v) for v in fired)
            stack = list(seen)
            while stack:
                v = stack.pop()
                for w in succ[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            out.append(math.fsum(vals[v] for v in seen))
        done += rows
    return out


def mc_risk(g: MixedGraph, samples: int, seed: int, cut=frozenset(), chunk: Optional[int] = None) -> RiskResult:
    """Monte Carlo estimate of the risk with standard error.

    ``chunk`` only changes how the replication range is split; the result is
    bit-identical for every choice.
    """
    if samples < 1:
        raise RiskError("samples must be >= 1")
    if not 0 <= seed < 2**64:
        raise RiskError("seed must be a 64-bit unsigned integer")
    active = _active(g, cut)
    chunk = chunk or samples
    losses: list[float] = []
    for start in range(0, samples, chunk):
        losses.extend(_mc_losses(g, active, seed, start, min(chunk, samples - start)))
    mean = math.fsum(losses) / samples
    if samples > 1:
        var = math.fsum((x - mean) ** 2 for x in losses) / (samples - 1)
        stderr = math.sqrt(var / samples)
    else:
        stderr = 0.0
    return RiskResult(mean, MONTE_CARLO, stderr, samples)


def risk(g: MixedGraph, cut=frozenset(), engine: str = "auto", **kw) -> RiskResult:
    if engine == "auto":
        engine = "windy" if all(g.edges[i].spread == 1 for i in _active(g, cut)) else "exact"
    if engine == "windy":
        return windy_risk(g, cut)
    if engine == "exact":
        return exact_risk(g, cut, **kw)
    if engine == "naive":
        return naive_risk(g, cut)
    if engine == "mc":
        return mc_risk(g, kw.get("samples", 10_000), kw.get("seed", 0), cut)
    raise RiskError(f"unknown engine {engine!r}")
