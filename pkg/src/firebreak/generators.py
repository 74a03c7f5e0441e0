"""Deterministic random instances: trees, Partition stars, grids, mixed graphs."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .graph import GraphError, Instance, build_graph
from .numeric import RATIONAL
from .reductions.wfl import partition_to_star


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_tree(
    n: int,
    seed: int = 0,
    burn_rate: float = 0.2,
    budget: int = 3,
    max_value: int = 1,
    max_cost: int = 1,
) -> Instance:
    """Random recursive tree: vertex ``i`` picks its parent uniformly among ``0..i-1``.

    At least one vertex burns (ignition 1); others have ignition 0.  Values
    and costs are uniform integers in ``1..max_value`` / ``1..max_cost``.
    """
    if n < 1:
        raise GraphError("tree needs n >= 1")
    rng = _rng(seed)
    parents = [int(rng.integers(0, i)) for i in range(1, n)]
    burning = rng.random(n) < burn_rate
    if not burning.any():
        burning[int(rng.integers(0, n))] = True
    values = rng.integers(1, max_value + 1, size=n)
    costs = rng.integers(1, max_cost + 1, size=max(n - 1, 0))
    vertices = [(int(values[v]), int(burning[v])) for v in range(n)]
    edges = [(p, i + 1, False, 1, int(costs[i])) for i, p in enumerate(parents)]
    return Instance(build_graph(vertices, edges, RATIONAL), Fraction(budget))


def random_star(n: int, seed: int = 0, max_size: int = 6, sizes: Optional[Sequence[int]] = None) -> Instance:
    """Partition star from ``sizes`` or from ``n`` random sizes in ``1..max_size`` (total made even)."""
    if sizes is None:
        if n < 1:
            raise GraphError("star needs n >= 1")
        rng = _rng(seed)
        sizes = [int(x) for x in rng.integers(1, max_size + 1, size=n)]
        if sum(sizes) % 2:
            sizes[-1] += 1
    return partition_to_star(sizes)


def grid(n: int, seed: int = 0, burn_rate: float = 0.1, budget: int = 4, denominator: int = 4) -> Instance:
    """``n x n`` undirected windy grid, unit values and costs.

    Each vertex ignites with probability ``k / denominator`` for a random
    ``k`` with probability ``burn_rate`` of being nonzero.
    """
    if n < 1:
        raise GraphError("grid needs n >= 1")
    rng = _rng(seed)
    vertices = []
    for _ in range(n * n):
        k = int(rng.integers(1, denominator + 1)) if rng.random() < burn_rate else 0
        vertices.append((1, Fraction(k, denominator)))
    edges = []
    for r in range(n):
        for c in range(n):
            v = r * n + c
            if c + 1 < n:
                edges.append((v, v + 1, False, 1, 1))
            if r + 1 < n:
                edges.append((v, v + n, False, 1, 1))
    return Instance(build_graph(vertices, edges, RATIONAL), Fraction(budget))


def random_mixed(
    n: int,
    seed: int = 0,
    edge_prob: float = 0.3,
    directed_prob: float = 0.4,
    windy: bool = False,
    max_value: int = 3,
    max_cost: int = 3,
    denominator: int = 4,
    budget: Optional[int] = None,
) -> Instance:
    """Random mixed graph with rational probabilities ``k / denominator``.

    Each unordered pair gets an edge with probability ``edge_prob``; a chosen
    pair is directed (one arc, or both arcs sharing one cost) with probability
    ``directed_prob``.
    """
    if n < 1:
        raise GraphError("random graph needs n >= 1")
    rng = _rng(seed)

    def prob():
        return Fraction(int(rng.integers(0, denominator + 1)), denominator)

    vertices = [(int(rng.integers(0, max_value + 1)), prob()) for _ in range(n)]
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() >= edge_prob:
                continue
            cost = int(rng.integers(1, max_cost + 1))

            def spread():
                return Fraction(1) if windy else prob()

            if rng.random() < directed_prob:
                kind = int(rng.integers(0, 3))
                if kind in (0, 2):
                    edges.append((a, b, True, spread(), cost))
                if kind in (1, 2):
                    edges.append((b, a, True, spread(), cost))
            else:
                edges.append((a, b, False, spread(), cost))
    if budget is None:
        budget = int(rng.integers(0, 2 * max_cost + 1))
    return Instance(build_graph(vertices, edges, RATIONAL), Fraction(budget))


GENERATORS = {"tree": random_tree, "star": random_star, "grid": grid, "random": random_mixed}


def generate(kind: str, n: int, seed: int = 0, **kw) -> Instance:
    try:
        fn = GENERATORS[kind]
    except KeyError:
        raise GraphError(f"unknown generator {kind!r}") from None
    return fn(n, seed, **kw)
