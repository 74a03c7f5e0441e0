"""Structural summary of a graph: degree, bipartiteness, uniformity."""

from __future__ import annotations

from collections import deque

from ..graph import MixedGraph, underlying_neighbors


def is_bipartite(g: MixedGraph) -> bool:
    nb = underlying_neighbors(g)
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in nb[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def check_structure(g: MixedGraph) -> dict:
    """Degree is taken in the underlying simple undirected graph."""
    nb = underlying_neighbors(g)
    values = {v.value for v in g.vertices}
    costs = {e.cost for e in g.edges}
    return {
        "vertices": g.n,
        "edges": g.m,
        "max_degree": max((len(x) for x in nb), default=0),
        "bipartite": is_bipartite(g),
        "windy": g.is_windy(),
        "uniform_values": len(values) <= 1,
        "unit_values": values <= {1},
        "uniform_costs": len(costs) <= 1,
        "unit_costs": costs <= {1},
        "planar": "not checked",
    }
