"""Mixed graphs, cut systems and the value/cost aggregates.

Vertices are dense integer ids ``0..n-1``.  An edge is either undirected or
directed; two opposite directed edges ``xy``/``yx`` are linked through their
``pair`` field and must share one cost.  Graphs are immutable: removing a cut
system builds a new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .numeric import FLOAT, MODES, RATIONAL, Number, coerce, infer_mode, zero  # noqa: F401


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    value: Number
    ignition: Number


@dataclass(frozen=True)
class Edge:
    tail: int
    head: int
    directed: bool
    spread: Number
    cost: Number
    pair: Optional[int] = None

    def ends(self) -> tuple[int, int]:
        return self.tail, self.head


@dataclass(frozen=True)
class CutSystem:
    """A set of edge ids closed under the opposite-edge rule."""

    members: frozenset = frozenset()

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, e) -> bool:
        return e in self.members


class MixedGraph:
    __slots__ = ("vertices", "edges", "mode", "out_edges", "in_edges", "_links")

    def __init__(self, vertices: Sequence[Vertex], edges: Sequence[Edge], mode: str):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.mode = mode
        out = [[] for _ in self.vertices]
        inc = [[] for _ in self.vertices]
        for i, e in enumerate(self.edges):
            out[e.tail].append(i)
            inc[e.head].append(i)
            if not e.directed:
                out[e.head].append(i)
                inc[e.tail].append(i)
        self.out_edges = tuple(tuple(x) for x in out)
        self.in_edges = tuple(tuple(x) for x in inc)
        self._links = None

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def other(self, e: int, v: int) -> int:
        edge = self.edges[e]
        return edge.head if edge.tail == v else edge.tail

    def links(self) -> tuple[tuple[int, ...], ...]:
        """Atomic cuttable units: undirected edges, paired couples, lone arcs."""
        if self._links is None:
            out = []
            for i, e in enumerate(self.edges):
                if e.pair is None:
                    out.append((i,))
                elif i < e.pair:
                    out.append((i, e.pair))
            self._links = tuple(out)
        return self._links

    def link_cost(self, link: Sequence[int]) -> Number:
        return self.edges[link[0]].cost

    def is_windy(self) -> bool:
        return all(e.spread == 1 for e in self.edges)

    def total_value(self) -> Number:
        return total_value(self, range(self.n))

    def __repr__(self) -> str:
        return f"MixedGraph(n={self.n}, m={self.m}, mode={self.mode!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return (self.mode, self.vertices, self.edges) == (other.mode, other.vertices, other.edges)

    def __hash__(self):
        return hash((self.mode, self.vertices, self.edges))


@dataclass(frozen=True)
class Instance:
    graph: MixedGraph
    budget: Number
    risk_threshold: Optional[Number] = None

    def __post_init__(self):
        if self.budget < 0:
            raise GraphError("budget must be non-negative")
        if self.risk_threshold is not None and self.risk_threshold < 0:
            raise GraphError("risk threshold must be non-negative")

    @property
    def mode(self) -> str:
        return self.graph.mode


def _field(spec, name, index, default=None):
    if isinstance(spec, Mapping):
        return spec.get(name, default)
    if isinstance(spec, (Vertex, Edge)):
        return getattr(spec, name)
    if index < len(spec):
        return spec[index]
    return default


def build_graph(vertex_specs: Iterable, edge_specs: Iterable, mode: Optional[str] = None) -> MixedGraph:
    """Validate specs and build a graph with opposite arcs auto-paired.

    A vertex spec is ``(value, ignition)``, a mapping with those keys, or a
    :class:`Vertex`.  An edge spec is ``(tail, head, directed, spread, cost)``,
    a mapping with those keys, or an :class:`Edge` (its ``pair`` is ignored and
    recomputed).  ``mode`` defaults to rational unless a float is present.
    """
    vraw = [(_field(s, "value", 0), _field(s, "ignition", 1)) for s in vertex_specs]
    eraw = [
        (_field(s, "tail", 0), _field(s, "head", 1), _field(s, "directed", 2, False),
         _field(s, "spread", 3, 1), _field(s, "cost", 4, 1))
        for s in edge_specs
    ]
    if mode is None:
        mode = infer_mode([x for pair in vraw for x in pair] + [x for e in eraw for x in e[3:]])
    if mode not in MODES:
        raise GraphError(f"unknown mode {mode!r}")

    vertices = []
    for i, (value, ign) in enumerate(vraw):
        value, ign = coerce(value, mode), coerce(ign, mode)
        if value < 0:
            raise GraphError(f"vertex {i}: negative value {value}")
        if not 0 <= ign <= 1:
            raise GraphError(f"vertex {i}: ignition probability {ign} outside [0,1]")
        vertices.append(Vertex(value, ign))

    n = len(vertices)
    arcs: dict[tuple[int, int], int] = {}
    undirected: dict[frozenset, int] = {}
    edges: list[Edge] = []
    for i, (t, h, directed, spread, cost) in enumerate(eraw):
        if not (isinstance(t, int) and isinstance(h, int)) or not (0 <= t < n and 0 <= h < n):
            raise GraphError(f"edge {i}: endpoint out of range ({t}, {h})")
        if t == h:
            raise GraphError(f"edge {i}: self-loop on vertex {t}")
        spread, cost = coerce(spread, mode), coerce(cost, mode)
        if not 0 <= spread <= 1:
            raise GraphError(f"edge {i}: spread probability {spread} outside [0,1]")
        if cost < 0:
            raise GraphError(f"edge {i}: negative cost {cost}")
        key = frozenset((t, h))
        if key in undirected or (not directed and ((t, h) in arcs or (h, t) in arcs)):
            raise GraphError(f"edge {i}: parallel edge between {t} and {h}")
        if directed:
            if (t, h) in arcs:
                raise GraphError(f"edge {i}: duplicate arc {t}->{h}")
            arcs[(t, h)] = i
        else:
            undirected[key] = i
        edges.append(Edge(t, h, bool(directed), spread, cost))

    for (t, h), i in arcs.items():
        j = arcs.get((h, t))
        if j is None:
            continue
        if edges[i].cost != edges[j].cost:
            raise GraphError(
                f"edges {min(i, j)}/{max(i, j)}: opposite arcs {t}<->{h} have unequal costs"
            )
        edges[i] = Edge(t, h, True, edges[i].spread, edges[i].cost, j)
    return MixedGraph(vertices, edges, mode)


def _as_ids(edge_ids) -> frozenset:
    if isinstance(edge_ids, CutSystem):
        return edge_ids.members
    return frozenset(edge_ids)


def close_cut(g: MixedGraph, edge_ids: Iterable[int]) -> CutSystem:
    ids = set(_as_ids(edge_ids))
    for e in list(ids):
        if not 0 <= e < g.m:
            raise GraphError(f"edge id {e} out of range")
        p = g.edges[e].pair
        if p is not None:
            ids.add(p)
    return CutSystem(frozenset(ids))


def is_closed(g: MixedGraph, edge_ids) -> bool:
    ids = _as_ids(edge_ids)
    return all(0 <= e < g.m for e in ids) and all(
        g.edges[e].pair is None or g.edges[e].pair in ids for e in ids
    )


def remove_cut(g: MixedGraph, h) -> MixedGraph:
    ids = _as_ids(h)
    if not is_closed(g, ids):
        raise GraphError("cut system is not closed under opposite arcs")
    keep = [i for i in range(g.m) if i not in ids]
    remap = {old: new for new, old in enumerate(keep)}
    edges = []
    for old in keep:
        e = g.edges[old]
        pair = remap.get(e.pair) if e.pair is not None else None
        edges.append(Edge(e.tail, e.head, e.directed, e.spread, e.cost, pair))
    return MixedGraph(g.vertices, edges, g.mode)


def cut_cost(g: MixedGraph, h) -> Number:
    """Cost of a cut: each undirected edge or opposite couple counts once."""
    total = zero(g.mode)
    for e in _as_ids(h):
        p = g.edges[e].pair
        if p is None or e < p or p not in _as_ids(h):
            total += g.edges[e].cost
    return total


def total_value(g: MixedGraph, vs: Iterable[int]) -> Number:
    total = zero(g.mode)
    for v in vs:
        total += g.vertices[v].value
    return total


def reachable_set(g: MixedGraph, sources: Iterable[int], cut=frozenset()) -> set[int]:
    """Vertices reachable from ``sources`` in ``g`` minus ``cut``; sources included."""
    cut = _as_ids(cut)
    seen = set(sources)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for e in g.out_edges[v]:
            if e in cut:
                continue
            w = g.other(e, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def ancestors(g: MixedGraph, x: int, cut=frozenset()) -> set[int]:
    """All ``t`` with a path ``t -> x`` (x itself included)."""
    cut = _as_ids(cut)
    seen = {x}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for e in g.in_edges[v]:
            if e in cut:
                continue
            w = g.other(e, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def normalize_windy(g: MixedGraph) -> MixedGraph:
    """Collapse every opposite couple into one undirected edge (windy graphs only)."""
    if not g.is_windy():
        raise GraphError("normalize_windy needs every spread probability equal to 1")
    edges = []
    for i, e in enumerate(g.edges):
        if e.pair is None:
            edges.append(Edge(e.tail, e.head, e.directed, e.spread, e.cost))
        elif i < e.pair:
            edges.append(Edge(e.tail, e.head, False, e.spread, e.cost))
    return MixedGraph(g.vertices, edges, g.mode)


def underlying_neighbors(g: MixedGraph) -> list[set[int]]:
    nb = [set() for _ in range(g.n)]
    for e in g.edges:
        nb[e.tail].add(e.head)
        nb[e.head].add(e.tail)
    return nb


__all__ = [
    "CutSystem", "Edge", "GraphError", "Instance", "MixedGraph", "Vertex",
    "ancestors", "build_graph", "close_cut", "cut_cost", "is_closed",
    "normalize_windy", "reachable_set", "remove_cut", "total_value",
    "underlying_neighbors", "RATIONAL", "FLOAT",
]
