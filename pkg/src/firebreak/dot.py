"""Graphviz DOT rendering (presentation only, never read back)."""

from __future__ import annotations

from .graph import Instance, _as_ids
from .numeric import fmt


def to_dot(inst: Instance, cut=frozenset(), name: str = "firebreak") -> str:
    """Vertices that ignite for sure are filled red, others with positive ignition orange;
    cut edges are dashed red.  A directed graph is used throughout; undirected
    edges carry ``dir=none``."""
    g = inst.graph
    cut = _as_ids(cut)
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for v, vert in enumerate(g.vertices):
        attrs = [f'label="{v}\\nphi={fmt(vert.value)}\\npi={fmt(vert.ignition)}"']
        if vert.ignition == 1:
            attrs.append('style=filled fillcolor="#e34a33"')
        elif vert.ignition > 0:
            attrs.append('style=filled fillcolor="#fdbb84"')
        lines.append(f"  {v} [{' '.join(attrs)}];")
    for i, e in enumerate(g.edges):
        attrs = [f'label="{fmt(e.cost)}"']
        if not e.directed:
            attrs.append("dir=none")
        if e.spread != 1:
            attrs.append(f'taillabel="{fmt(e.spread)}"')
        if i in cut:
            attrs.append('style=dashed color="#d7301f" penwidth=2')
        lines.append(f"  {e.tail} -> {e.head} [{' '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
