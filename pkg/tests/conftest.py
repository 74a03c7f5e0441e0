from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from firebreak import Instance, build_graph
from firebreak.io import parse_instance

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"

@pytest.fixture
def tree8():
    """Unit tree on 8 vertices, edges 3-0 3-1 3-2 4-3 6-5 7-4 7-6, burning {3, 7}, B = 3."""
    return parse_instance(DATA / "tree8.json")


def quarters():
    return st.integers(0, 4).map(lambda k: Fraction(k, 4))


@st.composite
def mixed_graphs(draw, max_vertices=6, max_edges=None, windy=None, spread=None):
    """Mixed graph with rational data; each vertex pair holds at most one
    undirected edge, one arc, or an opposite couple sharing a cost."""
    n = draw(st.integers(1, max_vertices))
    vertices = [(draw(st.integers(0, 3)), draw(quarters())) for _ in range(n)]
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True,
                           max_size=len(pairs) if max_edges is None else max_edges)) if pairs else []
    is_windy = draw(st.booleans()) if windy is None else windy
    sp = spread or (lambda: Fraction(1) if is_windy else draw(quarters()))
    edges = []
    for a, b in chosen:
        cost = draw(st.integers(1, 3))
        kind = draw(st.sampled_from(["u", "ab", "ba", "both"]))
        if kind == "u":
            edges.append((a, b, False, sp(), cost))
        if kind in ("ab", "both"):
            edges.append((a, b, True, sp(), cost))
        if kind in ("ba", "both"):
            edges.append((b, a, True, sp(), cost))
    return build_graph(vertices, edges)


@st.composite
def instances(draw, **kw):
    g = draw(mixed_graphs(**kw))
    return Instance(g, Fraction(draw(st.integers(0, 5))))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
