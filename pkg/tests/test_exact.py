from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import instances, mixed_graphs
from firebreak import Instance, build_graph, cut_cost, decide, exact_risk, solve_exhaustive, solve_profile
from firebreak.exact import ExactError
from firebreak.reductions import partition_to_star


def brute(inst):
    """Minimum risk over every closed cut within budget, from raw link subsets."""
    g = inst.graph
    links = g.links()
    best = None
    for k in range(len(links) + 1):
        for chosen in combinations(links, k):
            h = {e for l in chosen for e in l}
            if cut_cost(g, h) <= inst.budget:
                r = exact_risk(g, h).value
                best = r if best is None else min(best, r)
    return best


class TestExamples:
    def test_eight_vertex_tree(self, tree8):
        sol = solve_exhaustive(tree8)
        assert sol.saved == 4 and sol.risk == 4 and sol.cost == 3

    def test_cut_everything(self):
        g = build_graph([(1, F(1, 2)), (2, F(1, 3)), (1, 0)], [(0, 1, False, 1, 1), (1, 2, True, 1, 1)])
        sol = solve_exhaustive(Instance(g, F(10)))
        assert sol.risk == F(1, 2) + 2 * F(1, 3)

    def test_zero_budget(self):
        g = build_graph([(1, F(1, 2)), (2, F(1, 3)), (1, 0)], [(0, 1, False, 1, 1), (1, 2, True, 1, 1)])
        sol = solve_exhaustive(Instance(g, F(0)))
        assert sol.risk == exact_risk(g).value and len(sol.cut) == 0

    def test_partition_decisions(self):
        assert decide(partition_to_star([1, 1, 2]))
        star = partition_to_star([1, 1, 2])
        assert not decide(Instance(star.graph, F(1), F(1)))
        assert decide(partition_to_star([2, 2]))
        assert not decide(partition_to_star([1, 3]))

    def test_threshold_total_value_always_true(self):
        g = build_graph([(3, 1), (2, 1)], [(0, 1, False, 1, 5)])
        assert decide(Instance(g, F(0), F(5)))

    def test_decide_needs_threshold(self):
        with pytest.raises(ExactError):
            decide(Instance(build_graph([(1, 0)], []), F(0)))

    def test_link_bound(self):
        g = build_graph([(1, 0)] * 24, [(0, i, False, 1, 1) for i in range(1, 24)])
        with pytest.raises(ExactError):
            solve_exhaustive(Instance(g, F(23)))
        # unaffordable links are pruned before the bound applies
        assert solve_exhaustive(Instance(g, F(0))).cost == 0

    def test_witness(self):
        w = []
        assert decide(partition_to_star([2, 2]), witness=w)
        assert w[0].cost <= 2 and w[0].risk <= 2

    def test_deterministic_tie_break(self):
        g = build_graph([(0, 1), (1, 0), (1, 0)], [(0, 1, False, 1, 1), (0, 2, False, 1, 1)])
        sol = solve_exhaustive(Instance(g, F(1)))
        assert sol.cut.members == {0}


@given(instances(max_vertices=5, max_edges=5))
def test_matches_brute(inst):
    sol = solve_exhaustive(inst)
    assert sol.risk == brute(inst)
    assert sol.cost == cut_cost(inst.graph, sol.cut) <= inst.budget
    assert sol.risk + sol.saved == inst.graph.total_value()


@given(mixed_graphs(max_vertices=5, max_edges=5))
def test_profile_matches_single_solves(g):
    budgets = range(6)
    prof = solve_profile(Instance(g, F(0)), budgets)
    for b in budgets:
        sol = solve_exhaustive(Instance(g, F(b)))
        assert (prof[b].risk, prof[b].cut) == (sol.risk, sol.cut)


@given(mixed_graphs(max_vertices=5, max_edges=5, windy=True), st.integers(0, 4),
       st.integers(0, 4), st.integers(0, 8), st.integers(0, 8))
def test_feasibility_anti_monotone(g, b, db, r, dr):
    if decide(Instance(g, F(b), F(r, 2))):
        assert decide(Instance(g, F(b + db), F(r + dr, 2)))


@given(mixed_graphs(max_vertices=6, max_edges=6, windy=True), st.integers(0, 5))
def test_more_budget_never_hurts(g, b):
    if not g.m:
        return
    step = min(e.cost for e in g.edges)
    assert solve_exhaustive(Instance(g, F(b) + step)).risk <= solve_exhaustive(Instance(g, F(b))).risk
