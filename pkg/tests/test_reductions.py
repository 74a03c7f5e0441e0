import math
from fractions import Fraction as F
from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import quarters
from firebreak import (
    GraphError,
    Instance,
    build_graph,
    cut_cost,
    decide,
    normalize_windy,
    windy_risk,
)
from firebreak.io import dumps_instance
from firebreak.reductions import (
    CnfInstance,
    Max2SatInstance,
    SatError,
    check_structure,
    count_satisfied,
    flatten_costs,
    flatten_values,
    grid_ignition,
    max2sat_brute,
    max2sat_to_wfl,
    partition_to_star,
    partition_to_star_certified,
    perimeter,
    r3sat_to_max2sat,
    r3sat_to_max2sat_certified,
    three_clause_gadget,
    two_clause_gadget,
    verify_gadget_claims,
    wfl_parameters,
)
from firebreak.reductions.chains import partition_chain


def closed_cuts(g, budget):
    links = g.links()
    for k in range(len(links) + 1):
        for chosen in combinations(links, k):
            h = frozenset(e for l in chosen for e in l)
            if cut_cost(g, h) <= budget:
                yield h


class TestPartition:
    def test_star_shape(self):
        inst, cert = partition_to_star_certified([1, 1, 2])
        g = inst.graph
        assert g.n == 4 and inst.budget == 2 and inst.risk_threshold == 2
        assert (g.vertices[0].value, g.vertices[0].ignition) == (0, 1)
        assert [(v.value, v.ignition) for v in g.vertices[1:]] == [(1, 0), (1, 0), (2, 0)]
        assert [e.cost for e in g.edges] == [1, 1, 2]
        assert cert.params["S"] == 2

    def test_rejects_odd_total(self):
        with pytest.raises(GraphError):
            partition_to_star([1, 2])

    def test_small_chain(self):
        res = partition_chain(max_items=3, max_size=4)
        assert res.passed and res.total > 0


class TestSat:
    def test_clause_validation(self):
        with pytest.raises(SatError):
            CnfInstance(2, [(1, -1)])
        with pytest.raises(SatError):
            CnfInstance(2, [(1, 1)])
        with pytest.raises(SatError):
            CnfInstance(4, [(1, 2, 3, 4)])
        with pytest.raises(SatError):
            Max2SatInstance(2, [(1,)], 0)
        with pytest.raises(SatError):
            Max2SatInstance(2, [(1, 2)], 2)

    def test_one_three_clause(self):
        phi, K = r3sat_to_max2sat(CnfInstance(3, [(1, -2, 3)]))
        assert len(phi.clauses) == 14 and K == 11
        assert phi.num_vars == 3 + 1 + 4

    def test_one_two_clause(self):
        phi, K = r3sat_to_max2sat(CnfInstance(2, [(1, 2)]))
        assert len(phi.clauses) == 9 and K == 7
        assert phi.clauses[0] == (1, 2)

    def test_rejects_unit_clause(self):
        with pytest.raises(SatError):
            r3sat_to_max2sat(CnfInstance(1, [(1,)]))

    def test_brute_examples(self):
        assert max2sat_brute(Max2SatInstance(2, [(1, 2)], 1)) == 1
        assert max2sat_brute(Max2SatInstance(3, two_clause_gadget(1, 2, 3), 6)) == 6
        assert max2sat_brute(Max2SatInstance(2, [(1, 2), (-1, 2), (1, -2), (-1, -2)], 3)) == 3

    def test_gadget_every_assignment(self):
        h = two_clause_gadget(1, 2, 3)
        assert {count_satisfied(h, a) for a in product((False, True), repeat=3)} == {6}

    def test_gadget_claims(self):
        report = verify_gadget_claims()
        assert report.passed and len(report.checks) == 4
        assert report == verify_gadget_claims()

    def test_mutated_gadget_fails(self):
        h = list(two_clause_gadget(1, 2, 3))
        h[0] = (-h[0][0], h[0][1])
        report = verify_gadget_claims(h)
        assert not report.passed
        assert dict((n, ok) for n, ok, _ in report.checks)["two_clause_exactly_six"] is False

    def test_three_clause_gadget_layout(self):
        g = three_clause_gadget(1, 2, 3, 4)
        assert len(g) == 10 and sum(len(c) == 1 for c in g) == 4

    def test_certificate_json(self):
        cert = r3sat_to_max2sat_certified(CnfInstance(3, [(1, 2, 3), (-1, 2)]))
        doc = cert.to_json()
        assert doc["params"]["K"] == 7 * 2 + 4
        assert len(doc["clause_origin"]) == len(cert.target.clauses)

    @given(st.integers(2, 5), st.data())
    def test_gray_code_matches_product(self, n, data):
        lits = [s * v for v in range(1, n + 1) for s in (1, -1)]
        pairs = [(a, b) for a, b in combinations(lits, 2) if abs(a) != abs(b)]
        cs = data.draw(st.lists(st.sampled_from(pairs), max_size=8))
        phi = Max2SatInstance(n, cs, 0)
        expected = max((count_satisfied(cs, a) for a in product((False, True), repeat=n)), default=0)
        assert max2sat_brute(phi) == expected


class TestWfl:
    def test_parameters(self):
        p = wfl_parameters(2, 1, 1)
        assert (p["q"], p["omega"], p["nu"], p["s"], p["B"]) == (0, 8, 176, 2, 5)
        assert p["R"] == 704 + 12 + F(7, 4) - F(1, 8) == F(5741, 8)

    @given(st.integers(1, 6), st.integers(1, 6), st.data())
    def test_parameter_closed_forms(self, n, m, data):
        K = data.draw(st.integers(1, m))
        p = wfl_parameters(n, m, K)
        assert p["omega"] == 8 * m / (1 - p["q"])
        assert p["nu"] == 8 * m * (F(5, 2) * p["omega"] + 2)

    def test_sizes_and_structure(self):
        phi = Max2SatInstance(3, [(1, 2), (-1, 3), (2, -3)], 2)
        inst, cert = max2sat_to_wfl(phi)
        n, m = 3, 3
        assert inst.graph.n == 3 * n + 3 * m + 2 * m
        assert inst.graph.m == 2 * n + 2 * m + 4 * m
        rep = check_structure(inst.graph)
        assert rep["max_degree"] <= 5 and rep["bipartite"] and rep["windy"]
        assert rep["planar"] == "not checked"
        assert len(cert.vertex_origin) == inst.graph.n
        binding = [e for e, o in zip(inst.graph.edges, cert.edge_origin) if o.startswith("bind")]
        assert all(e.directed and e.cost == inst.budget + 1 for e in binding)

    def test_literal_frequency_limit(self):
        cs = [(1, 2), (1, 3), (1, -2), (1, -3), (1, 4)]
        with pytest.raises(SatError):
            max2sat_to_wfl(Max2SatInstance(4, cs, 1))

    def test_k_at_least_one(self):
        with pytest.raises(SatError):
            max2sat_to_wfl(Max2SatInstance(2, [(1, 2)], 0))

    @pytest.mark.parametrize("cs, n", [([(1, 2)], 2), ([(1, 2), (-1, -2)], 2), ([(1, 2), (-1, 2), (1, -2), (-1, -2)], 2)])
    def test_decision_matches_brute(self, cs, n):
        for K in range(1, len(cs) + 1):
            phi = Max2SatInstance(n, cs, K)
            assert decide(max2sat_to_wfl(phi)[0]) == (max2sat_brute(phi) >= K)

    def test_deterministic(self):
        phi = Max2SatInstance(2, [(1, 2), (-1, 2)], 1)
        assert dumps_instance(max2sat_to_wfl(phi)[0]) == dumps_instance(max2sat_to_wfl(phi)[0])


@st.composite
def windy_valued(draw, max_vertices=5):
    n = draw(st.integers(1, max_vertices))
    vs = [(draw(st.integers(1, 3)), draw(quarters())) for _ in range(n)]
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=5)) if pairs else []
    es = []
    for a, b in chosen:
        c = draw(st.integers(1, 2))
        kind = draw(st.sampled_from(["u", "ab", "ba", "both"]))
        if kind == "u":
            es.append((a, b, False, 1, c))
        if kind in ("ab", "both"):
            es.append((a, b, True, 1, c))
        if kind in ("ba", "both"):
            es.append((b, a, True, 1, c))
    return Instance(build_graph(vs, es), F(draw(st.integers(0, 3))), F(draw(st.integers(0, 4))))


class TestFlattenValues:
    def test_chain_toward_neighbor(self):
        g = build_graph([(3, F(1, 2)), (1, 0)], [(0, 1, False, 1, 1)])
        out, cert = flatten_values(Instance(g, F(1)))
        assert out.graph.n == 4
        assert all(v.value == 1 for v in out.graph.vertices)
        heavy = [e for e in out.graph.edges if e.cost == 2]
        assert len(heavy) == 2

    def test_unit_values_unchanged(self):
        g = build_graph([(1, F(1, 2)), (1, 0)], [(0, 1, False, 1, 1)])
        out, _ = flatten_values(Instance(g, F(1)))
        assert out.graph == g

    def test_rejects(self):
        with pytest.raises(GraphError):
            flatten_values(Instance(build_graph([(0, 0)], []), F(0)))
        with pytest.raises(GraphError):
            flatten_values(Instance(build_graph([(1, 0), (1, 0)], [(0, 1, False, F(1, 2), 1)]), F(0)))

    @given(windy_valued(max_vertices=6))
    def test_risk_preserved(self, inst):
        out, cert = flatten_values(inst)
        emap = cert.extra["edge_map"]
        assert all(v.value == 1 for v in out.graph.vertices)
        assert (out.budget, out.risk_threshold) == (inst.budget, inst.risk_threshold)
        for h in closed_cuts(inst.graph, inst.budget):
            h2 = {emap[e] for e in h}
            assert cut_cost(out.graph, h2) == cut_cost(inst.graph, h)
            assert windy_risk(out.graph, h2).value == windy_risk(inst.graph, h).value


@st.composite
def cost_flattenable(draw):
    n = draw(st.integers(1, 3))
    vs = [(1, draw(quarters())) for _ in range(n)]
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    es = []
    for a, b in chosen:
        c = draw(st.integers(1, 2))
        kind = draw(st.sampled_from(["u", "ab", "both"]))
        if kind == "u":
            es.append((a, b, False, 1, c))
        else:
            es.append((a, b, True, 1, c))
            if kind == "both":
                es.append((b, a, True, 1, c))
    return Instance(build_graph(vs, es), F(draw(st.integers(0, 2))), F(1))


class TestFlattenCosts:
    def test_perimeter(self):
        assert perimeter(1) == [(0, 0)]
        p = perimeter(3)
        assert p[0] == (0, 0) and len(p) == 8 and len(set(p)) == 8

    def test_grid_ignition_conventions(self):
        assert grid_ignition(1, 5) == 1.0 and grid_ignition(0, 5) == 0.0
        assert grid_ignition(F(1, 2), 1) == pytest.approx(0.5)

    def test_extreme_ignitions(self):
        g = build_graph([(1, 1), (1, 0)], [(0, 1, False, 1, 1)])
        out, cert = flatten_costs(Instance(g, F(1), F(1)), 1)
        M = cert.params["M"]
        ign = [v.ignition for v in out.graph.vertices]
        assert ign[: M * M] == [1.0] * (M * M) and ign[M * M:] == [0.0] * (M * M)

    def test_hypothesis_checks(self):
        g = build_graph([(1, F(1, 3))], [])
        with pytest.raises(GraphError):
            flatten_costs(Instance(g, F(0), F(1)), 2)
        g = build_graph([(2, 0)], [])
        with pytest.raises(GraphError):
            flatten_costs(Instance(g, F(0), F(1)), 2)
        g = build_graph([(1, 0), (1, 0)], [(0, 1, False, 1, 3)])
        with pytest.raises(GraphError):
            flatten_costs(Instance(g, F(0), F(1)), 2)
        with pytest.raises(GraphError):
            flatten_costs(Instance(g, F(0)), 4)

    def test_parameters(self):
        g = build_graph([(1, F(1, 2)), (1, 0), (1, F(1, 4))], [(0, 1, False, 1, 2), (1, 2, False, 1, 1)])
        _, cert = flatten_costs(Instance(g, F(2), F(2)), 4)
        p = cert.params
        assert p["C"] == 1 and p["M"] == max(1 + 1 * math.isqrt(17) + 1, 2 * 4) and p["R_prime"] == 2 * p["M"] ** 2

    @given(cost_flattenable())
    def test_forward_fidelity(self, inst):
        f = 4
        out, cert = flatten_costs(inst, f)
        M = cert.params["M"]
        g = normalize_windy(inst.graph)
        joining = cert.extra["joining"]
        assert out.budget == inst.budget and out.risk_threshold == M * M * inst.risk_threshold
        for h in closed_cuts(g, inst.budget):
            h2 = {e for i in h for e in joining[i]}
            assert cut_cost(out.graph, h2) == cut_cost(g, h)
            expected = M * M * float(windy_risk(g, h).value)
            assert windy_risk(out.graph, h2).value == pytest.approx(expected, rel=1e-9, abs=1e-12)
        for x, v in enumerate(g.vertices):
            if 0 < v.ignition < 1:
                grid = out.graph.vertices[x * M * M:(x + 1) * M * M]
                total = math.fsum(-math.log1p(-u.ignition) for u in grid)
                assert total == pytest.approx(-math.log1p(-float(v.ignition)), rel=1e-12)

    def test_deterministic(self):
        g = build_graph([(1, F(1, 2)), (1, 0)], [(0, 1, False, 1, 2)])
        inst = Instance(g, F(2), F(1))
        assert dumps_instance(flatten_costs(inst, 2)[0]) == dumps_instance(flatten_costs(inst, 2)[0])


class TestStructure:
    def test_grid_and_triangle(self):
        from firebreak.generators import grid

        rep = check_structure(grid(4).graph)
        assert rep["max_degree"] <= 4 and rep["bipartite"]
        tri = build_graph([(1, 0)] * 3, [(0, 1, False, 1, 1), (1, 2, False, 1, 1), (0, 2, False, 1, 1)])
        assert not check_structure(tri)["bipartite"]
