import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import instances
from firebreak import FLOAT, Instance, ModeError, build_graph
from firebreak.io import (
    FormatError,
    dumps_cnf,
    dumps_instance,
    dumps_max2sat,
    loads_cnf,
    loads_instance,
    loads_max2sat,
    loads_sizes,
    write_instance,
)
from firebreak.reductions import CnfInstance, Max2SatInstance, partition_to_star_certified


def doc(**over):
    d = {"mode": "rational",
         "vertices": [{"id": 0, "value": 1, "ignition": "1/2"}, {"id": 1, "value": 2, "ignition": 0}],
         "edges": [{"tail": 0, "head": 1, "directed": False, "spread": 1, "cost": 1}],
         "budget": 1}
    d.update(over)
    return json.dumps(d)


class TestParse:
    def test_rational_literal(self):
        inst = loads_instance(doc())
        assert inst.graph.vertices[0].ignition == F(1, 2)
        assert inst.risk_threshold is None

    def test_eight_vertex_round_trip(self, tree8):
        text = dumps_instance(tree8)
        assert dumps_instance(loads_instance(text)) == text

    @pytest.mark.parametrize("over, field", [
        ({"vertices": [{"id": 0, "value": 1, "ignition": 1.5}]}, None),
        ({"vertices": [{"id": 0, "value": 1, "ignition": "3/2"}]}, "vertices[0].ignition"),
        ({"vertices": [{"id": 0, "value": -1, "ignition": 0}]}, "vertices[0].value"),
        ({"vertices": [{"id": 1, "value": 1, "ignition": 0}]}, "vertices"),
        ({"edges": [{"tail": 0, "head": 1, "directed": "no", "spread": 1, "cost": 1}]}, "edges[0].directed"),
        ({"edges": [{"tail": 0, "head": 1, "directed": False, "spread": 1}]}, "edges[0]"),
        ({"mode": "decimal"}, "mode"),
        ({"colour": "red"}, ""),
        ({"budget": "x/y"}, "budget"),
    ])
    def test_schema_errors(self, over, field):
        with pytest.raises((FormatError, ModeError)) as exc:
            loads_instance(doc(**over))
        if field is not None:
            assert exc.value.path == field

    def test_float_in_rational_mode(self):
        with pytest.raises(ModeError):
            loads_instance(doc(budget=1.5))

    def test_string_in_float_mode(self):
        with pytest.raises(ModeError):
            loads_instance(doc(mode="float"))

    def test_float_mode(self):
        inst = loads_instance(doc(mode="float", vertices=[{"id": 0, "value": 1, "ignition": 0.1},
                                                          {"id": 1, "value": 2.5, "ignition": 0}]))
        assert inst.mode == FLOAT and inst.graph.vertices[0].ignition == 0.1

    def test_json_syntax_error_has_line(self):
        with pytest.raises(FormatError) as exc:
            loads_instance('{\n  "mode": "rational",\n  oops\n}')
        assert exc.value.line == 3

    def test_graph_errors_become_format_errors(self):
        edges = [{"tail": 0, "head": 1, "directed": True, "spread": 1, "cost": 1},
                 {"tail": 1, "head": 0, "directed": True, "spread": 1, "cost": 2}]
        with pytest.raises(FormatError, match="unequal"):
            loads_instance(doc(edges=edges))


@given(instances(max_vertices=6), st.one_of(st.none(), st.integers(0, 9)))
def test_round_trip_rational(inst, rt):
    inst = Instance(inst.graph, inst.budget, None if rt is None else F(rt, 3))
    assert loads_instance(dumps_instance(inst)) == inst


@given(st.lists(st.tuples(st.floats(0, 100), st.floats(0, 1)), min_size=1, max_size=5), st.floats(0, 10))
def test_round_trip_float(vs, budget):
    g = build_graph(vs, [(0, i, False, 0.5, 0.1 * i) for i in range(1, len(vs))], FLOAT)
    inst = Instance(g, budget)
    text = dumps_instance(inst)
    assert loads_instance(text) == inst and dumps_instance(loads_instance(text)) == text


class TestOtherFormats:
    def test_dimacs(self):
        cnf = loads_cnf("c comment\np cnf 3 2\n1 -2 0\n2 3\n-1 0\n")
        assert cnf.clauses == ((1, -2), (2, 3, -1))
        assert loads_cnf(dumps_cnf(cnf)) == cnf

    def test_cnf_json(self):
        assert loads_cnf('{"num_vars": 2, "clauses": [[1, 2]]}').clauses == ((1, 2),)

    def test_cnf_errors(self):
        with pytest.raises(FormatError):
            loads_cnf("1 2 0\n")
        with pytest.raises(FormatError) as exc:
            loads_cnf("p cnf 2 1\n1 x 0\n")
        assert exc.value.line == 2

    def test_max2sat(self):
        phi = Max2SatInstance(2, [(1, 2), (-1, 2)], 1)
        assert loads_max2sat(dumps_max2sat(phi)) == phi
        assert loads_max2sat(dumps_max2sat(phi), 2).K == 2

    def test_sizes(self):
        assert loads_sizes("1 1 2") == [1, 1, 2]
        assert loads_sizes("[2, 2]") == [2, 2]
        assert loads_sizes('{"sizes": [3, 1]}') == [3, 1]

    def test_certificate_sidecar(self, tmp_path):
        inst, cert = partition_to_star_certified([1, 1, 2])
        out = tmp_path / "star.json"
        write_instance(out, inst, cert)
        side = json.loads((tmp_path / "star.json.cert.json").read_text())
        assert side["params"]["S"] == 2 and side["vertex_origin"][0] == "center"
        assert loads_instance(out.read_text()) == inst

    def test_cnf_validation(self):
        with pytest.raises(FormatError):
            loads_cnf("p cnf 2 1\n1 -1 0\n")
        assert dumps_cnf(CnfInstance(1, [(1,)])) == "p cnf 1 1\n1 0\n"
