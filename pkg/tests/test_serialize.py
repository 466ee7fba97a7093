import json
from fractions import Fraction

import pytest

from mttlab.cxcore import BoundedComplex
from mttlab.errors import ParseError, ValidationError, WiringError
from mttlab.models import GeneratorSpec, gen_obstruction_demo, gen_random, gen_single_degree
from mttlab.mtt import inherited_package
from mttlab.ratlin import RatMatrix
from mttlab.checks import bridge_verdict
from mttlab.serialize import (complex_from_json, complex_to_json, datum_from_json,
                              datum_to_json, diff_data, dumps, package_from_json,
                              package_to_json, parse_datum, render_diff_md,
                              render_package_csv, render_package_md, render_verdict_md,
                              write_datum)


def test_complex_round_trip_and_zero_diffs_omitted():
    X = BoundedComplex({0: 2, 1: 1, 3: 1},
                       {0: RatMatrix.from_rows([[Fraction(1, 2), -3]])})
    obj = complex_to_json(X)
    assert obj == {"dims": {"0": 2, "1": 1, "3": 1}, "diffs": {"0": [["1/2", "-3"]]}}
    assert complex_from_json(obj) == X


@pytest.mark.parametrize("obj", [
    {"diffs": {}},
    {"dims": {"x": 1}},
    {"dims": {"0": -1}},
    {"dims": {"0": 1, "1": 1}, "diffs": {"0": [["1.5"]]}},
    {"dims": {"0": 1}, "diffs": {"0": "oops"}},
])
def test_malformed_complexes(obj):
    with pytest.raises((ParseError, ValidationError)):
        complex_from_json(obj)


def test_wrong_matrix_shape_names_degree():
    with pytest.raises(ValidationError) as e:
        complex_from_json({"dims": {"0": 1, "1": 2}, "diffs": {"0": [["1"]]}})
    assert "d^0" in str(e.value)


def test_datum_round_trip_is_bit_exact(tmp_path):
    D = gen_random(GeneratorSpec(seed=5))
    path = tmp_path / "d.json"
    write_datum(D, path)
    E = parse_datum(path)
    assert dumps(datum_to_json(E)) == path.read_text()
    assert package_to_json(inherited_package(D)) == package_to_json(inherited_package(E))


def test_package_round_trip():
    pkg = inherited_package(gen_random(GeneratorSpec(seed=6)))
    assert package_from_json(json.loads(dumps(package_to_json(pkg)))) == pkg


def test_package_with_tampered_specialisation_rejected():
    obj = package_to_json(inherited_package(gen_single_degree(3, 2)))
    obj["specializations"][0][1]["w_chi"] = -3
    with pytest.raises(ValidationError):
        package_from_json(obj)


def test_parse_datum_reports_d_squared_degree(tmp_path):
    obj = datum_to_json(gen_single_degree(1, 0))
    obj["probes"][0] = {"dims": {"0": 1, "1": 1, "2": 1},
                        "diffs": {"0": [["1"]], "1": [["1"]]}}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(obj))
    with pytest.raises(ValidationError) as e:
        parse_datum(p)
    d = e.value.diagnostics[0]
    assert d.field == "probes[p1]" and "degree 0" in d.message


def test_parse_datum_reports_incompatible_node(tmp_path):
    obj = datum_to_json(gen_single_degree(1, 0))
    obj["shadow_objects"][1] = {"dims": {"0": 2}, "diffs": {}}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(obj))
    with pytest.raises(ValidationError) as e:
        parse_datum(p)
    assert any(d.kind == "compatibility" and "p2" in d.message for d in e.value.diagnostics)


def test_parse_datum_wiring(tmp_path):
    obj = datum_to_json(gen_single_degree(1, 0))
    obj["psi"][0]["source"] = "nowhere"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(obj))
    with pytest.raises(WiringError):
        parse_datum(p)


def test_parse_datum_malformed_text(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        parse_datum(p)
    with pytest.raises(ParseError):
        parse_datum(tmp_path / "missing.json")
    with pytest.raises(ParseError):
        datum_from_json({"nodes": ["a"]})


def test_renderings_are_deterministic():
    D = gen_random(GeneratorSpec(seed=7))
    pkg = inherited_package(D)
    assert render_package_md(pkg, D.nodes) == render_package_md(pkg, D.nodes)
    csv = render_package_csv(pkg).splitlines()
    assert csv[0] == "i,j,support,P_ij,w_tot,w_chi,nonzero" and len(csv) == 1 + D.r ** 2
    md = render_verdict_md(bridge_verdict(D)).splitlines()
    assert md[0] == "| i | j | supported | content | detector | P_ij | w^tot | w^chi | consistent |"
    assert len(md) == 2 + D.r ** 2


def test_obstruction_diff_shows_only_the_off_diagonal_entry():
    A, B = gen_obstruction_demo()
    diffs = diff_data(A, B, inherited_package(A), inherited_package(B))
    fields = [f for f, _, _ in diffs]
    nodewise = {"nodes", "probes", "shadow_kernels", "shadow_objects", "support", "state"}
    assert not nodewise & set(fields)
    assert [f for f in fields if f.startswith("P_")] == ["P_12"]
    assert "P_12" in render_diff_md(diffs)
