import pytest

from vcyc.catalog import catalog_group
from vcyc.errors import ParseError
from vcyc.finite_group import find_isomorphism
from vcyc.fixtures import DEFAULT_AMBIENTS, DEFAULT_ETA, DEFAULT_TRANSFER
from vcyc.orientation import solve
from vcyc.serialization import (
    dump_element,
    dump_group,
    dump_hom,
    dump_orientation_diagram,
    dump_vcgroup,
    dumps,
    fixture_list,
    loads,
    parse_ambient,
    parse_element,
    parse_eta_fixture,
    parse_group,
    parse_hom,
    parse_inclusion_datum,
    parse_orientation_diagram,
    parse_vcgroup,
)
from vcyc.vc import Amalgam, SemidirectZ

Z3_INV = {"variant": "semidirect_z", "k": "Z/3", "phi": [0, 2, 1]}
DINF = {"variant": "amalgam", "a": "Z/2", "b": "Z/2", "k": "trivial", "emb_a": [0], "emb_b": [0]}


def field_of(fn, *args):
    with pytest.raises(ParseError) as info:
        fn(*args)
    return info.value.details.get("field")


def test_loads_reports_position():
    with pytest.raises(ParseError) as info:
        loads('{"a": 1,\n "b": }')
    assert info.value.details["line"] == 2
    assert "column" in info.value.details


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


def test_group_round_trip():
    s3 = catalog_group("S3")
    assert parse_group("S3") == s3
    assert parse_group({"catalog": "S3"}) == s3
    table = dump_group(s3)
    assert find_isomorphism(parse_group(table), s3) is not None
    assert field_of(parse_group, "S7", "x.k") == "x.k"


def test_vcgroup_round_trip():
    v = parse_vcgroup(Z3_INV)
    assert isinstance(v, SemidirectZ) and v.phi.image == (0, 2, 1)
    assert parse_vcgroup(dump_vcgroup(v)) == v
    d = parse_vcgroup(DINF)
    assert isinstance(d, Amalgam)
    assert parse_vcgroup(dump_vcgroup(d)) == d


def test_vcgroup_errors_name_fields():
    assert field_of(parse_vcgroup, {"variant": "semidirect_z"}, "g") == "g.k"
    assert field_of(parse_vcgroup, {"variant": "semidirect_z", "k": "Z/3", "phi": [0, 1, 1]}, "g") == "g.phi"
    assert field_of(parse_vcgroup, {"variant": "hnn", "k": "Z/3"}, "g") == "g.variant"
    bad = dict(DINF, k="Z/2", emb_a=[0, 1], emb_b=[0, 1])
    assert field_of(parse_vcgroup, bad, "g") == "g"


def test_elements_and_homs():
    v = parse_vcgroup(Z3_INV)
    x = parse_element(v, {"k": 2, "n": -1})
    assert x == v.element(2, -1)
    assert parse_element(v, dump_element(x)) == x
    d = parse_vcgroup(DINF)
    y = parse_element(d, {"letters": [[0, 1], [1, 1]], "k": 0})
    assert parse_element(d, dump_element(y)) == y
    h = parse_hom(v, v, [{"k": 2, "n": 0}, {"k": 0, "n": 1}])
    assert parse_hom(v, v, dump_hom(h)).images == h.images
    assert field_of(parse_hom, v, v, [{"k": 1, "n": 0}, {"k": 0, "n": 2}], "e.hom") == "e.hom"


def test_orientation_diagram_formats():
    signs = {"nodes": [{"id": "a"}, {"id": "b"}], "edges": [{"from": "a", "to": "b", "sign": -1}]}
    d = parse_orientation_diagram(signs)
    assert solve(d).orientable
    assert parse_orientation_diagram(dump_orientation_diagram(d)).edges == d.edges

    with_groups = {
        "nodes": [{"id": "V", "group": Z3_INV}],
        "edges": [{"from": "V", "to": "V", "hom": [{"k": 1, "n": 0}, {"k": 0, "n": -1}]}],
    }
    assert not solve(parse_orientation_diagram(with_groups)).orientable
    assert not solve(parse_orientation_diagram({"obstruction": DINF})).orientable


def test_orientation_diagram_errors():
    bad_node = {"nodes": [{"id": "a"}], "edges": [{"from": "a", "to": "z", "sign": 1}]}
    assert field_of(parse_orientation_diagram, bad_node) == "edges[0].to"
    bad_sign = {"nodes": [{"id": "a"}], "edges": [{"from": "a", "to": "a", "sign": 3}]}
    assert field_of(parse_orientation_diagram, bad_sign) == "edges[0].sign"
    dup = {"nodes": [{"id": "a"}, {"id": "a"}], "edges": []}
    assert field_of(parse_orientation_diagram, dup) == "nodes[1].id"
    assert field_of(parse_orientation_diagram, {"obstruction": Z3_INV}) == "obstruction"


def test_default_fixtures_parse():
    assert [parse_ambient(a).name for a in DEFAULT_AMBIENTS] == [a["name"] for a in DEFAULT_AMBIENTS]
    assert [parse_inclusion_datum(d).index for d in DEFAULT_TRANSFER] == [2, 2, 4, 2, 3]
    assert [parse_eta_fixture(d)[0].order for d in DEFAULT_ETA] == [6, 8, 8]


def test_fixture_errors():
    assert field_of(parse_ambient, {"v": DINF}, "a") == "a.v"
    assert field_of(parse_ambient, {"v": Z3_INV, "ring": "Z", "action": "conjugation"}, "a") == "a.action"
    assert field_of(parse_ambient, {"v": Z3_INV, "sigma": 2}, "a") == "a"
    assert field_of(parse_inclusion_datum, {"k": "Z/4", "h": [2], "reps": [0, 2]}, "f") == "f"
    assert field_of(parse_eta_fixture, {"k": "S3", "element": 9}, "f") == "f.element"


def test_fixture_list_shapes():
    assert fixture_list([1, 2], "fixtures") == [1, 2]
    assert fixture_list({"fixtures": [3]}, "fixtures") == [3]
    assert fixture_list({"k": "S3"}, "fixtures") == [{"k": "S3"}]
