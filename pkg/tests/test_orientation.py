import random

import pytest
from hypothesis import given, settings, strategies as st

from vcyc import checks
from vcyc.catalog import catalog_group
from vcyc.errors import CapExceeded, InvalidGroup, TypeMismatch
from vcyc.finite_group import GroupAutomorphism
from vcyc.orientation import (
    Orientation,
    OrientationDiagram,
    Unorientable,
    brute_force_solve,
    dinfty_obstruction_fixture,
    solve,
)
from vcyc.vc import Amalgam, SemidirectZ, VCHom

TRIVIAL, Z2, Z4 = catalog_group("trivial"), catalog_group("Z/2"), catalog_group("Z/4")


def signs(nodes, edges):
    return OrientationDiagram.from_signs(nodes, edges)


def assert_valid(result, d):
    if result.orientable:
        assert result.satisfies(d)
    else:
        assert result.is_cycle() and result.sign_product() == -1
        assert all(e in d.edges for e in result.witness)


@pytest.mark.parametrize("solver", [solve, brute_force_solve])
def test_spec_examples(solver):
    single = solver(signs(["u"], []))
    assert isinstance(single, Orientation) and single.assignment == {"u": 1}
    assert solver(signs([], [])).orientable

    loop = signs(["u"], [("u", "u", -1)])
    r = solver(loop)
    assert isinstance(r, Unorientable) and r.witness == tuple(loop.edges)

    assert solver(signs(["u", "v"], [("u", "v", 1), ("v", "u", 1)])).orientable

    triangle = signs("abc", [("a", "b", 1), ("b", "c", 1), ("c", "a", -1)])
    r = solver(triangle)
    assert not r.orientable
    assert_valid(r, triangle)
    assert len(r.witness) == 3


def test_assignment_follows_signs():
    d = signs("abc", [("a", "b", -1), ("b", "c", -1)])
    r = solve(d)
    assert r.assignment["a"] == r.assignment["c"] == -r.assignment["b"]


def test_bad_diagrams_rejected():
    with pytest.raises(InvalidGroup):
        signs(["u"], [("u", "v", 1)])
    with pytest.raises(InvalidGroup):
        signs(["u"], [("u", "u", 2)])
    with pytest.raises(TypeMismatch):
        OrientationDiagram({"d": Amalgam(Z2, Z2, TRIVIAL, [0], [0])}, [])


def test_brute_force_cap():
    with pytest.raises(CapExceeded):
        brute_force_solve(signs(range(5), []), cap=4)


@settings(max_examples=150)
@given(st.integers(0, 10**9))
def test_solver_agrees_with_brute_force(seed):
    d = checks.random_sign_diagram(random.Random(seed), max_nodes=7)
    fast, slow = solve(d), brute_force_solve(d)
    assert fast.orientable == slow.orientable
    assert_valid(fast, d)
    assert_valid(slow, d)


@pytest.mark.parametrize("pieces", [(Z2, Z2, TRIVIAL, [0], [0]), (Z4, Z4, Z2, [0, 2], [0, 2])])
def test_obstruction_from_type_two_ambient(pieces):
    d = dinfty_obstruction_fixture(Amalgam(*pieces))
    assert len(d.nodes) == 1 and len(d.edges) == 1
    edge = d.edges[0]
    assert edge.source == edge.target and edge.sign == -1
    r = solve(d)
    assert isinstance(r, Unorientable) and r.witness == (edge,)
    assert r.sign_product() == -1


def test_obstruction_needs_type_two():
    with pytest.raises(TypeMismatch):
        dinfty_obstruction_fixture(SemidirectZ(Z2))


def test_hom_edges_carry_induced_sign():
    z = SemidirectZ(TRIVIAL)
    z3 = catalog_group("Z/3")
    v = SemidirectZ(z3, GroupAutomorphism(z3, (0, 2, 1)))
    d = OrientationDiagram({"Z": z, "V": v}, [])
    # t -> t^-2 lands in the centre of V
    e1 = d.add_hom_edge("Z", "V", VCHom(z, v, [v.element(0, -2)]))
    e2 = d.add_hom_edge("V", "V", VCHom.conjugation(v, v.element(1, 0)))
    assert (e1.sign, e1.multiplier) == (-1, 2)
    assert e2.sign == 1
    r = solve(d)
    assert r.assignment["Z"] == -r.assignment["V"]
    d.add_hom_edge("Z", "V", VCHom(z, v, [v.element(0, 2)]))
    assert not solve(d).orientable


def test_random_battery():
    assert checks.orientation_oracle(60, seed=11).ok
