import itertools

import pytest
from hypothesis import given, settings, strategies as st

from vcyc.catalog import CATALOG_NAMES, catalog_group
from vcyc.errors import CapExceeded, InvalidGroup, NotNormal
from vcyc.finite_group import (
    FiniteGroup,
    GroupAutomorphism,
    Subgroup,
    all_subgroups,
    automorphisms,
    direct_product,
    find_isomorphism,
    is_normal,
    normal_subgroups,
    product_subgroup,
)
from vcyc.smith import IntMatrix, cokernel, smith_normal_form

S3 = catalog_group("S3")
TRANSPOSITION_12 = S3.labels.index("213")
A3 = (0, S3.labels.index("231"), S3.labels.index("312"))

small_names = st.sampled_from([n for n in CATALOG_NAMES if catalog_group(n).order <= 12])


def brute_force_subgroups(g):
    found = set()
    for r in range(1, g.order + 1):
        for subset in itertools.combinations(range(g.order), r):
            s = set(subset)
            if g.identity in s and all(g.mul[a][b] in s for a in s for b in s):
                found.add(subset)
    return found


@pytest.mark.parametrize("name", ["trivial", "Z/4", "S3", "Z/2xZ/2", "Z/6"])
def test_subgroups_match_subset_enumeration(name):
    g = catalog_group(name)
    assert {s.elements for s in all_subgroups(g)} == brute_force_subgroups(g)


def test_subgroup_counts():
    assert [s.elements for s in all_subgroups(catalog_group("trivial"))] == [(0,)]
    z4 = all_subgroups(catalog_group("Z/4"))
    assert [s.elements for s in z4] == [(0,), (0, 2), (0, 1, 2, 3)]
    assert len(all_subgroups(S3)) == 6


def test_subgroup_cap():
    with pytest.raises(CapExceeded):
        all_subgroups(catalog_group("S4"), cap=10)


def test_is_normal_examples():
    assert is_normal(S3.center())
    assert not is_normal(S3.subgroup([TRANSPOSITION_12]))
    assert is_normal(Subgroup(S3, A3))


def test_normal_subgroups_of_s3():
    assert [len(n) for n in normal_subgroups(S3)] == [1, 3, 6]


def test_product_subgroup_examples():
    z6 = catalog_group("Z/6")
    assert product_subgroup(Subgroup(z6, (0, 3)), Subgroup(z6, (0, 2, 4))).elements == tuple(range(6))
    a3 = Subgroup(S3, A3)
    assert product_subgroup(S3.trivial_subgroup(), a3) == a3
    assert product_subgroup(a3, a3) == a3
    with pytest.raises(NotNormal):
        product_subgroup(a3, S3.subgroup([TRANSPOSITION_12]))


def test_invalid_subgroup_rejected():
    with pytest.raises(InvalidGroup):
        Subgroup(catalog_group("Z/4"), (0, 1))


def test_invalid_table_rejected():
    with pytest.raises(InvalidGroup):
        FiniteGroup(((0, 1), (1, 1)))


def test_smith_examples():
    assert smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]])) == [1, 6]
    assert smith_normal_form(IntMatrix.from_rows([[0]])) == [0]
    assert smith_normal_form(IntMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == [1, 1, 1]
    assert cokernel(IntMatrix.from_rows([[2, 0], [0, 3]])) == (0, [6])
    assert cokernel(IntMatrix.from_rows([[0]])) == (1, [])


@settings(max_examples=80)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=2, max_size=2), min_size=2, max_size=2))
def test_smith_factors_divide_and_preserve_determinant(rows):
    factors = smith_normal_form(IntMatrix.from_rows(rows))
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0 if a else b == 0
    det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    assert factors[0] * factors[1] == abs(det)


def test_automorphism_counts():
    assert len(automorphisms(catalog_group("Z/3"))) == 2
    assert len(automorphisms(catalog_group("Z/2xZ/2"))) == 6
    assert len(automorphisms(catalog_group("trivial"))) == 1
    assert len(automorphisms(S3)) == 6
    assert len(automorphisms(catalog_group("D_4"))) == 8


def test_automorphism_cap():
    with pytest.raises(CapExceeded):
        automorphisms(catalog_group("S4"), cap=8)


@settings(max_examples=40)
@given(small_names, st.data())
def test_automorphisms_closed_under_composition(name, data):
    g = catalog_group(name)
    auts = automorphisms(g)
    images = {a.image for a in auts}
    a = data.draw(st.sampled_from(auts))
    b = data.draw(st.sampled_from(auts))
    assert a.then(b).image in images
    assert a.inverse().image in images
    assert a.then(a.inverse()).is_identity()
    assert a.power(a.order).is_identity()


@settings(max_examples=40)
@given(small_names, st.data())
def test_group_axioms(name, data):
    g = catalog_group(name)
    x, y, z = (data.draw(st.integers(0, g.order - 1)) for _ in range(3))
    assert g.op(g.op(x, y), z) == g.op(x, g.op(y, z))
    assert g.op(x, g.identity) == x == g.op(g.identity, x)
    assert g.op(x, g.inverse(x)) == g.identity
    assert g.power(x, g.element_order(x)) == g.identity


def test_s3_is_dihedral_of_order_six():
    assert find_isomorphism(S3, catalog_group("D_3")) is not None
    assert find_isomorphism(S3, catalog_group("Z/6")) is None


def test_direct_product_order_and_abelian():
    p = direct_product(catalog_group("Z/2"), catalog_group("Z/3"))
    assert p.order == 6 and p.is_abelian()
    assert find_isomorphism(p, catalog_group("Z/6")) is not None


def test_inner_automorphism_fixes_center():
    q8 = catalog_group("Q8")
    inner = GroupAutomorphism.inner(q8, 1)
    assert all(inner(z) == z for z in q8.center())
