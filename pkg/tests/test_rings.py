import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from vcyc.errors import ShapeMismatch
from vcyc.rings import (
    GaussianIntegers,
    Integers,
    IntegersMod,
    Matrix,
    Rationals,
    RingAction,
    ring_from_name,
)

RINGS = [Integers(), Rationals(), IntegersMod(5), IntegersMod(6), GaussianIntegers()]


@settings(max_examples=80)
@given(st.sampled_from(RINGS), st.integers(0, 10**6))
def test_ring_axioms(ring, seed):
    rng = random.Random(seed)
    x, y, z = (ring.random(rng) for _ in range(3))
    assert ring.mul(ring.mul(x, y), z) == ring.mul(x, ring.mul(y, z))
    assert ring.mul(x, ring.add(y, z)) == ring.add(ring.mul(x, y), ring.mul(x, z))
    assert ring.add(x, ring.neg(x)) == ring.zero
    assert ring.mul(x, ring.one) == x
    assert ring.mul(x, y) == ring.mul(y, x)


def test_ring_names():
    assert ring_from_name("Z/7") == IntegersMod(7)
    assert ring_from_name("Z[i]") == GaussianIntegers()
    assert ring_from_name("Q") == Rationals()
    with pytest.raises(ValueError):
        ring_from_name("F_4")
    with pytest.raises(ValueError):
        IntegersMod(1)


def test_gaussian_arithmetic():
    zi = GaussianIntegers()
    assert zi.mul((0, 1), (0, 1)) == (-1, 0)
    assert zi.conjugate((2, 3)) == (2, -3)


def test_conjugation_action_is_multiplicative():
    act = RingAction.gaussian_conjugation(exponent=lambda g: g)
    zi = act.ring
    x, y = (1, 2), (3, -1)
    assert act.apply(1, zi.mul(x, y)) == zi.mul(act.apply(1, x), act.apply(1, y))
    assert act.apply(2, x) == x and act.multiplicative


def test_unit_scaling_is_not_multiplicative():
    ring = IntegersMod(5)
    act = RingAction.unit_scaling(ring, 2, exponent=lambda g: g)
    assert act.apply(1, 1) == 2
    assert act.apply(1, ring.mul(1, 1)) != ring.mul(act.apply(1, 1), act.apply(1, 1))
    assert not act.multiplicative
    assert act.apply(4, 3) == 3


def test_matrix_product_example():
    z = Integers()
    a = Matrix.from_rows(z, [[1, 2], [3, 4]])
    b = Matrix.from_rows(z, [[0, 1], [1, 0]])
    assert a @ b == Matrix.from_rows(z, [[2, 1], [4, 3]])
    assert a @ Matrix.identity(z, 2) == a
    assert (a - a).is_zero()
    assert Matrix.from_rows(Rationals(), [[Fraction(1, 2)]]).entry(0, 0) == Fraction(1, 2)


def test_matrix_shape_errors():
    z = Integers()
    with pytest.raises(ShapeMismatch):
        Matrix.zero(z, 2, 3) @ Matrix.zero(z, 2, 3)
    with pytest.raises(ShapeMismatch):
        Matrix.zero(z, 2, 3) + Matrix.zero(z, 3, 2)


@settings(max_examples=60)
@given(st.sampled_from(RINGS), st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_matrix_product_associative(ring, seed, m, n, p):
    rng = random.Random(seed)
    a, b, c = (Matrix.random(ring, rng, r, s) for r, s in ((m, n), (n, p), (p, m)))
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + b) == a @ b + a @ b


def test_stack_and_block():
    z = Integers()
    a = Matrix.from_rows(z, [[1, 2], [3, 4]])
    s = Matrix.stack(z, [[a, Matrix.zero(z, 2, 1)], [Matrix.zero(z, 1, 2), Matrix.identity(z, 1)]])
    assert s.shape == (3, 3)
    assert s.block(0, 0, 2, 2) == a
    assert s.entry(2, 2) == 1
