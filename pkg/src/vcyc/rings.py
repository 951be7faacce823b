"""Exact coefficient rings, group actions on them, and matrices."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .errors import RingMismatch, ShapeMismatch


class CoeffRing:
    name = "ring"

    zero: Any
    one: Any

    def add(self, x, y):
        return self.normalize(x + y)

    def neg(self, x):
        return self.normalize(-x)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        return self.normalize(x * y)

    def is_zero(self, x) -> bool:
        return x == self.zero

    def normalize(self, x):
        return x

    def from_int(self, n: int):
        return self.normalize(n)

    def random(self, rng: random.Random, size: int = 3):
        return self.from_int(rng.randint(-size, size))

    def to_json(self, x):
        return x

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))

    def __repr__(self):
        return self.name


class Integers(CoeffRing):
    name = "Z"
    zero, one = 0, 1


class Rationals(CoeffRing):
    name = "Q"
    zero, one = Fraction(0), Fraction(1)

    def normalize(self, x):
        return Fraction(x)

    def random(self, rng, size=3):
        return Fraction(rng.randint(-size, size), rng.randint(1, size))

    def to_json(self, x):
        return str(x)


class IntegersMod(CoeffRing):
    def __init__(self, n: int):
        if n < 2:
            raise ValueError("modulus must be at least 2")
        self.n = n
        self.zero, self.one = 0, 1

    @property
    def name(self):
        return f"Z/{self.n}"

    def normalize(self, x):
        return x % self.n

    def random(self, rng, size=3):
        return rng.randrange(self.n)


class GaussianIntegers(CoeffRing):
    """``Z[i]``, elements as pairs ``(a, b) = a + b i``; complex conjugation is a ring automorphism."""

    name = "Z[i]"
    zero, one = (0, 0), (1, 0)

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1])

    def neg(self, x):
        return (-x[0], -x[1])

    def mul(self, x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def normalize(self, x):
        return (x, 0) if isinstance(x, int) else tuple(x)

    def from_int(self, n):
        return (n, 0)

    def random(self, rng, size=3):
        return (rng.randint(-size, size), rng.randint(-size, size))

    def to_json(self, x):
        return list(x)

    @staticmethod
    def conjugate(x):
        return (x[0], -x[1])


def ring_from_name(name: str) -> CoeffRing:
    s = name.strip()
    if s in ("Z", "Integers"):
        return Integers()
    if s in ("Q", "Rationals"):
        return Rationals()
    if s in ("Z[i]", "GaussianIntegers"):
        return GaussianIntegers()
    if s.startswith("Z/"):
        return IntegersMod(int(s[2:]))
    raise ValueError(f"unknown ring {name!r}")


@dataclass(frozen=True)
class RingAction:
    """Right action of a group on a coefficient ring, through an integer ``exponent`` of each element.

    ``apply(g, x)`` is ``g^* x``.  ``multiplicative`` records whether each ``g^*`` is a ring map.
    """

    ring: CoeffRing
    name: str
    exponent: Callable[[Any], int]
    base: Callable[[Any, int], Any]
    multiplicative: bool = True

    def apply(self, g, x):
        return self.base(x, self.exponent(g))

    def is_trivial_on(self, g) -> bool:
        return self.exponent(g) == 0

    @classmethod
    def trivial(cls, ring: CoeffRing) -> "RingAction":
        return cls(ring, "trivial", lambda g: 0, lambda x, e: x)

    @classmethod
    def gaussian_conjugation(cls, exponent: Callable[[Any], int] = lambda g: g.n) -> "RingAction":
        """Elements with odd exponent act by complex conjugation."""
        ring = GaussianIntegers()
        return cls(ring, "conjugation", exponent, lambda x, e: GaussianIntegers.conjugate(x) if e % 2 else x)

    @classmethod
    def unit_scaling(cls, ring: IntegersMod, unit: int, exponent: Callable[[Any], int] = lambda g: g.n) -> "RingAction":
        """``x -> unit^e * x``.  Functorial in the group element but not a ring map."""
        n = ring.n

        def base(x, e):
            return (pow(unit, e, n) * x) % n

        return cls(ring, f"unit_scaling({unit})", exponent, base, multiplicative=False)


class Matrix:
    """Dense matrix over a ``CoeffRing``; composition is the usual product."""

    __slots__ = ("ring", "rows", "cols", "data", "_hash")

    def __init__(self, ring: CoeffRing, rows: int, cols: int, data):
        self.ring = ring
        self.rows, self.cols = rows, cols
        self.data = tuple(tuple(r) for r in data)
        if len(self.data) != rows or any(len(r) != cols for r in self.data):
            raise ShapeMismatch(f"expected {rows}x{cols} entries")
        self._hash = None

    @classmethod
    def from_rows(cls, ring: CoeffRing, rows) -> "Matrix":
        rows = [[ring.normalize(x) for x in r] for r in rows]
        return cls(ring, len(rows), len(rows[0]) if rows else 0, rows)

    @classmethod
    def zero(cls, ring: CoeffRing, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols, [[ring.zero] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, ring: CoeffRing, n: int) -> "Matrix":
        return cls(ring, n, n, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def random(cls, ring: CoeffRing, rng: random.Random, rows: int, cols: int, size: int = 3) -> "Matrix":
        return cls(ring, rows, cols, [[ring.random(rng, size) for _ in range(cols)] for _ in range(rows)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.data == other.data and self.ring == other.ring

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.data)
        return self._hash

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.data]})"

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        add = self.ring.add
        return Matrix(self.ring, self.rows, self.cols, [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self):
        neg = self.ring.neg
        return Matrix(self.ring, self.rows, self.cols, [[neg(a) for a in r] for r in self.data])

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        R = self.ring
        out = []
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        for r in self.data:
            row = []
            for c in cols:
                acc = R.zero
                for a, b in zip(r, c):
                    if not R.is_zero(a) and not R.is_zero(b):
                        acc = R.add(acc, R.mul(a, b))
                row.append(acc)
            out.append(row)
        return Matrix(R, self.rows, other.cols, out)

    def is_zero(self) -> bool:
        z = self.ring.is_zero
        return all(z(a) for r in self.data for a in r)

    def map(self, f, ring: CoeffRing | None = None) -> "Matrix":
        return Matrix(ring or self.ring, self.rows, self.cols, [[f(a) for a in r] for r in self.data])

    def block(self, row_off: int, col_off: int, rows: int, cols: int) -> "Matrix":
        return Matrix(self.ring, rows, cols, [r[col_off:col_off + cols] for r in self.data[row_off:row_off + rows]])

    def entry(self, i: int, j: int):
        return self.data[i][j]

    @classmethod
    def stack(cls, ring: CoeffRing, blocks) -> "Matrix":
        """Assemble from a 2D list of blocks (``None`` = zero block); row heights/col widths from non-None blocks."""
        heights = [next(b.rows for b in row if b is not None) for row in blocks]
        widths = [next(blocks[i][j].cols for i in range(len(blocks)) if blocks[i][j] is not None) for j in range(len(blocks[0]))]
        data = []
        for i, row in enumerate(blocks):
            for r in range(heights[i]):
                line = []
                for j, b in enumerate(row):
                    line.extend(b.data[r] if b is not None else [ring.zero] * widths[j])
                data.append(line)
        return cls(ring, sum(heights), sum(widths), data)

    def to_json(self):
        return [[self.ring.to_json(a) for a in r] for r in self.data]
