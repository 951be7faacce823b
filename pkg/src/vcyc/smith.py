"""Integer matrices and their Smith normal form."""
from __future__ import annotations

from dataclasses import dataclass

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import invariant_factors

from .errors import ShapeMismatch


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        ents = tuple(int(x) for x in self.entries)
        object.__setattr__(self, "entries", ents)
        if self.rows < 0 or self.cols < 0 or len(ents) != self.rows * self.cols:
            raise ShapeMismatch(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries")

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]


def smith_normal_form(m: IntMatrix) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` (``min(rows, cols)`` of them, zeros included).

    Read as relations (rows) on generators (cols), the cokernel is
    ``Z^(cols - #nonzero) + sum Z/d_i``.
    """
    if m.rows == 0 or m.cols == 0:
        return []
    # all-zero rows carry no relation; dropping them keeps the factors unchanged except trailing zeros
    nonzero = [r for r in m.to_rows() if any(r)]
    k = min(m.rows, m.cols)
    if not nonzero:
        return [0] * k
    factors = [abs(int(d)) for d in invariant_factors(Matrix(nonzero), domain=ZZ)]
    factors += [0] * (k - len(factors))
    return factors


def cokernel(m: IntMatrix) -> tuple[int, list[int]]:
    """``(free rank, torsion factors > 1)`` of ``Z^cols / rowspace(m)``."""
    factors = smith_normal_form(m)
    nonzero = [d for d in factors if d != 0]
    return m.cols - len(nonzero), [d for d in nonzero if d > 1]
