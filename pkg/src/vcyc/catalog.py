"""Built-in small groups: trivial, Z/n (n <= 12), D_n (order 2n, n <= 6), S3, S4, Q8, Z/2xZ/2."""
from __future__ import annotations

import itertools
import re
from functools import lru_cache

from .errors import ParseError
from .finite_group import FiniteGroup, direct_product


def _from_elements(elements, op, labels, name):
    pos = {x: i for i, x in enumerate(elements)}
    table = tuple(tuple(pos[op(a, b)] for b in elements) for a in elements)
    return FiniteGroup(table, tuple(labels), name=name)


def cyclic(n: int) -> FiniteGroup:
    els = list(range(n))
    return _from_elements(els, lambda a, b: (a + b) % n, [str(x) for x in els], f"Z/{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon: ``(i, f)`` acts by ``m -> (-1)^f m + i``."""
    els = [(i, f) for f in (0, 1) for i in range(n)]

    def op(a, b):
        return ((a[0] + (-1) ** a[1] * b[0]) % n, (a[1] + b[1]) % 2)

    labels = [("r%d" % i if f == 0 else "s%d" % i) for i, f in els]
    return _from_elements(els, op, labels, f"D_{n}")


def symmetric(n: int) -> FiniteGroup:
    """Permutations composed right-to-left: ``(p*q)(x) = p(q(x))``."""
    els = sorted(itertools.permutations(range(n)))

    def op(p, q):
        return tuple(p[q[x]] for x in range(n))

    labels = ["".join(str(v + 1) for v in p) for p in els]
    return _from_elements(els, op, labels, f"S{n}")


def quaternion() -> FiniteGroup:
    # (sign, unit) with units 1,i,j,k encoded 0..3
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    els = [(s, u) for s in (1, -1) for u in range(4)]

    def op(a, b):
        s, u = table[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    names = "1ijk"
    labels = [("" if s == 1 else "-") + names[u] for s, u in els]
    return _from_elements(els, op, labels, "Q8")


def klein() -> FiniteGroup:
    g = direct_product(cyclic(2), cyclic(2))
    return FiniteGroup(g.mul, g.labels, name="Z/2xZ/2")


def trivial() -> FiniteGroup:
    return FiniteGroup(((0,),), ("e",), name="trivial")


_ALIASES = {"z2xz2": "Z/2xZ/2", "z/2xz/2": "Z/2xZ/2", "z/2×z/2": "Z/2xZ/2", "v4": "Z/2xZ/2", "klein": "Z/2xZ/2"}


@lru_cache(maxsize=None)
def catalog_group(name: str) -> FiniteGroup:
    key = name.strip()
    low = key.lower().replace(" ", "")
    if low in _ALIASES:
        return klein()
    if low in ("trivial", "1", "e"):
        return trivial()
    if low == "s3":
        return symmetric(3)
    if low == "s4":
        return symmetric(4)
    if low == "q8":
        return quaternion()
    m = re.fullmatch(r"z/?(\d+)", low)
    if m:
        n = int(m.group(1))
        if 1 <= n <= 12:
            return trivial() if n == 1 else cyclic(n)
    m = re.fullmatch(r"d_?(\d+)", low)
    if m:
        n = int(m.group(1))
        if 1 <= n <= 6:
            return dihedral(n)
    raise ParseError(f"unknown catalog group {name!r}", field="group")


CATALOG_NAMES = (
    ["trivial"]
    + [f"Z/{n}" for n in range(2, 13)]
    + [f"D_{n}" for n in range(1, 7)]
    + ["S3", "S4", "Q8", "Z/2xZ/2"]
)

# one name per isomorphism class, used for corpus generation
DISTINCT_NAMES = (
    ["trivial"]
    + [f"Z/{n}" for n in range(2, 13)]
    + ["Z/2xZ/2", "S3", "D_4", "Q8", "D_5", "D_6", "S4"]
)
