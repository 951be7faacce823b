"""Finite groups given by multiplication tables.

Elements are the indices ``0..order-1``; labels are for display only.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property

from .config import default_caps
from .errors import CapExceeded, InvalidGroup, NotNormal

EXHAUSTIVE_ASSOC_LIMIT = 64
SAMPLED_ASSOC_TRIPLES = 10_000


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    name: str | None = field(default=None)

    def __post_init__(self):
        mul = tuple(tuple(int(x) for x in row) for row in self.mul)
        object.__setattr__(self, "mul", mul)
        n = len(mul)
        if n == 0:
            raise InvalidGroup("a group needs at least one element")
        for row in mul:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise InvalidGroup("multiplication table must be a square table over 0..order-1")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != n:
                raise InvalidGroup("label count differs from group order")
            object.__setattr__(self, "labels", labels)
        self._validate()

    def _validate(self):
        n = self.order
        ids = [e for e in range(n) if all(self.mul[e][x] == x and self.mul[x][e] == x for x in range(n))]
        if not ids:
            raise InvalidGroup("no two-sided identity")
        for x in range(n):
            if sorted(self.mul[x]) != list(range(n)):
                raise InvalidGroup(f"row {x} is not a permutation, so inverses fail")
        m = self.mul
        if n <= EXHAUSTIVE_ASSOC_LIMIT:
            for a in range(n):
                ma = m[a]
                for b in range(n):
                    mab = m[ma[b]]
                    mb = m[b]
                    for c in range(n):
                        if mab[c] != ma[mb[c]]:
                            raise InvalidGroup(f"not associative on ({a}, {b}, {c})")
        else:
            rng = random.Random(0)
            for _ in range(SAMPLED_ASSOC_TRIPLES):
                a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
                if m[m[a][b]][c] != m[a][m[b][c]]:
                    raise InvalidGroup(f"not associative on ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.mul)

    @cached_property
    def identity(self) -> int:
        return next(e for e in range(self.order) if self.mul[e][e] == e)

    @cached_property
    def inv(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(row.index(e) for row in self.mul)

    @cached_property
    def key(self) -> tuple:
        return self.mul

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)

    def __repr__(self):
        return f"FiniteGroup({self.name or 'order ' + str(self.order)})"

    def elements(self) -> range:
        return range(self.order)

    def op(self, x: int, y: int) -> int:
        return self.mul[x][y]

    def inverse(self, x: int) -> int:
        return self.inv[x]

    def power(self, x: int, n: int) -> int:
        if n < 0:
            x, n = self.inv[x], -n
        out = self.identity
        for _ in range(n):
            out = self.mul[out][x]
        return out

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.mul[y][x]
            k += 1
        return k

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in range(self.order) for b in range(a))

    def center(self) -> "Subgroup":
        els = [z for z in range(self.order) if all(self.mul[z][x] == self.mul[x][z] for x in range(self.order))]
        return Subgroup(self, tuple(els))

    def closure(self, gens) -> tuple[int, ...]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    def subgroup(self, gens) -> "Subgroup":
        return Subgroup(self, self.closure(gens))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by descending element order."""
        gens: list[int] = []
        current = {self.identity}
        for x in sorted(range(self.order), key=lambda y: (-self.element_order(y), y)):
            if len(current) == self.order:
                break
            if x not in current:
                gens.append(x)
                current = set(self.closure(gens))
        return tuple(gens)

    def to_json(self) -> dict:
        out = {"order": self.order, "mul": [list(r) for r in self.mul]}
        if self.labels:
            out["labels"] = list(self.labels)
        return out


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", els)
        g = self.parent
        s = set(els)
        if g.identity not in s:
            raise InvalidGroup("subgroup must contain the identity")
        for x in els:
            if g.inv[x] not in s or any(g.mul[x][y] not in s for y in els):
                raise InvalidGroup("subset is not closed under multiplication and inversion")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._set

    def __iter__(self):
        return iter(self.elements)

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def issubset(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """The subgroup as a standalone group plus its embedding (new index -> parent index)."""
        els = self.elements
        pos = {x: i for i, x in enumerate(els)}
        table = tuple(tuple(pos[self.parent.mul[a][b]] for b in els) for a in els)
        labels = tuple(self.parent.label(x) for x in els) if self.parent.labels else None
        return FiniteGroup(table, labels), els


@dataclass(frozen=True)
class GroupAutomorphism:
    group: FiniteGroup
    image: tuple[int, ...]

    def __post_init__(self):
        img = tuple(int(x) for x in self.image)
        object.__setattr__(self, "image", img)
        g = self.group
        if sorted(img) != list(range(g.order)):
            raise InvalidGroup("automorphism image is not a permutation")
        if not is_homomorphism(g, g, img):
            raise InvalidGroup("automorphism does not respect multiplication")

    def __call__(self, x: int) -> int:
        return self.image[x]

    def then(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """``other ∘ self``."""
        return GroupAutomorphism(self.group, tuple(other.image[x] for x in self.image))

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """``self ∘ other``."""
        return other.then(self)

    def inverse(self) -> "GroupAutomorphism":
        inv = [0] * len(self.image)
        for x, y in enumerate(self.image):
            inv[y] = x
        return GroupAutomorphism(self.group, tuple(inv))

    def power(self, n: int) -> "GroupAutomorphism":
        return GroupAutomorphism(self.group, permutation_power(self.image, n))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.image))

    @cached_property
    def order(self) -> int:
        return permutation_order(self.image)

    @classmethod
    def identity_of(cls, g: FiniteGroup) -> "GroupAutomorphism":
        return cls(g, tuple(range(g.order)))

    @classmethod
    def inner(cls, g: FiniteGroup, k: int) -> "GroupAutomorphism":
        """Conjugation ``x -> k x k^-1``."""
        return cls(g, tuple(g.conj(k, x) for x in range(g.order)))


def permutation_power(perm, n: int) -> tuple[int, ...]:
    perm = tuple(perm)
    if n < 0:
        inv = [0] * len(perm)
        for x, y in enumerate(perm):
            inv[y] = x
        perm, n = tuple(inv), -n
    out = tuple(range(len(perm)))
    for _ in range(n):
        out = tuple(perm[x] for x in out)
    return out


def permutation_order(perm) -> int:
    from math import lcm

    seen = set()
    result = 1
    for start in range(len(perm)):
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        result = lcm(result, length)
    return result


def is_homomorphism(src: FiniteGroup, dst: FiniteGroup, images) -> bool:
    m, n = src.mul, dst.mul
    return all(images[m[a][b]] == n[images[a]][images[b]] for a in range(src.order) for b in range(src.order))


def is_normal(s: Subgroup) -> bool:
    g = s.parent
    return all(g.conj(x, y) in s for x in g.generators for y in s.elements)


def product_subgroup(k1: Subgroup, k2: Subgroup) -> Subgroup:
    if k1.parent != k2.parent:
        raise InvalidGroup("subgroups live in different groups")
    for k in (k1, k2):
        if not is_normal(k):
            raise NotNormal("product_subgroup needs normal subgroups")
    g = k1.parent
    return Subgroup(g, tuple({g.mul[x][y] for x in k1 for y in k2}))


def all_subgroups(g: FiniteGroup, cap: int | None = None) -> list[Subgroup]:
    """Every subgroup once, ordered by size then lexicographically."""
    cap = default_caps().subgroup_order if cap is None else cap
    if g.order > cap:
        raise CapExceeded(f"subgroup enumeration capped at order {cap}, got {g.order}", cap=cap)
    found = {(g.identity,)}
    queue = [(g.identity,)]
    while queue:
        s = queue.pop()
        members = set(s)
        for x in range(g.order):
            if x in members:
                continue
            t = g.closure(s + (x,))
            if t not in found:
                found.add(t)
                queue.append(t)
    return [Subgroup(g, s) for s in sorted(found, key=lambda s: (len(s), s))]


def normal_subgroups(g: FiniteGroup, cap: int | None = None) -> list[Subgroup]:
    return [s for s in all_subgroups(g, cap) if is_normal(s)]


def _extend_on_generators(src: FiniteGroup, dst: FiniteGroup, gens, imgs):
    """Extend generator images along words; None if the assignment is inconsistent."""
    images = {src.identity: dst.identity}
    frontier = [src.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for gen, im in zip(gens, imgs):
                y = src.mul[x][gen]
                z = dst.mul[images[x]][im]
                if y in images:
                    if images[y] != z:
                        return None
                else:
                    images[y] = z
                    nxt.append(y)
        frontier = nxt
    out = tuple(images[x] for x in range(src.order))
    return out if is_homomorphism(src, dst, out) else None


def automorphisms(g: FiniteGroup, cap: int | None = None) -> list[GroupAutomorphism]:
    cap = default_caps().automorphism_order if cap is None else cap
    if g.order > cap:
        raise CapExceeded(f"automorphism enumeration capped at order {cap}, got {g.order}", cap=cap)
    gens = g.generators
    candidates = [[y for y in range(g.order) if g.element_order(y) == g.element_order(x)] for x in gens]
    found = set()
    for imgs in itertools.product(*candidates):
        images = _extend_on_generators(g, g, gens, imgs)
        if images is not None and len(set(images)) == g.order:
            found.add(images)
    return [GroupAutomorphism(g, im) for im in sorted(found)]


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> tuple[int, ...] | None:
    """An isomorphism ``g -> h`` as an image list, or None."""
    if g.order != h.order:
        return None
    orders_g = sorted(g.element_order(x) for x in range(g.order))
    orders_h = sorted(h.element_order(x) for x in range(h.order))
    if orders_g != orders_h:
        return None
    gens = g.generators
    candidates = [[y for y in range(h.order) if h.element_order(y) == g.element_order(x)] for x in gens]
    for imgs in itertools.product(*candidates):
        images = _extend_on_generators(g, h, gens, imgs)
        if images is not None and len(set(images)) == h.order:
            return images
    return None


def direct_product(a: FiniteGroup, b: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Index of ``(x, y)`` is ``x * |b| + y``."""
    nb = b.order
    table = tuple(
        tuple(a.mul[x1][x2] * nb + b.mul[y1][y2] for x2 in range(a.order) for y2 in range(nb))
        for x1 in range(a.order)
        for y1 in range(nb)
    )
    labels = tuple(f"({a.label(x)},{b.label(y)})" for x in range(a.order) for y in range(nb))
    return FiniteGroup(table, labels, name=name)


def group_from_json(data) -> FiniteGroup:
    if not isinstance(data, dict) or "mul" not in data:
        raise InvalidGroup("group JSON needs a 'mul' table")
    mul = data["mul"]
    if "order" in data and data["order"] != len(mul):
        raise InvalidGroup("'order' disagrees with the size of 'mul'")
    return FiniteGroup(tuple(tuple(r) for r in mul), data.get("labels"), name=data.get("name"))
