"""Index categories: one-object monoid categories and transport groupoids, optionally filtered."""
from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from typing import Any, Callable

from ..errors import FilterViolation, InvalidGroup, NoIsoAvailable

STAR = "*"


@dataclass(frozen=True)
class MorphismFilter:
    """A submonoid given by a membership test, with a sampler producing members."""

    name: str
    contains: Callable[[Any], bool]
    sample: Callable[[random.Random], Any]


def group_ops(group):
    """``(mul, inv, identity)`` for a ``FiniteGroup`` or a ``VCGroup``."""
    if hasattr(group, "multiply"):
        return group.multiply, group.inverse, group.identity
    return group.op, group.inverse, group.identity


def _sample_element(group, rng: random.Random):
    if hasattr(group, "random_element"):
        return group.random_element(rng)
    return rng.randrange(group.order)


class IndexCat:
    name: str
    group: Any
    filter: MorphismFilter | None = None

    def __repr__(self):
        return self.name

    def compose(self, f1, f2):
        """``f1 o f2`` as group elements."""
        mul = group_ops(self.group)[0]
        return mul(f1, f2)

    def passes(self, h) -> bool:
        return self.filter is None or self.filter.contains(h)

    def _sample_filtered(self, rng):
        if self.filter is not None:
            return self.filter.sample(rng)
        return _sample_element(self.group, rng)


class MonoidCat(IndexCat):
    """One object ``*``; morphisms are the elements of ``group`` passing ``filter``."""

    def __init__(self, group, filter: MorphismFilter | None = None, name: str | None = None):
        self.group = group
        self.filter = filter
        self.name = name or f"hat({group!r})"

    def is_object(self, obj) -> bool:
        return obj == STAR

    def identity(self, obj=STAR):
        return group_ops(self.group)[2]

    def is_morphism(self, key, src=STAR, dst=STAR) -> bool:
        owner = getattr(key, "owner", None)
        if owner is not None and owner is not self.group and owner != self.group:
            return False
        return src == STAR and dst == STAR and self.passes(key)

    def random_object(self, rng):
        return STAR

    def random_morphism(self, rng, src=STAR, dst=STAR):
        return self._sample_filtered(rng)

    def connecting_iso(self, src, dst):
        return self.identity()


class CosetSpace:
    """``G/H`` with canonical representatives.

    ``rep(g)`` returns the canonical representative of ``gH``; ``member(h)`` tests ``h in H``.
    """

    def __init__(self, group, rep: Callable[[Any], Any], member: Callable[[Any], bool],
                 sample_rep: Callable[[random.Random], Any], name: str):
        self.group = group
        self.rep = rep
        self.member = member
        self.sample_rep = sample_rep
        self.name = name


class TransportGroupoid(IndexCat):
    """Objects are cosets (by canonical representative); ``g: c1 -> c2`` iff ``g c1 H = c2 H``.

    With a filter, only those ``g`` with ``c2^-1 g c1`` in the filter are kept.
    The object table is filled lazily as objects are met and guarded by a lock.
    """

    def __init__(self, space: CosetSpace, filter: MorphismFilter | None = None, name: str | None = None):
        self.space = space
        self.group = space.group
        self.filter = filter
        self.name = name or f"G({space.name})"
        self._lock = threading.Lock()
        self._objects: dict[Any, int] = {}

    def register(self, obj) -> int:
        idx = self._objects.get(obj)
        if idx is not None:
            return idx
        with self._lock:
            return self._objects.setdefault(obj, len(self._objects))

    def objects_seen(self) -> list:
        with self._lock:
            return list(self._objects)

    def is_object(self, obj) -> bool:
        try:
            ok = self.space.rep(obj) == obj
        except (InvalidGroup, AttributeError, TypeError):
            return False
        if ok:
            self.register(obj)
        return ok

    def identity(self, obj):
        return group_ops(self.group)[2]

    def _relative(self, key, src, dst):
        mul, inv, _ = group_ops(self.group)
        return mul(mul(inv(dst), key), src)

    def is_morphism(self, key, src, dst) -> bool:
        h = self._relative(key, src, dst)
        return self.space.member(h) and self.passes(h)

    def random_object(self, rng):
        obj = self.space.sample_rep(rng)
        self.register(obj)
        return obj

    def random_morphism(self, rng, src, dst):
        mul, inv, _ = group_ops(self.group)
        h = self.filter.sample(rng) if self.filter is not None else self._sample_member(rng)
        return mul(mul(dst, h), inv(src))

    def _sample_member(self, rng):
        for _ in range(10_000):
            h = _sample_element(self.group, rng)
            if self.space.member(h):
                return h
        raise FilterViolation("could not sample a coset stabiliser element")

    def connecting_iso(self, src, dst):
        """``dst * src^-1``: its relative element is the identity, which passes every filter."""
        mul, inv, _ = group_ops(self.group)
        g = mul(dst, inv(src))
        if not self.is_morphism(g, src, dst):
            raise NoIsoAvailable(f"no morphism {src!r} -> {dst!r} in {self.name}")
        return g
