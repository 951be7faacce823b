"""Objects and morphisms of a homotopy colimit of additive categories.

A morphism ``(c, X) -> (d, Y)`` is a finite sum ``sum_f T_f o phi_f`` over index morphisms
``f: c -> d`` with ``phi_f: X -> f^* Y``.  Composition follows

    (T_f o phi) o (T_g o psi) = T_{f o g} o (g^* phi o psi)

where ``g^*`` is the (right) action on the coefficient category.  Terms with zero coefficient
are never stored, so equality of morphisms is equality of term maps.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Callable

from ..errors import FilterViolation, InvalidGroup, ShapeMismatch
from ..rings import CoeffRing, Matrix, RingAction
from .categories import STAR, IndexCat, MonoidCat


# --- coefficient categories --------------------------------------------------------
# Objects are ranks (non-negative ints); morphisms carry their own shape.


class MatrixCategory:
    """Finitely generated free modules over an exact ring; a morphism ``R^m -> R^n`` is an ``n x m`` matrix."""

    def __init__(self, ring: CoeffRing, entry_size: int = 3):
        self.ring = ring
        self.entry_size = entry_size

    def __repr__(self):
        return f"FGF({self.ring})"

    def compose(self, a: Matrix, b: Matrix) -> Matrix:
        return a @ b

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def zero(self, cod: int, dom: int) -> Matrix:
        return Matrix.zero(self.ring, cod, dom)

    def identity(self, obj: int) -> Matrix:
        return Matrix.identity(self.ring, obj)

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def shape(self, a) -> tuple[int, int]:
        return a.shape

    def random(self, rng: random.Random, cod: int, dom: int) -> Matrix:
        return Matrix.random(self.ring, rng, cod, dom, self.entry_size)

    def injection(self, r1: int, r2: int, which: int) -> Matrix:
        R = self.ring
        if which == 0:
            return Matrix.stack(R, [[Matrix.identity(R, r1)], [Matrix.zero(R, r2, r1)]])
        return Matrix.stack(R, [[Matrix.zero(R, r1, r2)], [Matrix.identity(R, r2)]])

    def projection(self, r1: int, r2: int, which: int) -> Matrix:
        R = self.ring
        if which == 0:
            return Matrix.stack(R, [[Matrix.identity(R, r1), Matrix.zero(R, r1, r2)]])
        return Matrix.stack(R, [[Matrix.zero(R, r2, r1), Matrix.identity(R, r2)]])

    def action(self, action: RingAction | None) -> Callable[[Any, Matrix], Matrix]:
        if action is None:
            return lambda key, m: m
        if action.ring != self.ring:
            raise InvalidGroup(f"action on {action.ring} used with coefficients in {self.ring}")
        return lambda key, m: m.map(lambda x: action.apply(key, x))


class HocolimCoefficients:
    """A homotopy colimit over a one-object category, used as the coefficient category of another."""

    def __init__(self, inner: "Hocolim"):
        if not isinstance(inner.index, MonoidCat):
            raise InvalidGroup("nested coefficients must come from a one-object index category")
        self.inner = inner

    def __repr__(self):
        return f"int({self.inner.index!r})"

    def _obj(self, r):
        return HocolimObject(STAR, r)

    def compose(self, a, b):
        return self.inner.compose(a, b)

    def add(self, a, b):
        return self.inner.add(a, b)

    def neg(self, a):
        return self.inner.neg(a)

    def zero(self, cod, dom):
        return self.inner.zero(self._obj(dom), self._obj(cod))

    def identity(self, obj):
        return self.inner.identity(self._obj(obj))

    def is_zero(self, a) -> bool:
        return not a.terms

    def shape(self, a):
        return (a.cod.rank, a.dom.rank)

    def random(self, rng, cod, dom):
        return self.inner.random_morphism(rng, self._obj(dom), self._obj(cod))

    def injection(self, r1, r2, which):
        b = self.inner.direct_sum(self._obj(r1), self._obj(r2))
        return b.inj1 if which == 0 else b.inj2

    def projection(self, r1, r2, which):
        b = self.inner.direct_sum(self._obj(r1), self._obj(r2))
        return b.proj1 if which == 0 else b.proj2


# --- objects and morphisms ---------------------------------------------------------


@dataclass(frozen=True)
class HocolimObject:
    base: Any
    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 0:
            raise ShapeMismatch("rank must be a non-negative integer")


@dataclass(frozen=True, eq=False)
class HocolimMorphism:
    cat: "Hocolim"
    dom: HocolimObject
    cod: HocolimObject
    terms: MappingProxyType = field(repr=False)

    def __eq__(self, other):
        if not isinstance(other, HocolimMorphism):
            return NotImplemented
        return (
            self.cat is other.cat
            and self.dom == other.dom
            and self.cod == other.cod
            and dict(self.terms) == dict(other.terms)
        )

    def __hash__(self):
        return hash((self.dom, self.cod, frozenset(self.terms.items())))

    def __repr__(self):
        body = " + ".join(f"T[{k!r}]*{v!r}" for k, v in self.terms.items()) or "0"
        return f"<{self.dom.base!r},{self.dom.rank} -> {self.cod.base!r},{self.cod.rank}: {body}>"

    def __matmul__(self, other: "HocolimMorphism") -> "HocolimMorphism":
        return self.cat.compose(self, other)

    def __add__(self, other):
        return self.cat.add(self, other)

    def __neg__(self):
        return self.cat.neg(self)

    def __sub__(self, other):
        return self.cat.add(self, self.cat.neg(other))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list:
        return list(self.terms)


@dataclass(frozen=True)
class Biproduct:
    obj: HocolimObject
    inj1: HocolimMorphism
    inj2: HocolimMorphism
    proj1: HocolimMorphism
    proj2: HocolimMorphism


class Hocolim:
    """``int_C F`` for an index category ``C`` acting on a coefficient category from the right."""

    def __init__(self, index: IndexCat, coeff, act: Callable[[Any, Any], Any] | None = None,
                 name: str | None = None, multiplicative: bool = True):
        self.index = index
        self.coeff = coeff
        self.act = act or (lambda key, m: m)
        self.name = name or f"int_{index.name}"
        # False when the coefficient action is not by ring maps; composition is then not associative
        self.multiplicative = multiplicative
        self.ring_action: RingAction | None = None

    def __repr__(self):
        return self.name

    @classmethod
    def over_matrices(cls, index: IndexCat, ring: CoeffRing, action: RingAction | None = None,
                      name: str | None = None) -> "Hocolim":
        coeff = MatrixCategory(ring)
        mult = True if action is None else action.multiplicative
        out = cls(index, coeff, coeff.action(action), name=name, multiplicative=mult)
        out.ring_action = action
        return out

    # construction

    def obj(self, base, rank: int) -> HocolimObject:
        if not self.index.is_object(base):
            raise InvalidGroup(f"{base!r} is not an object of {self.index.name}")
        return HocolimObject(base, rank)

    def morphism(self, dom: HocolimObject, cod: HocolimObject, terms, validate: bool = True) -> HocolimMorphism:
        items = terms.items() if hasattr(terms, "items") else terms
        out: dict = {}
        coeff = self.coeff
        for key, m in items:
            if validate:
                if coeff.shape(m) != (cod.rank, dom.rank):
                    raise ShapeMismatch(f"coefficient of shape {coeff.shape(m)} on a {cod.rank}x{dom.rank} morphism")
                if not self.index.is_morphism(key, dom.base, cod.base):
                    raise FilterViolation(f"{key!r} is not a morphism {dom.base!r} -> {cod.base!r} in {self.index.name}")
            out[key] = coeff.add(out[key], m) if key in out else m
        clean = {k: v for k, v in out.items() if not coeff.is_zero(v)}
        return HocolimMorphism(self, dom, cod, MappingProxyType(clean))

    def structural(self, key, dom: HocolimObject, cod: HocolimObject) -> HocolimMorphism:
        """``T_key`` with identity coefficient (free modules: ``key^* X`` has the rank of ``X``)."""
        if dom.rank != cod.rank:
            raise ShapeMismatch("a structural morphism needs equal ranks")
        return self.morphism(dom, cod, {key: self.coeff.identity(dom.rank)})

    def zero(self, dom: HocolimObject, cod: HocolimObject) -> HocolimMorphism:
        return HocolimMorphism(self, dom, cod, MappingProxyType({}))

    def identity(self, obj: HocolimObject) -> HocolimMorphism:
        return self.morphism(obj, obj, {self.index.identity(obj.base): self.coeff.identity(obj.rank)})

    # additive structure

    def _own(self, *ms):
        for m in ms:
            if m.cat is not self:
                raise ShapeMismatch(f"morphism of {m.cat!r} used in {self!r}")

    def add(self, a: HocolimMorphism, b: HocolimMorphism) -> HocolimMorphism:
        self._own(a, b)
        if a.dom != b.dom or a.cod != b.cod:
            raise ShapeMismatch("sum of morphisms with different source or target")
        return self.morphism(a.dom, a.cod, list(a.terms.items()) + list(b.terms.items()), validate=False)

    def neg(self, a: HocolimMorphism) -> HocolimMorphism:
        self._own(a)
        return self.morphism(a.dom, a.cod, {k: self.coeff.neg(v) for k, v in a.terms.items()}, validate=False)

    def compose(self, g: HocolimMorphism, f: HocolimMorphism) -> HocolimMorphism:
        """``g o f``."""
        self._own(g, f)
        if f.cod != g.dom:
            raise ShapeMismatch(f"cannot compose: {f.cod} != {g.dom}")
        acc: list = []
        index, coeff, act = self.index, self.coeff, self.act
        for k1, m1 in g.terms.items():
            for k2, m2 in f.terms.items():
                key = index.compose(k1, k2)
                acc.append((key, coeff.compose(act(k2, m1), m2)))
        out = self.morphism(f.dom, g.cod, acc, validate=False)
        for key in out.terms:
            if not index.is_morphism(key, f.dom.base, g.cod.base):
                raise FilterViolation(f"composite key {key!r} left the category {index.name}")
        return out

    def direct_sum(self, x: HocolimObject, y: HocolimObject) -> Biproduct:
        """``x + y`` placed at ``x.base``; ``y`` is moved there along the canonical connecting morphism."""
        f = self.index.connecting_iso(x.base, y.base)
        f_inv = self.index.connecting_iso(y.base, x.base)
        s = HocolimObject(x.base, x.rank + y.rank)
        e = self.index.identity(x.base)
        c = self.coeff
        return Biproduct(
            s,
            self.morphism(x, s, {e: c.injection(x.rank, y.rank, 0)}),
            self.morphism(y, s, {f_inv: c.injection(x.rank, y.rank, 1)}),
            self.morphism(s, x, {e: c.projection(x.rank, y.rank, 0)}),
            self.morphism(s, y, {f: c.projection(x.rank, y.rank, 1)}),
        )

    def direct_sum_morphisms(self, a: HocolimMorphism, b: HocolimMorphism) -> HocolimMorphism:
        self._own(a, b)
        src = self.direct_sum(a.dom, b.dom)
        dst = self.direct_sum(a.cod, b.cod)
        return self.add(
            self.compose(dst.inj1, self.compose(a, src.proj1)),
            self.compose(dst.inj2, self.compose(b, src.proj2)),
        )

    # sampling

    def random_object(self, rng: random.Random, max_rank: int = 2) -> HocolimObject:
        return HocolimObject(self.index.random_object(rng), rng.randint(1, max_rank))

    def random_morphism(self, rng: random.Random, dom: HocolimObject | None = None,
                        cod: HocolimObject | None = None, support: int = 3) -> HocolimMorphism:
        dom = dom or self.random_object(rng)
        cod = cod or self.random_object(rng)
        terms = []
        for _ in range(rng.randint(1, support)):
            key = self.index.random_morphism(rng, dom.base, cod.base)
            terms.append((key, self.coeff.random(rng, cod.rank, dom.rank)))
        return self.morphism(dom, cod, terms)
