"""Functors between homotopy colimits: pushforwards along index functors, fibrewise maps,
the retractions onto kernel parts, the twist Φ, the flattening isomorphism Ψ, and ``R_σ``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable

from ..errors import LiftMismatch, NotAFunctor, NotMonoidCat, NotNatural, ShapeMismatch
from .categories import STAR, IndexCat, MonoidCat, group_ops
from .core import Hocolim, HocolimMorphism, HocolimObject

VALIDATION_SAMPLES = 20


@dataclass(frozen=True, eq=False)
class IndexFunctor:
    source: IndexCat
    target: IndexCat
    on_object: Callable[[Any], Any]
    on_key: Callable[[Any], Any]
    name: str = "W"

    def __repr__(self):
        return self.name

    def then(self, other: "IndexFunctor") -> "IndexFunctor":
        """``other o self``."""
        if other.source is not self.target:
            raise NotAFunctor(f"{other.name} does not start where {self.name} ends")
        return IndexFunctor(
            self.source, other.target,
            lambda c: other.on_object(self.on_object(c)),
            lambda f: other.on_key(self.on_key(f)),
            f"{other.name}∘{self.name}",
        )

    @classmethod
    def identity(cls, cat: IndexCat) -> "IndexFunctor":
        return cls(cat, cat, lambda c: c, lambda f: f, "id")

    @classmethod
    def inclusion(cls, small: IndexCat, big: IndexCat, name: str | None = None) -> "IndexFunctor":
        return cls(small, big, lambda c: c, lambda f: f, name or f"{small.name}⊂{big.name}")

    def validate(self, samples: int = VALIDATION_SAMPLES, seed: int = 0) -> None:
        """Identities, hom-sets and composites preserved on sampled composable pairs."""
        rng = random.Random(seed)
        src, tgt = self.source, self.target
        for _ in range(samples):
            c1, c2, c3 = (src.random_object(rng) for _ in range(3))
            f = src.random_morphism(rng, c1, c2)
            g = src.random_morphism(rng, c2, c3)
            d1, d2, d3 = (self.on_object(c) for c in (c1, c2, c3))
            if not all(tgt.is_object(d) for d in (d1, d2, d3)):
                raise NotAFunctor(f"{self.name} sends an object outside {tgt.name}")
            if self.on_key(src.identity(c1)) != tgt.identity(d1):
                raise NotAFunctor(f"{self.name} does not preserve identities")
            wf, wg = self.on_key(f), self.on_key(g)
            if not tgt.is_morphism(wf, d1, d2) or not tgt.is_morphism(wg, d2, d3):
                raise NotAFunctor(f"{self.name} sends {f!r} outside the target hom-set")
            if self.on_key(src.compose(g, f)) != tgt.compose(wg, wf):
                raise NotAFunctor(f"{self.name} does not preserve the composite of {g!r} and {f!r}")


# validated (functor, source, target) triples; values keep the objects alive so ids stay unique
_validated: dict = {}


def _check_compatible(w: IndexFunctor, src: Hocolim, tgt: Hocolim):
    token = (id(w), id(src), id(tgt))
    if token in _validated:
        return
    if src.index is not w.source or tgt.index is not w.target:
        raise NotAFunctor(f"{w.name} does not run from {src.index.name} to {tgt.index.name}")
    w.validate()
    rng = random.Random(1)
    for _ in range(VALIDATION_SAMPLES):
        c1, c2 = src.index.random_object(rng), src.index.random_object(rng)
        f = src.index.random_morphism(rng, c1, c2)
        m = src.coeff.random(rng, 2, 2)
        if src.act(f, m) != tgt.act(w.on_key(f), m):
            raise NotAFunctor(f"coefficient actions disagree along {w.name} at {f!r}")
    _validated[token] = (w, src, tgt)


def pushforward_W(w: IndexFunctor, m: HocolimMorphism, target: Hocolim) -> HocolimMorphism:
    """Re-key every term along ``w``; coefficients are unchanged."""
    _check_compatible(w, m.cat, target)
    dom = HocolimObject(w.on_object(m.dom.base), m.dom.rank)
    cod = HocolimObject(w.on_object(m.cod.base), m.cod.rank)
    return target.morphism(dom, cod, [(w.on_key(k), v) for k, v in m.terms.items()], validate=False)


@dataclass(frozen=True, eq=False)
class CoefficientMap:
    """Fibrewise additive functor between matrix coefficient categories: ranks and matrices."""

    on_rank: Callable[[int], int]
    on_matrix: Callable[[Any], Any]
    name: str = "S"

    def then(self, other: "CoefficientMap") -> "CoefficientMap":
        return CoefficientMap(
            lambda r: other.on_rank(self.on_rank(r)),
            lambda a: other.on_matrix(self.on_matrix(a)),
            f"{other.name}∘{self.name}",
        )

    @classmethod
    def identity(cls) -> "CoefficientMap":
        return cls(lambda r: r, lambda a: a, "id")

    @classmethod
    def ring_map(cls, f: Callable[[Any], Any], target_ring, name: str = "ring map") -> "CoefficientMap":
        return cls(lambda r: r, lambda a: a.map(lambda x: target_ring.normalize(f(x)), target_ring), name)

    @classmethod
    def doubling(cls) -> "CoefficientMap":
        """``X -> X + X`` on objects and ``a -> diag(a, a)`` on morphisms."""
        from ..rings import Matrix

        def on_matrix(a):
            z = Matrix.zero(a.ring, a.rows, a.cols)
            return Matrix.stack(a.ring, [[a, z], [z, a]])

        return cls(lambda r: 2 * r, on_matrix, "doubling")


def _check_natural(s: CoefficientMap, src: Hocolim, tgt: Hocolim):
    token = (id(s), id(src), id(tgt))
    if token in _validated:
        return
    if src.index is not tgt.index:
        raise NotNatural("fibrewise maps keep the index category")
    rng = random.Random(2)
    for _ in range(VALIDATION_SAMPLES):
        c1, c2 = src.index.random_object(rng), src.index.random_object(rng)
        f = src.index.random_morphism(rng, c1, c2)
        a, b = src.coeff.random(rng, 2, 2), src.coeff.random(rng, 2, 2)
        if s.on_matrix(src.act(f, a)) != tgt.act(f, s.on_matrix(a)):
            raise NotNatural(f"{s.name} does not commute with the action of {f!r}")
        if s.on_matrix(src.coeff.compose(a, b)) != tgt.coeff.compose(s.on_matrix(a), s.on_matrix(b)):
            raise NotNatural(f"{s.name} is not compatible with composition")
        if s.on_matrix(src.coeff.add(a, b)) != tgt.coeff.add(s.on_matrix(a), s.on_matrix(b)):
            raise NotNatural(f"{s.name} is not additive")
    _validated[token] = (s, src, tgt)


def map_int_S(s: CoefficientMap, m: HocolimMorphism, target: Hocolim) -> HocolimMorphism:
    """Apply ``s`` to every coefficient, keeping keys."""
    _check_natural(s, m.cat, target)
    dom = HocolimObject(m.dom.base, s.on_rank(m.dom.rank))
    cod = HocolimObject(m.cod.base, s.on_rank(m.cod.rank))
    return target.morphism(dom, cod, [(k, s.on_matrix(v)) for k, v in m.terms.items()], validate=False)


# --- the ambient-specific functors ---------------------------------------------------


def inclusion(m: HocolimMorphism, target: Hocolim) -> HocolimMorphism:
    """Read ``m`` in a bigger category over the same objects and coefficients."""
    return target.morphism(m.dom, m.cod, m.terms, validate=True)


def ev_sigma(m: HocolimMorphism, target) -> HocolimMorphism:
    """Retraction onto the kernel part: drop every term whose key is not a morphism of ``target``.

    ``target`` is the homotopy colimit over the kernel subcategory; for ``int_{Z[σ]} B`` it may
    also be ``B`` itself (the inner homotopy colimit), in which case the ``σ^0`` coefficient is returned.
    """
    cat = m.cat
    inner = getattr(cat.coeff, "inner", None)
    if target is inner:
        e = cat.index.identity(m.dom.base)
        found = m.terms.get(e)
        if found is not None:
            return found
        return inner.zero(inner.obj(STAR, m.dom.rank), inner.obj(STAR, m.cod.rank))
    idx = target.index
    kept = [(k, v) for k, v in m.terms.items() if idx.is_morphism(k, m.dom.base, m.cod.base)]
    return target.morphism(m.dom, m.cod, kept, validate=False)


def _check_lift(amb, lift):
    if lift is not None and (lift.owner != amb.v or lift.n != amb.sigma):
        raise LiftMismatch(f"{lift!r} does not project to the chosen generator")


def phi_twist(m: HocolimMorphism, amb, power: int = 1, lift=None) -> HocolimMorphism:
    """``Φ^power`` on ``int_K A``: key ``k -> s^-1 k s`` and coefficients pulled back along ``s``,
    where ``s`` is the ``power``-th power of the lift."""
    _check_lift(amb, lift)
    if m.cat is not amb.a_k:
        raise ShapeMismatch("Φ acts on morphisms of int_K A")
    if power == 0:
        return m
    v = amb.v
    s = v.power(lift or amb.lift, power)
    s_inv = v.inverse(s)
    act = m.cat.act
    terms = [(v.multiply(v.multiply(s_inv, k), s), act(s, a)) for k, a in m.terms.items()]
    return amb.a_k.morphism(m.dom, m.cod, terms, validate=False)


def psi_iso(m: HocolimMorphism, amb, target: Hocolim | None = None) -> HocolimMorphism:
    """Flatten ``sum_n T_{σ^n} (sum_k T_k a_{k,n})`` to ``sum T_{s^n k} a_{k,n}`` with ``s`` the lift."""
    if m.cat not in (amb.qb, amb.qb_sigma):
        raise ShapeMismatch("Ψ acts on morphisms of int_Z B")
    target = target or (amb.a_v_sigma if m.cat is amb.qb_sigma else amb.a_v)
    v = amb.v
    out = []
    for q, b in m.terms.items():
        s_n = v.power(amb.lift, amb.q_exponent(q))
        out.extend((v.multiply(s_n, k), a) for k, a in b.terms.items())
    return target.morphism(HocolimObject(STAR, m.dom.rank), HocolimObject(STAR, m.cod.rank), out)


def psi_inverse(m: HocolimMorphism, amb, target: Hocolim | None = None) -> HocolimMorphism:
    """Split every key ``x`` uniquely as ``s^n k`` with ``k`` in ``K`` and regroup by ``n``."""
    if m.cat not in (amb.a_v, amb.a_v_sigma):
        raise ShapeMismatch("Ψ^-1 acts on morphisms of int_V A")
    target = target or (amb.qb_sigma if m.cat is amb.a_v_sigma else amb.qb)
    v = amb.v
    groups: dict[int, list] = {}
    for x, a in m.terms.items():
        n = x.n * amb.sigma
        k = v.multiply(v.power(amb.lift, -n), x)
        assert k.n == 0
        groups.setdefault(n, []).append((k, a))
    dom_b = amb.a_k.obj(STAR, m.dom.rank)
    cod_b = amb.a_k.obj(STAR, m.cod.rank)
    terms = [(amb.sigma_power(n), amb.a_k.morphism(dom_b, cod_b, ks, validate=False)) for n, ks in groups.items()]
    return target.morphism(HocolimObject(STAR, m.dom.rank), HocolimObject(STAR, m.cod.rank), terms)


def r_sigma(m: HocolimMorphism, amb) -> HocolimMorphism:
    return pushforward_W(amb.functors.r_sigma, m, amb.a_gk)


def to_group_ring_matrix(m: HocolimMorphism):
    """Entry ``(i, j)`` is ``sum_f f * (a_f)_{ij}`` in the (twisted) group ring of the index group."""
    from ..twisted import TwistedGroupRing

    cat = m.cat
    if not isinstance(cat.index, MonoidCat):
        raise NotMonoidCat(f"{cat.index.name} has more than one object")
    gr = getattr(cat, "_group_ring", None)
    if gr is None:
        action = cat.ring_action
        twist = None if action is None else (lambda g: (lambda x: action.apply(g, x)))
        gr = cat._group_ring = TwistedGroupRing(cat.index.group, cat.coeff.ring, twist)
    out = [[gr.zero for _ in range(m.dom.rank)] for _ in range(m.cod.rank)]
    for f, a in m.terms.items():
        for i in range(a.rows):
            for j in range(a.cols):
                out[i][j] = out[i][j] + gr.monomial(f, a.data[i][j])
    return gr, out


class AmbientFunctors:
    """The index functors of one ``Ambient``, built once so pushforward validation is cached."""

    def __init__(self, amb):
        self.amb = amb
        mul = group_ops(amb.g)[0]
        e_v = amb.g.identity
        embed = amb.embed

        def e(src, tgt, name):
            return IndexFunctor(src, tgt, lambda c: e_v, embed, name)

        self.e_gv = e(amb.v_hat, amb.gv, "e(G/V)")
        self.e_gv_sigma = e(amb.v_sigma_hat, amb.gv_sigma, "e(G/V)[σ]")
        self.e_gv_k = e(amb.k_hat, amb.gv_k, "e(G/V)_K")
        self.e_gk = e(amb.k_hat, amb.gk, "e(G/K)")
        self.pr_v = IndexFunctor(amb.gk, amb.gv, amb.mod_v.rep, lambda g: g, "G(pr_V)")
        self.r_sigma = IndexFunctor(amb.gk, amb.gk, lambda c: amb.mod_k.rep(mul(c, amb.lift_g)), lambda g: g, "R_σ")
        inc = IndexFunctor.inclusion
        self.k_in_v_sigma = inc(amb.k_hat, amb.v_sigma_hat)
        self.v_sigma_in_v = inc(amb.v_sigma_hat, amb.v_hat)
        self.k_in_v = inc(amb.k_hat, amb.v_hat)
        self.gv_k_in_gv_sigma = inc(amb.gv_k, amb.gv_sigma)
        self.gv_sigma_in_gv = inc(amb.gv_sigma, amb.gv)
        self.q_sigma_in_q = inc(amb.q_sigma_hat, amb.q_hat)
