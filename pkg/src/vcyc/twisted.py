"""Twisted group rings, twisted polynomial rings, and the induction/restriction calculus
along a finite-index inclusion ``H <= K`` that is compatible with automorphisms ``phi``, ``psi``.

Module maps act on row vectors from the right, ``x -> x A``, so left module structures are kept.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Any, Callable

from .config import default_caps
from .errors import CapExceeded, InvalidGroup, InvalidHom, RingMismatch, ShapeMismatch, TwistMismatch
from .finite_group import FiniteGroup, GroupAutomorphism, Subgroup, is_homomorphism
from .hocolim.categories import group_ops
from .rings import CoeffRing, Integers


# --- twisted group rings -------------------------------------------------------------


class TwistedGroupRing:
    """Finite sums ``sum g r_g`` with ``r g = g (g^* r)``, i.e. ``(a r)(b s) = ab (b^* r) s``.

    ``twist(g)`` is the map ``r -> g^* r``; ``None`` gives the ordinary group ring.  ``support``
    optionally restricts to a subgroup (so ``RH`` sits inside ``RK`` on the same element indices).
    """

    def __init__(self, group, coeff: CoeffRing | None = None, twist: Callable | None = None,
                 support: Subgroup | None = None, name: str | None = None):
        self.group = group
        self.coeff = coeff or Integers()
        self.twist = twist
        self.support = support
        self._mul, self._inv, self._e = group_ops(group)
        self.name = name or f"{self.coeff}[{getattr(group, 'name', None) or group!r}]"

    def __repr__(self):
        return self.name

    def same_as(self, other) -> bool:
        return self is other or (
            isinstance(other, TwistedGroupRing)
            and self.group == other.group
            and self.coeff == other.coeff
            and self.twist is other.twist
            and (self.support.elements if self.support else None) == (other.support.elements if other.support else None)
        )

    def contains_group_element(self, g) -> bool:
        return self.support is None or g in self.support

    def element(self, terms) -> "GRElement":
        items = terms.items() if hasattr(terms, "items") else terms
        R = self.coeff
        acc: dict = {}
        for g, r in items:
            if not self.contains_group_element(g):
                raise RingMismatch(f"group element {g!r} is outside {self.name}")
            r = R.normalize(r)
            acc[g] = R.add(acc[g], r) if g in acc else r
        return GRElement(self, MappingProxyType({g: r for g, r in acc.items() if not R.is_zero(r)}))

    @cached_property
    def zero(self) -> "GRElement":
        return GRElement(self, MappingProxyType({}))

    @cached_property
    def one(self) -> "GRElement":
        return self.monomial(self._e, self.coeff.one)

    def monomial(self, g, r=None) -> "GRElement":
        return self.element({g: self.coeff.one if r is None else r})

    def scalar(self, r) -> "GRElement":
        return self.monomial(self._e, r)

    def add(self, x, y):
        return self.element(list(x.terms.items()) + list(y.terms.items()))

    def neg(self, x):
        R = self.coeff
        return self.element({g: R.neg(r) for g, r in x.terms.items()})

    def mul(self, x, y):
        R, tw, mul = self.coeff, self.twist, self._mul
        acc = []
        for a, r in x.terms.items():
            for b, s in y.terms.items():
                rr = tw(b)(r) if tw is not None else r
                acc.append((mul(a, b), R.mul(rr, s)))
        return self.element(acc)

    def map_group(self, f: Callable, x: "GRElement", target: "TwistedGroupRing | None" = None) -> "GRElement":
        """Apply a group homomorphism to the support, keeping coefficients."""
        return (target or self).element([(f(g), r) for g, r in x.terms.items()])

    def random(self, rng: random.Random, support: int = 3, size: int = 3) -> "GRElement":
        pool = list(self.support) if self.support is not None else None
        terms = []
        for _ in range(rng.randint(0, support)):
            g = rng.choice(pool) if pool is not None else _random_group_element(self.group, rng)
            terms.append((g, self.coeff.random(rng, size)))
        return self.element(terms)


def _random_group_element(group, rng):
    if hasattr(group, "random_element"):
        return group.random_element(rng)
    return rng.randrange(group.order)


@dataclass(frozen=True, eq=False)
class GRElement:
    ring: TwistedGroupRing
    terms: MappingProxyType

    def _check(self, other):
        if not isinstance(other, GRElement) or not self.ring.same_as(other.ring):
            raise RingMismatch(f"{getattr(other, 'ring', other)!r} vs {self.ring!r}")

    def __eq__(self, other):
        if not isinstance(other, GRElement):
            return NotImplemented
        return self.ring.coeff == other.ring.coeff and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        self._check(other)
        return self.ring.add(self, other)

    def __neg__(self):
        return self.ring.neg(self)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        return self.ring.mul(self, other)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{r}*[{g!r}]" for g, r in self.terms.items())

    @property
    def is_zero(self) -> bool:
        return not self.terms


# --- twisted polynomial rings ------------------------------------------------------


class TwistedPolyRing:
    """``R G_phi[t]``: coefficients in a group ring, ``t * lam = phi(lam) * t``.

    ``phi`` is an automorphism of the group, acting on group-ring elements through the support.
    With ``laurent=True`` negative powers of ``t`` are allowed with the same twisting law.
    """

    def __init__(self, base: TwistedGroupRing, phi: GroupAutomorphism | None = None, laurent: bool = False):
        if base.twist is not None:
            raise RingMismatch("polynomial rings are built over untwisted group rings")
        self.base = base
        group = base.group
        self.phi = phi if phi is not None else GroupAutomorphism.identity_of(group)
        if self.phi.group != group:
            raise RingMismatch("phi must be an automorphism of the coefficient group")
        if base.support is not None and any(self.phi(x) not in base.support for x in base.support):
            raise InvalidHom("phi does not preserve the support subgroup")
        self.laurent = laurent
        self._powers = [self.phi.power(i).image for i in range(self.phi.order)]

    def __repr__(self):
        t = "[t, t^-1]" if self.laurent else "[t]"
        return f"{self.base!r}_phi{t}"

    def same_as(self, other) -> bool:
        return self is other or (
            isinstance(other, TwistedPolyRing)
            and self.base.same_as(other.base)
            and self.phi.image == other.phi.image
            and self.laurent == other.laurent
        )

    def phi_power(self, i: int, lam: GRElement) -> GRElement:
        perm = self._powers[i % len(self._powers)]
        return self.base.map_group(lambda g: perm[g], lam)

    def element(self, coeffs) -> "PolyElement":
        """From a list ``[lam_0, lam_1, ...]`` or a dict ``degree -> lam``."""
        return self.from_pairs(coeffs.items() if hasattr(coeffs, "items") else enumerate(coeffs))

    def from_pairs(self, pairs) -> "PolyElement":
        """Sum of ``lam t^d`` over ``(d, lam)`` pairs; repeated degrees are added."""
        acc: dict[int, GRElement] = {}
        for d, lam in pairs:
            if d < 0 and not self.laurent:
                raise ShapeMismatch("negative powers of t need a Laurent ring")
            if not isinstance(lam, GRElement):
                lam = self.base.scalar(lam)
            acc[d] = acc[d] + lam if d in acc else lam
        return PolyElement(self, MappingProxyType({d: c for d, c in sorted(acc.items()) if not c.is_zero}))

    @cached_property
    def zero(self) -> "PolyElement":
        return self.element({})

    @cached_property
    def one(self) -> "PolyElement":
        return self.element({0: self.base.one})

    @cached_property
    def t(self) -> "PolyElement":
        return self.element({1: self.base.one})

    def constant(self, lam: GRElement) -> "PolyElement":
        return self.element({0: lam})

    def group_element(self, g) -> "PolyElement":
        return self.constant(self.base.monomial(g))

    def random(self, rng: random.Random, degree: int = 2, support: int = 2) -> "PolyElement":
        lo = -degree if self.laurent else 0
        return self.element({d: self.base.random(rng, support) for d in range(lo, degree + 1)})


@dataclass(frozen=True, eq=False)
class PolyElement:
    ring: TwistedPolyRing
    terms: MappingProxyType  # degree -> nonzero coefficient

    @property
    def coeffs(self) -> list[GRElement]:
        """``[lam_0, ..., lam_d]`` (polynomial rings only)."""
        if not self.terms:
            return []
        top = max(self.terms)
        return [self.terms.get(i, self.ring.base.zero) for i in range(top + 1)]

    @property
    def degree(self) -> int:
        return max(self.terms) if self.terms else -1

    def coefficient(self, d: int) -> GRElement:
        return self.terms.get(d, self.ring.base.zero)

    def _check(self, other):
        if not isinstance(other, PolyElement) or not self.ring.same_as(other.ring):
            raise RingMismatch("elements of different polynomial rings")

    def __eq__(self, other):
        if not isinstance(other, PolyElement):
            return NotImplemented
        return self.ring.same_as(other.ring) and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        self._check(other)
        return self.ring.from_pairs(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return self.ring.element({d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return poly_mul(self, other)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c!r}) t^{d}" for d, c in self.terms.items())

    @property
    def is_zero(self) -> bool:
        return not self.terms


def poly_mul(x: PolyElement, y: PolyElement) -> PolyElement:
    """``lam t^i * mu t^j = lam phi^i(mu) t^(i+j)``."""
    x._check(y)
    ring = x.ring
    acc = []
    for i, lam in x.terms.items():
        for j, mu in y.terms.items():
            acc.append((i + j, lam * ring.phi_power(i, mu)))
    return ring.from_pairs(acc)


def ev_zero(x: PolyElement) -> GRElement:
    """Put ``t = 0``."""
    if x.ring.laurent:
        raise RingMismatch("evaluation at t = 0 is defined on polynomial rings only")
    return x.coefficient(0)


# --- inclusion data and the bases alpha, beta --------------------------------------


def right_coset_reps(k: FiniteGroup, h: Subgroup) -> tuple[int, ...]:
    """Least element of each right coset ``H x``, in increasing order."""
    seen: set[int] = set()
    reps = []
    for x in range(k.order):
        if x in seen:
            continue
        reps.append(x)
        seen.update(k.op(y, x) for y in h)
    return tuple(reps)


class InclusionDatum:
    """``H <= K`` of finite index ``l`` with ``psi`` in Aut(K) restricting to ``phi`` on ``H``.

    ``coset_reps`` must satisfy ``K = H k_1 ⊔ ... ⊔ H k_l`` (right cosets, so that every element
    is uniquely ``x k_i`` with ``x`` in ``H``); they default to the least elements of the cosets.
    ``phi`` may be given as a permutation of ``H``'s elements (as indices of ``K``) or omitted.
    """

    def __init__(self, k: FiniteGroup, h: Subgroup, psi: GroupAutomorphism | None = None,
                 phi=None, coset_reps=None, coeff: CoeffRing | None = None):
        if h.parent != k:
            raise InvalidGroup("H must be a subgroup of K")
        self.k = k
        self.h = h
        self.psi = psi if psi is not None else GroupAutomorphism.identity_of(k)
        if self.psi.group != k:
            raise InvalidHom("psi must be an automorphism of K")
        if any(self.psi(x) not in h for x in h):
            raise InvalidHom("psi does not map H to itself")
        if phi is not None:
            phi_map = dict(phi) if hasattr(phi, "items") else dict(zip(h.elements, phi))
            if any(phi_map.get(x) != self.psi(x) for x in h):
                raise InvalidHom("psi restricted to H differs from phi")
        self.reps = tuple(coset_reps) if coset_reps is not None else right_coset_reps(k, h)
        self.index = k.order // len(h)
        covered = sorted(k.op(y, r) for r in self.reps for y in h)
        if len(self.reps) * len(h) != k.order or covered != list(range(k.order)):
            raise InvalidGroup("coset representatives do not hit every right coset exactly once")
        self.coeff = coeff or Integers()

    @cached_property
    def phi_image(self) -> tuple[int, ...]:
        """``phi`` extended by ``psi`` to an automorphism of ``K`` (used on ``H``-supported elements)."""
        return self.psi.image

    @cached_property
    def rk(self) -> TwistedGroupRing:
        return TwistedGroupRing(self.k, self.coeff, name=f"{self.coeff}[K]")

    @cached_property
    def rh(self) -> TwistedGroupRing:
        return TwistedGroupRing(self.k, self.coeff, support=self.h, name=f"{self.coeff}[H]")

    @cached_property
    def rk_t(self) -> TwistedPolyRing:
        return TwistedPolyRing(self.rk, self.psi)

    @cached_property
    def rh_t(self) -> TwistedPolyRing:
        return TwistedPolyRing(self.rh, self.psi)

    def _rep_translates(self, m: int) -> tuple[int, ...]:
        perm = self.psi.power(m).image
        return tuple(perm[r] for r in self.reps)

    def decompose(self, x: GRElement, reps=None) -> list[GRElement]:
        """Coordinates ``(y_i)`` in ``RH`` with ``x = sum y_i k_i`` (``reps`` overrides the ``k_i``)."""
        reps = self.reps if reps is None else reps
        k = self.k
        inv = [k.inverse(r) for r in reps]
        buckets: list[list] = [[] for _ in reps]
        for g, r in x.terms.items():
            for i, ri in enumerate(inv):
                y = k.op(g, ri)
                if y in self.h:
                    buckets[i].append((y, r))
                    break
            else:  # pragma: no cover - reps were validated
                raise AssertionError("coset decomposition failed")
        return [self.rh.element(b) for b in buckets]

    # alpha: (RH)^l -> i^* RK

    def alpha(self, ys: list[GRElement]) -> GRElement:
        if len(ys) != self.index:
            raise ShapeMismatch(f"alpha takes {self.index} coordinates")
        out = self.rk.zero
        for y, r in zip(ys, self.reps):
            out = out + to_rk(self, y) * self.rk.monomial(r)
        return out

    def alpha_inverse(self, x: GRElement) -> list[GRElement]:
        return self.decompose(x)

    # beta: (RH_phi[t])^l -> i[t]^* RK_psi[t]

    def beta(self, ys: list[PolyElement]) -> PolyElement:
        if len(ys) != self.index:
            raise ShapeMismatch(f"beta takes {self.index} coordinates")
        out = self.rk_t.zero
        for y, r in zip(ys, self.reps):
            out = out + to_rk_t(self, y) * self.rk_t.group_element(r)
        return out

    def beta_inverse(self, x: PolyElement) -> list[PolyElement]:
        """Degree by degree: ``x_m = sum_i lam_{i,m} psi^m(k_i)``."""
        coords: list[dict] = [{} for _ in self.reps]
        for m, xm in x.terms.items():
            for i, lam in enumerate(self.decompose(xm, self._rep_translates(m))):
                if not lam.is_zero:
                    coords[i][m] = lam
        return [self.rh_t.element(c) for c in coords]


def to_rk(d: InclusionDatum, y: GRElement) -> GRElement:
    """The ring inclusion ``i: RH -> RK``."""
    return d.rk.element(y.terms)


def to_rk_t(d: InclusionDatum, y: PolyElement) -> PolyElement:
    """``i[t]: RH_phi[t] -> RK_psi[t]``."""
    return d.rk_t.element({m: to_rk(d, c) for m, c in y.terms.items()})


# --- free module maps ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FreeModuleMap:
    """``R^dom -> R^cod``, ``x -> x A`` with ``A`` a ``dom x cod`` matrix of ring elements."""

    ring: Any
    dom: int
    cod: int
    entries: tuple

    def __post_init__(self):
        ents = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", ents)
        if len(ents) != self.dom or any(len(r) != self.cod for r in ents):
            raise ShapeMismatch(f"expected a {self.dom} x {self.cod} matrix")

    def __eq__(self, other):
        return (
            isinstance(other, FreeModuleMap)
            and (self.dom, self.cod) == (other.dom, other.cod)
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash(self.entries)

    def apply(self, x: list):
        zero = self.ring.zero
        out = []
        for j in range(self.cod):
            acc = zero
            for i in range(self.dom):
                acc = acc + x[i] * self.entries[i][j]
            out.append(acc)
        return out

    def then(self, other: "FreeModuleMap") -> "FreeModuleMap":
        """``other o self`` as maps, i.e. the matrix product ``A_self A_other``."""
        if self.cod != other.dom:
            raise ShapeMismatch("maps do not compose")
        return FreeModuleMap(self.ring, self.dom, other.cod, tuple(self.apply_row(r, other) for r in self.entries))

    @staticmethod
    def apply_row(row, other: "FreeModuleMap"):
        return tuple(other.apply(list(row)))

    def map_entries(self, f, ring) -> "FreeModuleMap":
        return FreeModuleMap(ring, self.dom, self.cod, tuple(tuple(f(a) for a in r) for r in self.entries))

    @classmethod
    def identity(cls, ring, n: int) -> "FreeModuleMap":
        return cls(ring, n, n, tuple(tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n)))

    @classmethod
    def random(cls, ring, rng: random.Random, dom: int, cod: int) -> "FreeModuleMap":
        return cls(ring, dom, cod, tuple(tuple(ring.random(rng) for _ in range(cod)) for _ in range(dom)))


def induction(d: InclusionDatum, p: FreeModuleMap) -> FreeModuleMap:
    """``i_*``: the same matrix with entries pushed into ``RK`` (resp. ``RK_psi[t]``)."""
    if p.ring is d.rh:
        return p.map_entries(lambda a: to_rk(d, a), d.rk)
    if p.ring is d.rh_t:
        return p.map_entries(lambda a: to_rk_t(d, a), d.rk_t)
    raise RingMismatch("induction needs a map over RH or RH_phi[t]")


def restriction(d: InclusionDatum, p: FreeModuleMap) -> FreeModuleMap:
    """``i^*`` in the bases ``alpha`` (over ``RK``) or ``beta`` (over ``RK_psi[t]``).

    Basis vector ``(j, i)`` of the restricted source is ``k_i e_j``; its image ``k_i (row j)``
    is decomposed entrywise to give row ``(j, i)``.
    """
    if p.ring is d.rk:
        unit, split, small = d.rk.monomial, d.alpha_inverse, d.rh
    elif p.ring is d.rk_t:
        unit, split, small = d.rk_t.group_element, d.beta_inverse, d.rh_t
    else:
        raise RingMismatch("restriction needs a map over RK or RK_psi[t]")
    l = d.index
    rows = []
    for j in range(p.dom):
        for r in d.reps:
            kr = unit(r)
            row = []
            for c in range(p.cod):
                row.extend(split(kr * p.entries[j][c]))
            rows.append(tuple(row))
    return FreeModuleMap(small, p.dom * l, p.cod * l, tuple(rows))


def induction_restriction_transfer(d: InclusionDatum, p: FreeModuleMap) -> FreeModuleMap:
    """``i^* i_* (p)``: a map between free modules of ``l`` times the original ranks."""
    return restriction(d, induction(d, p))


# --- T(P), eta, the semidirect product ---------------------------------------------


def ev_coords_h(d: InclusionDatum, ys: list[PolyElement]) -> list[GRElement]:
    return [ev_zero(y) for y in ys]


def natural_iso_T_check(d: InclusionDatum, h: GRElement, x: list[PolyElement]) -> bool:
    """Both routes from ``RH ⊗ i[t]^* P`` to ``(RH)^(l n)`` agree on ``h ⊗ x`` for ``P = RK_psi[t]^n``.

    Route 1: decompose ``x`` with ``beta``, evaluate at ``t = 0``, multiply by ``h``.
    Route 2: evaluate ``x`` at ``t = 0`` in ``RK``, multiply by ``i(h)``, decompose with ``alpha``.
    """
    lhs, rhs = [], []
    for xc in x:
        lhs.extend(h * c for c in ev_coords_h(d, d.beta_inverse(xc)))
        rhs.extend(d.alpha_inverse(to_rk(d, h) * ev_zero(xc)))
    return lhs == rhs


def natural_iso_T(d: InclusionDatum, n: int, rng: random.Random, samples: int = 10) -> bool:
    """The closing diagram on all ``l * n`` basis vectors ``k_i e_j`` plus random ``h ⊗ x``."""
    ok = True
    one = d.rh.one
    for j in range(n):
        for r in d.reps:
            x = [d.rk_t.group_element(r) if c == j else d.rk_t.zero for c in range(n)]
            ok &= natural_iso_T_check(d, one, x)
            ok &= natural_iso_T_check(d, one, [xc * d.rk_t.t for xc in x])
    for _ in range(samples):
        h = d.rh.random(rng)
        x = [d.rk_t.random(rng) for _ in range(n)]
        ok &= natural_iso_T_check(d, h, x)
    return ok


def natural_iso_T_naturality(d: InclusionDatum, u: FreeModuleMap) -> bool:
    """For ``u`` over ``RK_psi[t]``: evaluating the ``beta``-restriction at ``t = 0`` equals
    restricting (with ``alpha``) the evaluation of ``u``."""
    left = restriction(d, u).map_entries(ev_zero, d.rh)
    right = restriction(d, u.map_entries(ev_zero, d.rk))
    return left.entries == right.entries


def _conjugation_image(k: FiniteGroup, g: int) -> tuple[int, ...]:
    return tuple(k.conj(g, x) for x in range(k.order))


def untwisted(ring: TwistedPolyRing) -> TwistedPolyRing:
    return TwistedPolyRing(ring.base, None, ring.laurent)


def eta_inner(k_elt: int, x: PolyElement, target: TwistedPolyRing | None = None) -> PolyElement:
    """``sum lam_i t^i -> sum lam_i k^i t^i`` from ``RK_{c_k}[t]`` to ``RK[t]``."""
    ring = x.ring
    group = ring.base.group
    if ring.phi.image != _conjugation_image(group, k_elt):
        raise TwistMismatch(f"the twist is not conjugation by {group.label(k_elt)}")
    target = target or untwisted(ring)
    base = ring.base
    return target.element({i: lam * base.monomial(group.power(k_elt, i)) for i, lam in x.terms.items()})


def eta_inverse(k_elt: int, y: PolyElement, target: TwistedPolyRing) -> PolyElement:
    group = target.base.group
    if target.phi.image != _conjugation_image(group, k_elt):
        raise TwistMismatch(f"the twist is not conjugation by {group.label(k_elt)}")
    base = target.base
    return target.element({i: mu * base.monomial(group.power(k_elt, -i)) for i, mu in y.terms.items()})


def eta_choice_units(group: FiniteGroup, k_elt: int) -> list[tuple[int, int]]:
    """Other elements ``k'`` inducing the same conjugation as ``k``, each with ``z = k^-1 k'``.

    ``eta_{k'}`` differs from ``eta_k`` by ``t -> z t``; ``z`` is central.  Only recorded.
    """
    image = _conjugation_image(group, k_elt)
    inv = group.inverse(k_elt)
    return [(k2, group.mul[inv][k2]) for k2 in range(group.order)
            if k2 != k_elt and _conjugation_image(group, k2) == image]


@dataclass(frozen=True)
class SemidirectEmbedding:
    ambient: FiniteGroup
    inclusion: tuple[int, ...]
    psi: GroupAutomorphism
    t: int
    s: int

    def square_commutes(self, phi: GroupAutomorphism) -> bool:
        """``i o phi = psi o i`` on every element."""
        return all(self.inclusion[phi(x)] == self.psi(self.inclusion[x]) for x in range(phi.group.order))


def semidirect_embed(k: FiniteGroup, phi: GroupAutomorphism, cap: int | None = None) -> SemidirectEmbedding:
    """``K ⋊_phi Z/s`` with ``s`` the order of ``phi``; element ``(x, j)`` has index ``j |K| + x``."""
    cap = default_caps().semidirect_order if cap is None else cap
    s = phi.order
    n = k.order
    if n * s > cap:
        raise CapExceeded(f"|K| * s = {n * s} exceeds the cap {cap}", cap=cap)
    powers = [phi.power(j).image for j in range(s)]
    table = []
    for j1 in range(s):
        for x1 in range(n):
            row = []
            for j2 in range(s):
                for x2 in range(n):
                    row.append(((j1 + j2) % s) * n + k.mul[x1][powers[j1][x2]])
            table.append(tuple(row))
    labels = tuple(f"({k.label(x)},{j})" for j in range(s) for x in range(n))
    amb = FiniteGroup(tuple(table), labels, name=f"{k.name or 'K'} x|phi Z/{s}")
    inc = tuple(range(n))  # (x, 0) has index x
    if not is_homomorphism(k, amb, inc):
        raise AssertionError("inclusion into the semidirect product is not a homomorphism")
    t = (1 % s) * n + k.identity
    psi = GroupAutomorphism.inner(amb, t)
    return SemidirectEmbedding(amb, inc, psi, t, s)
