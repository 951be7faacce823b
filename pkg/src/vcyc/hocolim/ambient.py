"""The index categories and homotopy colimits attached to a type I group ``V`` inside ``G = V x F``.

``F`` is a finite spectator group, present only so that ``G/V`` has more than one coset.
Canonical coset representatives:

* ``gV``  is represented by ``((e, f), 0)``,
* ``gK``  is represented by ``((e, f), n)``,

where ``g = ((k, f), n)`` in ``G = (K x F) ⋊ Z``.  The filters of the ``[σ]`` and ``K``
subcategories are stated relative to these representatives.
"""
from __future__ import annotations

import random
from functools import cached_property

from ..catalog import cyclic
from ..errors import LiftMismatch, TypeMismatch
from ..finite_group import FiniteGroup, GroupAutomorphism, direct_product
from ..rings import CoeffRing, Integers, RingAction
from ..vc import SemidirectZ, VCElement
from .categories import CosetSpace, MonoidCat, MorphismFilter, TransportGroupoid
from .core import Hocolim, HocolimCoefficients

SPAN = 3


class Ambient:
    def __init__(self, v: SemidirectZ, ring: CoeffRing | None = None, action: RingAction | None = None,
                 spectator: FiniteGroup | None = None, lift: VCElement | None = None, sigma: int = 1,
                 name: str | None = None):
        if not isinstance(v, SemidirectZ):
            raise TypeMismatch("the ambient constructions need a type I group")
        if sigma not in (1, -1):
            raise LiftMismatch("the chosen generator of Z is +1 or -1")
        self.v = v
        self.k = v.k
        self.sigma = sigma
        self.action = action
        self.ring = action.ring if action is not None else (ring or Integers())
        self.spectator = spectator if spectator is not None else cyclic(2)
        self.lift = lift if lift is not None else v.element(None, sigma)
        if self.lift.owner != v or self.lift.n != sigma:
            raise LiftMismatch(f"{self.lift!r} does not project to {sigma:+d}", lift=repr(self.lift))
        self.name = name or repr(v)

        nf = self.spectator.order
        self._nf = nf
        prod = direct_product(v.k, self.spectator)
        phi = v.phi.image
        phi_g = GroupAutomorphism(prod, tuple(phi[x // nf] * nf + x % nf for x in range(prod.order)))
        self.g = SemidirectZ(prod, phi_g, name=f"{self.name} x {self.spectator.name or 'F'}")
        self.q = SemidirectZ(FiniteGroup(((0,),), ("e",), "trivial"), name="Z")
        self.lift_g = self.embed(self.lift)

    def __repr__(self):
        return f"Ambient({self.name}, {self.ring})"

    # elements

    def embed(self, x: VCElement) -> VCElement:
        """``V -> G``, ``(k, n) -> ((k, e), n)``."""
        return self.g.element(x.k * self._nf + self.spectator.identity, x.n)

    def in_v(self, h: VCElement) -> bool:
        return h.k % self._nf == self.spectator.identity

    def to_v(self, h: VCElement) -> VCElement:
        return self.v.element(h.k // self._nf, h.n)

    def q_elem(self, n: int) -> VCElement:
        return self.q.element(0, n)

    def sigma_power(self, n: int) -> VCElement:
        """``σ^n`` in ``Q = Z``."""
        return self.q_elem(n * self.sigma)

    def q_exponent(self, q: VCElement) -> int:
        """``n`` with ``q = σ^n``."""
        return q.n * self.sigma

    # filters

    def _sample_v(self, rng, lo, hi):
        return self.v.element(rng.randrange(self.k.order), self.sigma * rng.randint(lo, hi))

    @cached_property
    def v_sigma_filter(self) -> MorphismFilter:
        return MorphismFilter("V[σ]", lambda x: x.n * self.sigma >= 0, lambda rng: self._sample_v(rng, 0, SPAN))

    @cached_property
    def k_filter(self) -> MorphismFilter:
        return MorphismFilter("K", lambda x: x.n == 0, lambda rng: self._sample_v(rng, 0, 0))

    @cached_property
    def q_sigma_filter(self) -> MorphismFilter:
        return MorphismFilter("Z[σ]", lambda x: x.n * self.sigma >= 0,
                              lambda rng: self.sigma_power(rng.randint(0, SPAN)))

    def _lifted(self, f: MorphismFilter) -> MorphismFilter:
        return MorphismFilter(f.name, lambda h: f.contains(h), lambda rng: self.embed(f.sample(rng)))

    # coset spaces of G

    def _rep_v(self, g):
        return self.g.element(self.k.identity * self._nf + g.k % self._nf, 0)

    def _rep_k(self, g):
        return self.g.element(self.k.identity * self._nf + g.k % self._nf, g.n)

    @cached_property
    def mod_v(self) -> CosetSpace:
        nf = self._nf
        return CosetSpace(
            self.g, self._rep_v, self.in_v,
            lambda rng: self.g.element(self.k.identity * nf + rng.randrange(nf), 0),
            "G/V",
        )

    @cached_property
    def mod_k(self) -> CosetSpace:
        nf = self._nf
        return CosetSpace(
            self.g, self._rep_k, lambda h: self.in_v(h) and h.n == 0,
            lambda rng: self.g.element(self.k.identity * nf + rng.randrange(nf), rng.randint(-SPAN, SPAN)),
            "G/K",
        )

    # index categories

    @cached_property
    def v_hat(self):
        return MonoidCat(self.v, None, "V^")

    @cached_property
    def v_sigma_hat(self):
        return MonoidCat(self.v, self.v_sigma_filter, "V[σ]^")

    @cached_property
    def k_hat(self):
        return MonoidCat(self.v, self.k_filter, "K^")

    @cached_property
    def q_hat(self):
        return MonoidCat(self.q, None, "Z^")

    @cached_property
    def q_sigma_hat(self):
        return MonoidCat(self.q, self.q_sigma_filter, "Z[σ]^")

    @cached_property
    def gv(self):
        return TransportGroupoid(self.mod_v, None, "G(G/V)")

    @cached_property
    def gv_sigma(self):
        return TransportGroupoid(self.mod_v, self._lifted(self.v_sigma_filter), "G(G/V)[σ]")

    @cached_property
    def gv_k(self):
        return TransportGroupoid(self.mod_v, self._lifted(self.k_filter), "G(G/V)_K")

    @cached_property
    def gk(self):
        return TransportGroupoid(self.mod_k, None, "G(G/K)")

    # homotopy colimits with coefficients in free modules

    def _over(self, index):
        return Hocolim.over_matrices(index, self.ring, self.action, name=f"int_{index.name}")

    @cached_property
    def a_v(self):
        return self._over(self.v_hat)

    @cached_property
    def a_v_sigma(self):
        return self._over(self.v_sigma_hat)

    @cached_property
    def a_k(self):
        return self._over(self.k_hat)

    @cached_property
    def a_gv(self):
        return self._over(self.gv)

    @cached_property
    def a_gv_sigma(self):
        return self._over(self.gv_sigma)

    @cached_property
    def a_gv_k(self):
        return self._over(self.gv_k)

    @cached_property
    def a_gk(self):
        return self._over(self.gk)

    # B = int_K A, and homotopy colimits over Z with coefficients in B

    @cached_property
    def b(self) -> HocolimCoefficients:
        return HocolimCoefficients(self.a_k)

    def _q_act(self, q, m):
        from .functors import phi_twist
        return phi_twist(m, self, self.q_exponent(q))

    @cached_property
    def qb(self):
        return Hocolim(self.q_hat, self.b, self._q_act, name="int_Z^ B", multiplicative=self.a_k.multiplicative)

    @cached_property
    def qb_sigma(self):
        return Hocolim(self.q_sigma_hat, self.b, self._q_act, name="int_Z[σ]^ B",
                       multiplicative=self.a_k.multiplicative)

    @cached_property
    def functors(self):
        from .functors import AmbientFunctors
        return AmbientFunctors(self)

    def random_b_morphism(self, rng: random.Random, dom_rank=None, cod_rank=None):
        return self.a_k.random_morphism(
            rng,
            self.a_k.obj("*", dom_rank or rng.randint(1, 2)),
            self.a_k.obj("*", cod_rank or rng.randint(1, 2)),
        )
