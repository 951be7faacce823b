"""Infinite virtually cyclic groups in normal form.

Two constructors cover both types:

* ``SemidirectZ(k, phi)``: carrier ``K x Z`` with ``(k1, n1)(k2, n2) = (k1 phi^n1(k2), n1 + n2)``.
  The element ``(k, n)`` equals ``(k, 0) * t^n`` where ``t = (e, 1)``, so ``t k t^-1 = phi(k)``.
* ``Amalgam(a, b, k, emb_a, emb_b)``: ``A *_K B`` with both indices 2.  Elements are reduced
  alternating words of nontrivial left-coset representatives followed by an element of ``K``.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from functools import cached_property

from .config import default_caps
from .errors import InvalidGroup, InvalidHom, OwnerMismatch, TypeMismatch
from .finite_group import (
    FiniteGroup,
    GroupAutomorphism,
    Subgroup,
    all_subgroups,
    is_homomorphism,
    is_normal,
    product_subgroup,
)
from .smith import IntMatrix, cokernel

SIDE_A, SIDE_B = 0, 1


class VCType(str, enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"


class QuotientKind(str, enum.Enum):
    INFINITE_CYCLIC = "InfiniteCyclic"
    INFINITE_DIHEDRAL = "InfiniteDihedral"


class VCElement:
    """Normal form of an element; equality is normal-form equality within one owner."""

    __slots__ = ("owner", "k", "n", "letters", "_hash")

    def __init__(self, owner: "VCGroup", k: int, n: int = 0, letters: tuple = ()):
        self.owner = owner
        self.k = k
        self.n = n
        self.letters = letters
        self._hash = hash((k, n, letters))

    @property
    def normal_form(self) -> tuple:
        return (self.k, self.n, self.letters)

    def __eq__(self, other):
        if not isinstance(other, VCElement):
            return NotImplemented
        return (
            self.k == other.k
            and self.n == other.n
            and self.letters == other.letters
            and (self.owner is other.owner or self.owner == other.owner)
        )

    def __hash__(self):
        return self._hash

    def __mul__(self, other):
        return self.owner.multiply(self, other)

    def __invert__(self):
        return self.owner.inverse(self)

    def __pow__(self, n: int):
        return self.owner.power(self, n)

    def __repr__(self):
        return self.owner.format(self)

    def sort_key(self) -> tuple:
        return (len(self.letters), abs(self.n), self.n < 0, self.letters, self.k)


class VCGroup:
    """Common surface of both constructors."""

    structural_type: VCType

    def multiply(self, x: VCElement, y: VCElement) -> VCElement:
        if not (x.owner is self or x.owner == self) or not (y.owner is self or y.owner == self):
            raise OwnerMismatch("elements belong to different groups")
        return self._mul(x, y)

    def power(self, x: VCElement, n: int) -> VCElement:
        if n < 0:
            x, n = self.inverse(x), -n
        out, base = self.identity, x
        while n:
            if n & 1:
                out = self._mul(out, base)
            base = self._mul(base, base)
            n >>= 1
        return out

    def conj(self, g: VCElement, x: VCElement) -> VCElement:
        """``g x g^-1``."""
        return self._mul(self._mul(g, x), self.inverse(g))

    def commutes(self, x: VCElement, y: VCElement) -> bool:
        return self._mul(x, y) == self._mul(y, x)

    def __eq__(self, other):
        return isinstance(other, VCGroup) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


class SemidirectZ(VCGroup):
    structural_type = VCType.TYPE_I

    def __init__(self, k: FiniteGroup, phi: GroupAutomorphism | None = None, name: str | None = None):
        if phi is None:
            phi = GroupAutomorphism.identity_of(k)
        if phi.group != k:
            raise InvalidGroup("phi must be an automorphism of k")
        self.k = k
        self.phi = phi
        self.name = name
        self._phi_powers = [phi.power(i).image for i in range(phi.order)]

    @cached_property
    def key(self) -> tuple:
        return ("semidirect_z", self.k.mul, self.phi.image)

    def __repr__(self):
        return self.name or f"SemidirectZ({self.k!r}, phi={list(self.phi.image)})"

    def phi_pow(self, n: int) -> tuple[int, ...]:
        return self._phi_powers[n % len(self._phi_powers)]

    def element(self, k: int = None, n: int = 0) -> VCElement:
        if k is None:
            k = self.k.identity
        if not 0 <= k < self.k.order:
            raise InvalidGroup(f"k-index {k} out of range")
        return VCElement(self, k, n)

    @cached_property
    def identity(self) -> VCElement:
        return VCElement(self, self.k.identity, 0)

    @cached_property
    def t(self) -> VCElement:
        return VCElement(self, self.k.identity, 1)

    def _mul(self, x, y):
        return VCElement(self, self.k.mul[x.k][self.phi_pow(x.n)[y.k]], x.n + y.n)

    def inverse(self, x):
        return VCElement(self, self.phi_pow(-x.n)[self.k.inv[x.k]], -x.n)

    def generators(self) -> list[VCElement]:
        return [self.element(g) for g in self.k.generators] + [self.t]

    def finite_piece(self) -> FiniteGroup:
        return self.k

    def random_element(self, rng: random.Random, span: int = 3) -> VCElement:
        return VCElement(self, rng.randrange(self.k.order), rng.randint(-span, span))

    def q_image(self, x: VCElement) -> int:
        return x.n

    def format(self, x) -> str:
        return f"({self.k.label(x.k)}, {x.n})"


class Amalgam(VCGroup):
    structural_type = VCType.TYPE_II

    def __init__(self, a: FiniteGroup, b: FiniteGroup, k: FiniteGroup, emb_a, emb_b, name: str | None = None):
        self.a, self.b, self.k = a, b, k
        self.emb_a = tuple(int(x) for x in emb_a)
        self.emb_b = tuple(int(x) for x in emb_b)
        self.name = name
        for side, emb in ((a, self.emb_a), (b, self.emb_b)):
            if len(emb) != k.order or not is_homomorphism(k, side, emb):
                raise InvalidGroup("embeddings must be homomorphisms defined on all of k")
            if len(set(emb)) != k.order:
                raise InvalidGroup("embeddings must be injective")
            if side.order != 2 * k.order:
                raise InvalidGroup("k must have index exactly 2 in both factors")
        self.sides = (a, b)
        self.embs = (self.emb_a, self.emb_b)
        self._decomp = tuple(self._decomposition(s) for s in (SIDE_A, SIDE_B))

    def _decomposition(self, side):
        """Map each side element ``x`` to ``(r, k)`` with ``x = r * emb(k)``, ``r`` the least element of ``xK``."""
        g, emb = self.sides[side], self.embs[side]
        back = {y: i for i, y in enumerate(emb)}
        out = {}
        for x in range(g.order):
            coset = [g.mul[x][y] for y in emb]
            r = min(coset)
            out[x] = (r, back[g.mul[g.inv[r]][x]])
        return out

    @cached_property
    def key(self) -> tuple:
        return ("amalgam", self.a.mul, self.b.mul, self.k.mul, self.emb_a, self.emb_b)

    def __repr__(self):
        return self.name or f"Amalgam({self.a!r} *_{self.k!r} {self.b!r})"

    @cached_property
    def identity(self) -> VCElement:
        return VCElement(self, self.k.identity)

    def _times_side(self, letters, k, side, s):
        g = self.sides[side]
        t = g.mul[self.embs[side][k]][s]
        if letters and letters[-1][0] == side:
            t = g.mul[letters[-1][1]][t]
            letters = letters[:-1]
        r, k2 = self._decomp[side][t]
        if r != g.identity:
            letters = letters + ((side, r),)
        return letters, k2

    def _mul(self, x, y):
        letters, k = x.letters, x.k
        for side, r in y.letters:
            letters, k = self._times_side(letters, k, side, r)
        return VCElement(self, self.k.mul[k][y.k], 0, letters)

    def inverse(self, x):
        letters, k = (), self.k.inv[x.k]
        for side, r in reversed(x.letters):
            letters, k = self._times_side(letters, k, side, self.sides[side].inv[r])
        return VCElement(self, k, 0, letters)

    def from_side(self, side: int, s: int) -> VCElement:
        letters, k = self._times_side((), self.k.identity, side, s)
        return VCElement(self, k, 0, letters)

    def from_k(self, k: int) -> VCElement:
        return VCElement(self, k)

    def side_generators(self) -> list[tuple[int, int]]:
        return [(SIDE_A, g) for g in self.a.generators] + [(SIDE_B, g) for g in self.b.generators]

    def generators(self) -> list[VCElement]:
        return [self.from_side(s, g) for s, g in self.side_generators()]

    def finite_piece(self) -> FiniteGroup:
        return self.k

    def random_element(self, rng: random.Random, span: int = 4) -> VCElement:
        length = rng.randint(0, span)
        side = rng.randrange(2)
        letters = []
        for _ in range(length):
            g = self.sides[side]
            nontrivial = sorted({r for r, _ in self._decomp[side].values()} - {g.identity})
            letters.append((side, rng.choice(nontrivial)))
            side = 1 - side
        return VCElement(self, rng.randrange(self.k.order), 0, tuple(letters))

    def q_image(self, x: VCElement) -> tuple[int, int]:
        """Image in ``D_inf`` as ``(n, f)``: the map ``m -> (-1)^f m + n``; side a -> (0,1), side b -> (1,1)."""
        n, f = 0, 0
        for side, _ in x.letters:
            n, f = dinf_mul((n, f), (0, 1) if side == SIDE_A else (1, 1))
        return n, f

    def format(self, x) -> str:
        word = " ".join(("a:" if s == SIDE_A else "b:") + self.sides[s].label(r) for s, r in x.letters)
        return f"[{word}{' | ' if word else ''}{self.k.label(x.k)}]"


def dinf_mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    return (x[0] + (-1) ** x[1] * y[0], (x[1] + y[1]) % 2)


# --- structure theory -----------------------------------------------------


def abelianization(v: VCGroup) -> tuple[int, list[int]]:
    """``(free rank, torsion invariant factors)`` of ``H_1(v)`` via Smith normal form."""
    rows = []
    if isinstance(v, SemidirectZ):
        k = v.k
        n = k.order
        cols = n + 1  # x_0..x_{n-1}, t
        for a in range(n):
            for b in range(n):
                r = [0] * cols
                r[a] += 1
                r[b] += 1
                r[k.mul[a][b]] -= 1
                rows.append(r)
        for a in range(n):
            r = [0] * cols
            r[a] += 1
            r[v.phi(a)] -= 1
            rows.append(r)
    else:
        na, nb = v.a.order, v.b.order
        cols = na + nb
        for off, g in ((0, v.a), (na, v.b)):
            for x in range(g.order):
                for y in range(g.order):
                    r = [0] * cols
                    r[off + x] += 1
                    r[off + y] += 1
                    r[off + g.mul[x][y]] -= 1
                    rows.append(r)
        for i in range(v.k.order):
            r = [0] * cols
            r[v.emb_a[i]] += 1
            r[na + v.emb_b[i]] -= 1
            rows.append(r)
    return cokernel(IntMatrix.from_rows(rows, cols))


def classify_type(v: VCGroup) -> VCType:
    rank, _ = abelianization(v)
    return VCType.TYPE_I if rank >= 1 else VCType.TYPE_II


def _candidate_normal_subgroups(v: VCGroup, cap: int | None) -> list[Subgroup]:
    k = v.finite_piece()
    out = []
    for s in all_subgroups(k, cap):
        if isinstance(v, SemidirectZ):
            ok = is_normal(s) and all(v.phi(x) in s for x in s)
        else:
            ok = all(
                is_normal(Subgroup(side, tuple(emb[x] for x in s)))
                for side, emb in ((v.a, v.emb_a), (v.b, v.emb_b))
            )
        if ok:
            out.append(s)
    return out


def finite_normal_subgroups(v: VCGroup, cap: int | None = None) -> list[Subgroup]:
    """All finite normal subgroups of ``v``, as subgroups of its finite piece."""
    return _candidate_normal_subgroups(v, cap)


def maximal_finite_normal(v: VCGroup, cap: int | None = None) -> Subgroup:
    """``K_V``: the join of all finite normal subgroups, which is one of them."""
    cap = default_caps().subgroup_order if cap is None else cap
    candidates = _candidate_normal_subgroups(v, cap)
    join = candidates[0]
    for s in candidates[1:]:
        join = product_subgroup(join, s)
    if join not in candidates:
        raise AssertionError("join of finite normal subgroups escaped the candidate list")
    return join


@dataclass(frozen=True)
class QuotientData:
    kind: QuotientKind
    kv: Subgroup
    group: VCGroup

    def project(self, x: VCElement):
        """``p_V``: an int for ``Z``, ``(n, flip)`` for ``D_inf``."""
        return self.group.q_image(x)

    def is_identity(self, q) -> bool:
        return q == 0 or q == (0, 0)


def quotient_data(v: VCGroup, cap: int | None = None) -> QuotientData:
    kind = QuotientKind.INFINITE_CYCLIC if classify_type(v) is VCType.TYPE_I else QuotientKind.INFINITE_DIHEDRAL
    return QuotientData(kind, maximal_finite_normal(v, cap), v)


def center_is_infinite(v: VCGroup) -> bool:
    gens = v.generators()
    if isinstance(v, SemidirectZ):
        bound = v.phi.order * v.k.order
        for n in range(1, bound + 1):
            for k in range(v.k.order):
                z = v.element(k, n)
                if all(v.commutes(z, g) for g in gens):
                    return True
        return False
    found = _amalgam_central_search(v, 2 * v.a.order * v.b.order, gens)
    assert not found, "type II group with infinite center contradicts the classification"
    return found


def _amalgam_central_search(v: Amalgam, max_len: int, gens) -> bool:
    for start in (SIDE_A, SIDE_B):
        reps = []
        for side in (start, 1 - start):
            g = v.sides[side]
            reps.append(sorted({r for r, _ in v._decomp[side].values()} - {g.identity}))
        # index 2: exactly one nontrivial representative per side
        for length in range(1, max_len + 1):
            letters = tuple(((start + i) % 2, reps[i % 2][0]) for i in range(length))
            for k in range(v.k.order):
                z = VCElement(v, k, 0, letters)
                if all(v.commutes(z, g) for g in gens):
                    return True
    return False


# --- homomorphisms ----------------------------------------------------------


def _extend_from_finite(src: FiniteGroup, gens, imgs, target: VCGroup) -> dict[int, VCElement]:
    images = {src.identity: target.identity}
    frontier = [src.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, im in zip(gens, imgs):
                y = src.mul[x][g]
                z = target.multiply(images[x], im)
                if y in images:
                    if images[y] != z:
                        raise InvalidHom("generator images violate a relation of the finite piece")
                else:
                    images[y] = z
                    nxt.append(y)
        frontier = nxt
    for a in range(src.order):
        for b in range(src.order):
            if images[src.mul[a][b]] != target.multiply(images[a], images[b]):
                raise InvalidHom("restriction to the finite piece is not a homomorphism")
    return images


class VCHom:
    """A homomorphism given by images of the source's canonical generators.

    ``SemidirectZ`` sources: images of ``(g, 0)`` for ``g`` in ``k.generators`` then of ``t``.
    ``Amalgam`` sources: images of the side-a generators then the side-b generators.
    """

    def __init__(self, source: VCGroup, target: VCGroup, images):
        self.source, self.target = source, target
        self.images = tuple(images)
        for im in self.images:
            if not (im.owner is target or im.owner == target):
                raise OwnerMismatch("generator image does not live in the target")
        if isinstance(source, SemidirectZ):
            k = source.k
            gens = k.generators
            if len(self.images) != len(gens) + 1:
                raise InvalidHom(f"expected {len(gens) + 1} generator images")
            self._on_k = _extend_from_finite(k, gens, self.images[:-1], target)
            t_img = self.images[-1]
            t_inv = target.inverse(t_img)
            for x in range(k.order):
                lhs = target.multiply(target.multiply(t_img, self._on_k[x]), t_inv)
                if lhs != self._on_k[source.phi(x)]:
                    raise InvalidHom("image of t does not conjugate like phi")
        else:
            na = len(source.a.generators)
            if len(self.images) != na + len(source.b.generators):
                raise InvalidHom("wrong number of generator images")
            self._on_side = (
                _extend_from_finite(source.a, source.a.generators, self.images[:na], target),
                _extend_from_finite(source.b, source.b.generators, self.images[na:], target),
            )
            for i in range(source.k.order):
                if self._on_side[0][source.emb_a[i]] != self._on_side[1][source.emb_b[i]]:
                    raise InvalidHom("the two copies of k are sent to different places")

    def __call__(self, x: VCElement) -> VCElement:
        tgt = self.target
        if isinstance(self.source, SemidirectZ):
            return tgt.multiply(self._on_k[x.k], tgt.power(self.images[-1], x.n))
        out = tgt.identity
        for side, r in x.letters:
            out = tgt.multiply(out, self._on_side[side][r])
        return tgt.multiply(out, self._on_side[0][self.source.emb_a[x.k]])

    def then(self, other: "VCHom") -> "VCHom":
        """``other ∘ self``."""
        return VCHom(self.source, other.target, [other(im) for im in self.images])

    def compose(self, other: "VCHom") -> "VCHom":
        """``self ∘ other``."""
        return other.then(self)

    def __repr__(self):
        return f"VCHom({self.source!r} -> {self.target!r}, {list(self.images)})"

    @classmethod
    def identity(cls, v: VCGroup) -> "VCHom":
        return cls(v, v, v.generators())

    @classmethod
    def conjugation(cls, v: VCGroup, g: VCElement) -> "VCHom":
        """``x -> g^-1 x g`` as an automorphism of ``v``."""
        gi = v.inverse(g)
        return cls(v, v, [v.multiply(v.multiply(gi, x), g) for x in v.generators()])


@dataclass(frozen=True)
class QMap:
    multiplier: int
    sign: int


@dataclass(frozen=True)
class Degenerate:
    reason: str = "finite image"


def induced_q_map(f: VCHom) -> QMap | Degenerate:
    """``phi_Q`` on reference generators: ``p_W(f(t_V)) = sign * multiplier``."""
    if not isinstance(f.source, SemidirectZ) or not isinstance(f.target, SemidirectZ):
        raise TypeMismatch("induced_q_map needs type I source and target")
    m = f.target.q_image(f(f.source.t))
    if m == 0:
        return Degenerate()
    return QMap(abs(m), 1 if m > 0 else -1)


# --- gen(f) for a G-map G/V -> G/W ----------------------------------------------------


def _translation(g: VCGroup, x: VCElement) -> int | None:
    """Exponent of ``x`` along the infinite cyclic direction, ``None`` for a reflection of ``D_inf``."""
    if isinstance(g, SemidirectZ):
        return g.q_image(x)
    n, flip = g.q_image(x)
    return None if flip else n


def subgroup_preimage(incl: VCHom, y: VCElement) -> VCElement | None:
    """The ``w`` with ``incl(w) = y`` for an injective ``incl: W -> G``, or ``None``."""
    w, g = incl.source, incl.target
    if not isinstance(w, SemidirectZ):
        raise TypeMismatch("subgroup_preimage needs a type I subgroup")
    step = _translation(g, incl(w.t))
    target = _translation(g, y)
    if not step or target is None or target % step:
        return None
    n = target // step
    rest = g.multiply(y, g.power(incl(w.t), -n))
    for k in range(w.k.order):
        if incl(w.element(k, 0)) == rest:
            return w.element(k, n)
    return None


def conjugation_into(v_incl: VCHom, w_incl: VCHom, g: VCElement) -> VCHom:
    """``c(g): V -> W``, ``v -> g^-1 v g``, for subgroups ``V, W`` of a common ambient group."""
    amb = v_incl.target
    if w_incl.target != amb:
        raise OwnerMismatch("V and W must sit in the same ambient group")
    gi = amb.inverse(g)
    images = []
    for x in v_incl.source.generators():
        y = amb.multiply(amb.multiply(gi, v_incl(x)), g)
        pre = subgroup_preimage(w_incl, y)
        if pre is None:
            raise InvalidHom("g^-1 V g is not contained in W")
        images.append(pre)
    return VCHom(v_incl.source, w_incl.source, images)


def gen_map(v_incl: VCHom, w_incl: VCHom, g: VCElement, sigma: int = 1) -> int:
    """The generator of ``Q_W`` of which ``Q_c(g)(sigma)`` is a positive power.

    Generators of ``Q_V = Z`` and ``Q_W = Z`` are written as ``+1`` / ``-1`` relative to the
    reference generators ``(e, 1)``.  ``g`` is any element with ``f(eV) = gW``.
    """
    if sigma not in (1, -1):
        raise InvalidHom("a generator of Z is +1 or -1")
    q = induced_q_map(conjugation_into(v_incl, w_incl, g))
    if isinstance(q, Degenerate):
        raise InvalidHom("c(g) has finite image")
    return sigma * q.sign
