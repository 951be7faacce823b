"""Property batteries shared by the CLI and the acceptance suite.

Each ``*_checks`` function returns ``(name, thunk)`` pairs; a thunk returns an ``Outcome``.
Samplers are seeded from strings so that every check draws the same inputs whatever runs
before it.
"""
from __future__ import annotations

import itertools
import random
from functools import reduce
from typing import Callable, Iterable

from .catalog import DISTINCT_NAMES, catalog_group
from .config import Caps, default_caps
from .corpus import CorpusEntry
from .errors import CapExceeded
from .finite_group import GroupAutomorphism, Subgroup, all_subgroups, automorphisms
from .hocolim import Ambient, Hocolim, HocolimObject, ev_sigma, inclusion, psi_inverse, psi_iso, to_group_ring_matrix
from .hocolim.diagrams import DIAGRAMS, cell_rng, diagram_cells, run_cell
from .orientation import Orientation, OrientationDiagram, brute_force_solve, even_subgroup, solve
from .report import Outcome
from .twisted import (
    FreeModuleMap,
    InclusionDatum,
    TwistedGroupRing,
    TwistedPolyRing,
    ev_zero,
    eta_choice_units,
    eta_inner,
    eta_inverse,
    induction_restriction_transfer,
    natural_iso_T,
    natural_iso_T_naturality,
    to_rk_t,
    untwisted,
)
from .vc import (
    SIDE_A,
    SIDE_B,
    Amalgam,
    SemidirectZ,
    VCGroup,
    VCHom,
    VCType,
    abelianization,
    center_is_infinite,
    classify_type,
    gen_map,
    maximal_finite_normal,
    quotient_data,
)

Check = tuple[str, Callable[[], Outcome]]


def seeded(seed: int, *tags) -> random.Random:
    return random.Random(":".join(str(t) for t in (seed, *tags)))


def _first_failure(samples: Iterable, test) -> Outcome:
    """Run ``test(x)`` (returning ``None`` or a counterexample) over ``samples``."""
    n = 0
    for x in samples:
        n += 1
        ce = test(x)
        if ce is not None:
            return Outcome(False, n, ce)
    return Outcome(True, n)


# --- virtually cyclic structure ----------------------------------------------------------


def type_verdicts(v: VCGroup) -> dict:
    rank, torsion = abelianization(v)
    return {
        "classify_type": classify_type(v).value,
        "abelianization_rank": rank,
        "torsion": torsion,
        "center_is_infinite": center_is_infinite(v),
    }


def type_consistency(entry: CorpusEntry) -> Outcome:
    """The constructor, the rank of H_1 and the center give the same type."""
    d = type_verdicts(entry.group)
    type_i = entry.expected_type is VCType.TYPE_I
    ok = (d["classify_type"] == entry.expected_type.value
          and (d["abelianization_rank"] >= 1) == type_i
          and d["center_is_infinite"] == type_i)
    return Outcome(ok, 1, None if ok else d, d)


def _finite_subgroups_as_elements(v: VCGroup, cap: int):
    """Candidate finite subgroups for the brute-force oracle, as sets of ``v``-elements.

    ``K ⋊ Z``: subgroups of ``K``.  Amalgams: subgroups of both factors (normal finite
    subgroups must turn out to lie in the common piece, which the oracle does not assume).
    """
    if isinstance(v, SemidirectZ):
        for s in all_subgroups(v.k, cap):
            yield frozenset(v.element(x, 0) for x in s)
        return
    for side in (SIDE_A, SIDE_B):
        for s in all_subgroups(v.sides[side], cap):
            yield frozenset(v.from_side(side, x) for x in s)


def brute_force_finite_normal(v: VCGroup, cap: int | None = None) -> list[frozenset]:
    cap = default_caps().subgroup_order if cap is None else cap
    conj = [g for x in v.generators() for g in (x, v.inverse(x))]
    found = set()
    for s in _finite_subgroups_as_elements(v, cap):
        if all(v.conj(g, x) in s for g in conj for x in s):
            found.add(s)
    return sorted(found, key=lambda s: (len(s), sorted(x.sort_key() for x in s)))


def _kv_elements(v: VCGroup, kv: Subgroup) -> frozenset:
    if isinstance(v, SemidirectZ):
        return frozenset(v.element(x, 0) for x in kv)
    return frozenset(v.from_k(x) for x in kv)


def maximal_normal_oracle(v: VCGroup, cap: int | None = None) -> Outcome:
    """``K_V`` contains every brute-force finite normal subgroup and their pairwise products."""
    kv = _kv_elements(v, maximal_finite_normal(v, cap))
    normals = brute_force_finite_normal(v, cap)
    for s in normals:
        if not s <= kv:
            return Outcome(False, len(normals), {"not_contained": sorted(v.format(x) for x in s)})
    for s1, s2 in itertools.combinations(normals, 2):
        prod = {v.multiply(x, y) for x in s1 for y in s2}
        if not prod <= kv:
            return Outcome(False, len(normals), {"product_escapes": [len(s1), len(s2)]})
    if kv not in normals:
        return Outcome(False, len(normals), {"kv_not_normal": len(kv)})
    return Outcome(True, len(normals), details={"finite_normal_subgroups": len(normals), "kv_order": len(kv)})


def projection_kernel(v: VCGroup) -> Outcome:
    """The structural projection onto ``Z`` or ``D_inf`` has kernel exactly ``K_V``."""
    qd = quotient_data(v)
    piece = v.finite_piece()
    kv = _kv_elements(v, qd.kv)
    if len(kv) != piece.order:
        return Outcome(False, 1, {"kv_order": len(kv), "finite_piece_order": piece.order})
    if any(not qd.is_identity(qd.project(x)) for x in kv):
        return Outcome(False, 1, {"kernel": "an element of K_V projects nontrivially"})
    outside = [g for g in v.generators() if g not in kv]
    if any(qd.is_identity(qd.project(g)) for g in outside):
        return Outcome(False, 1, {"kernel": "a generator outside K_V projects trivially"})
    return Outcome(True, 1, details={"quotient": qd.kind.value})


def _relator(v: VCGroup, rng: random.Random) -> list:
    """A short word equal to the identity, built from the defining relations."""
    if isinstance(v, SemidirectZ):
        k = v.k
        x, y = rng.randrange(k.order), rng.randrange(k.order)
        if rng.random() < 0.5:
            return [v.element(x, 0), v.element(y, 0), v.element(k.inv[k.mul[x][y]], 0)]
        return [v.t, v.element(x, 0), v.element(k.identity, -1), v.element(k.inv[v.phi(x)], 0)]
    choice = rng.randrange(3)
    if choice == 2:
        z = rng.randrange(v.k.order)
        return [v.from_side(SIDE_A, v.emb_a[z]), v.from_side(SIDE_B, v.b.inv[v.emb_b[z]])]
    side = v.sides[choice]
    x, y = rng.randrange(side.order), rng.randrange(side.order)
    return [v.from_side(choice, x), v.from_side(choice, y), v.from_side(choice, side.inv[side.mul[x][y]])]


def normal_form_canonicity(v: VCGroup, samples: int, rng: random.Random) -> Outcome:
    """Words that differ by an inserted relator, or by bracketing, have the same normal form."""
    gens = [g for x in v.generators() for g in (x, v.inverse(x))]

    def sample():
        for _ in range(samples):
            word = [rng.choice(gens) for _ in range(rng.randint(0, 8))]
            pos = rng.randint(0, len(word))
            yield word, word[:pos] + _relator(v, rng) + word[pos:]

    def test(pair):
        word, longer = pair
        a = reduce(v.multiply, word, v.identity)
        b = reduce(v.multiply, longer, v.identity)
        c = reduce(lambda acc, g: v.multiply(g, acc), reversed(longer), v.identity)
        if a == b == c:
            return None
        return {"word": [v.format(g) for g in longer], "forms": [v.format(a), v.format(b), v.format(c)]}

    return _first_failure(sample(), test)


def classify_checks(entries: list[CorpusEntry]) -> list[Check]:
    return [(f"classify: {e.name}", lambda e=e: type_consistency(e)) for e in entries]


def structure_checks(entries: list[CorpusEntry], samples: int, seed: int, caps: Caps | None = None) -> list[Check]:
    caps = caps or default_caps()
    out: list[Check] = []
    for e in entries:
        v = e.group
        out += [
            (f"{e.name}: type equivalences", lambda e=e: type_consistency(e)),
            (f"{e.name}: K_V contains every finite normal subgroup",
             lambda v=v: maximal_normal_oracle(v, caps.subgroup_order)),
            (f"{e.name}: kernel of the projection is K_V", lambda v=v: projection_kernel(v)),
            (f"{e.name}: normal forms are canonical",
             lambda v=v, n=e.name: normal_form_canonicity(v, samples, seeded(seed, "nf", n))),
        ]
    return out


# --- orientation -------------------------------------------------------------------------


def orientation_checks(d: OrientationDiagram, caps: Caps | None = None) -> tuple[list[Check], dict]:
    """Certificate validity and agreement with the exhaustive oracle; also returns the verdict."""
    caps = caps or default_caps()
    result = solve(d)
    if isinstance(result, Orientation):
        verdict = {"orientable": True, "assignment": dict(sorted(result.assignment.items()))}
    else:
        verdict = {
            "orientable": False,
            "witness": [{"from": e.source, "to": e.target, "sign": e.sign} for e in result.witness],
        }

    def certificate():
        if isinstance(result, Orientation):
            ok = result.satisfies(d)
        else:
            ok = result.is_cycle() and result.sign_product() == -1
        return Outcome(ok, 1, None if ok else verdict)

    def oracle():
        if len(d.nodes) > caps.brute_force_nodes:
            raise CapExceeded(f"{len(d.nodes)} nodes exceed the brute-force cap {caps.brute_force_nodes}",
                              cap=caps.brute_force_nodes)
        other = brute_force_solve(d, caps.brute_force_nodes)
        ok = other.orientable == result.orientable
        return Outcome(ok, 2 ** len(d.nodes), None if ok else {"solver": result.orientable,
                                                               "brute_force": other.orientable})

    return [("certificate is valid", certificate), ("agrees with the 2^n oracle", oracle)], verdict


def random_sign_diagram(rng: random.Random, max_nodes: int = 10) -> OrientationDiagram:
    n = rng.randint(1, max_nodes)
    nodes = [f"v{i}" for i in range(n)]
    edges = []
    for _ in range(rng.randint(0, min(15, 2 * n))):
        edges.append((rng.choice(nodes), rng.choice(nodes), rng.choice((1, -1))))
    return OrientationDiagram.from_signs(nodes, edges)


def orientation_oracle(samples: int, seed: int, max_nodes: int = 10) -> Outcome:
    rng = seeded(seed, "orientation")

    def test(d):
        a, b = solve(d), brute_force_solve(d)
        if a.orientable != b.orientable:
            return {"nodes": list(d.nodes), "edges": [(e.source, e.target, e.sign) for e in d.edges]}
        if isinstance(a, Orientation) and not a.satisfies(d):
            return {"invalid_orientation": a.assignment}
        if not isinstance(a, Orientation) and not (a.is_cycle() and a.sign_product() == -1):
            return {"invalid_witness": [(e.source, e.target, e.sign) for e in a.witness]}
        return None

    return _first_failure((random_sign_diagram(rng, max_nodes) for _ in range(samples)), test)


# --- gen(f) --------------------------------------------------------------------------------

_GEN_FINITE = ("trivial", "Z/2", "Z/3", "Z/4", "Z/2xZ/2", "S3", "Z/5", "D_4", "Q8")
_GEN_AMALGAMS = (("Z/2", "Z/2", "trivial"), ("Z/4", "Z/4", "Z/2"), ("S3", "S3", "Z/3"))


def random_gen_triple(rng: random.Random):
    """``(v_incl, w_incl, g, resample)``: subgroups ``V, W`` of an ambient group, ``g`` with
    ``g^-1 V g <= W``, and a sampler of elements of ``W`` (inside the ambient).

    Two families: ``V = K ⋊_{c_k0 phi^m} Z`` inside ``W = K ⋊_phi Z`` via ``t -> (k0, m)``,
    and ``V = W`` the even subgroup of an amalgam (so ``g`` may be a reflection).
    """
    from .corpus import index_two_embedding

    if rng.random() < 0.7:
        k = catalog_group(rng.choice(_GEN_FINITE))
        phi = rng.choice(automorphisms(k))
        w = SemidirectZ(k, phi)
        k0 = rng.randrange(k.order)
        m = rng.choice((-3, -2, -1, 1, 2, 3))
        psi = GroupAutomorphism(k, tuple(k.conj(k0, phi.power(m)(x)) for x in range(k.order)))
        v = SemidirectZ(k, psi)
        v_incl = VCHom(v, w, [w.element(x, 0) for x in k.generators] + [w.element(k0, m)])
        w_incl = VCHom.identity(w)
        return v_incl, w_incl, w.random_element(rng), lambda r: w.random_element(r)
    a, b, kname = rng.choice(_GEN_AMALGAMS)
    ka, kb, kk = catalog_group(a), catalog_group(b), catalog_group(kname)
    amb = Amalgam(ka, kb, kk, index_two_embedding(kk, ka), index_two_embedding(kk, kb))
    w, t, _ = even_subgroup(amb)
    incl = VCHom(w, amb, [amb.from_k(x) for x in w.k.generators] + [t])
    return incl, incl, amb.random_element(rng), lambda r: incl(w.random_element(r))


def gen_well_definedness(samples: int, seed: int, alternatives: int = 5) -> Outcome:
    """Replacing ``g`` by ``g w`` (``w`` in ``W``) never changes ``gen(f)``."""
    rng = seeded(seed, "gen")

    def test(_):
        v_incl, w_incl, g, resample = random_gen_triple(rng)
        amb = v_incl.target
        sigma = rng.choice((1, -1))
        base = gen_map(v_incl, w_incl, g, sigma)
        for _ in range(alternatives):
            g2 = amb.multiply(g, resample(rng))
            other = gen_map(v_incl, w_incl, g2, sigma)
            if other != base:
                return {"ambient": repr(amb), "g": amb.format(g), "g_w": amb.format(g2),
                        "signs": [base, other]}
        return None

    return _first_failure(range(samples), test)


# --- homotopy colimits ---------------------------------------------------------------------


def associativity(cat: Hocolim, samples: int, rng: random.Random) -> Outcome:
    def sample():
        for _ in range(samples):
            a, b, c, d = (cat.random_object(rng) for _ in range(4))
            yield (cat.random_morphism(rng, a, b), cat.random_morphism(rng, b, c), cat.random_morphism(rng, c, d))

    def test(triple):
        f, g, h = triple
        lhs = cat.compose(h, cat.compose(g, f))
        rhs = cat.compose(cat.compose(h, g), f)
        return None if lhs == rhs else {"f": repr(f), "g": repr(g), "h": repr(h),
                                        "left": repr(lhs), "right": repr(rhs)}

    return _first_failure(sample(), test)


def retraction(small: Hocolim, big: Hocolim, samples: int, rng: random.Random) -> Outcome:
    """``ev o incl = id`` on morphisms of the kernel part."""

    def test(m):
        back = ev_sigma(inclusion(m, big), small)
        return None if back == m else {"input": repr(m), "output": repr(back)}

    return _first_failure((small.random_morphism(rng) for _ in range(samples)), test)


def retraction_pairs(amb: Ambient) -> list[tuple[str, Hocolim, Hocolim]]:
    return [
        ("ev(G/V)[σ]_K o incl = id", amb.a_gv_k, amb.a_gv_sigma),
        ("ev_V[σ] o incl = id", amb.a_k, amb.a_v_sigma),
    ]


def b_retraction(amb: Ambient, samples: int, rng: random.Random) -> Outcome:
    """``ev_B[σ] o i_B[σ] = id`` on ``B``."""
    from .hocolim.diagrams import i_b

    def test(u):
        back = ev_sigma(i_b(amb, u, sigma_part=True), amb.a_k)
        return None if back == u else {"input": repr(u), "output": repr(back)}

    return _first_failure((amb.random_b_morphism(rng) for _ in range(samples)), test)


def psi_round_trip(amb: Ambient, samples: int, rng: random.Random) -> Outcome:
    def sample():
        for _ in range(samples):
            yield amb.qb.random_morphism(rng), amb.a_v.random_morphism(rng)

    def test(pair):
        m, x = pair
        if psi_inverse(psi_iso(m, amb), amb) != m:
            return {"direction": "psi^-1 psi", "input": repr(m)}
        if psi_iso(psi_inverse(x, amb), amb) != x:
            return {"direction": "psi psi^-1", "input": repr(x)}
        return None

    return _first_failure(sample(), test)


def psi_bijectivity(amb: Ambient, max_support: int = 3, max_exponent: int = 3) -> Outcome:
    """Ψ restricts to a bijection between the boxes of rank-1 morphisms with unit coefficients,
    at most ``max_support`` terms, and exponents ``|n| <= max_exponent``, on both sides."""
    v = amb.v
    one = amb.a_k.coeff.identity(1)
    pairs = [(n, k) for n in range(-max_exponent, max_exponent + 1) for k in range(v.k.order)]
    star = HocolimObject("*", 1)
    lift_pow = {n: v.power(amb.lift, n * amb.sigma) for n in range(-max_exponent, max_exponent + 1)}
    # keys of int_V A: lift^m * k for m = q-exponent; this is the same box on both sides
    box_v, box_q = set(), set()
    for size in range(max_support + 1):
        for chosen in itertools.combinations(pairs, size):
            box_v.add(amb.a_v.morphism(star, star, [(v.multiply(lift_pow[n], v.element(k, 0)), one)
                                                    for n, k in chosen]))
            by_n: dict[int, list] = {}
            for n, k in chosen:
                by_n.setdefault(n, []).append((v.element(k, 0), one))
            box_q.add(amb.qb.morphism(star, star, [
                (amb.sigma_power(n), amb.a_k.morphism(star, star, ks)) for n, ks in by_n.items()
            ]))
    images = set()
    for m in box_q:
        x = psi_iso(m, amb)
        if x not in box_v:
            return Outcome(False, len(box_q), {"leaves_box": repr(m)})
        if psi_inverse(x, amb) != m:
            return Outcome(False, len(box_q), {"round_trip": repr(m)})
        images.add(x)
    if images != box_v:
        return Outcome(False, len(box_q), {"missed": len(box_v - images)})
    return Outcome(True, len(box_q) + len(box_v), details={"box_size": len(box_v)})


def group_ring_oracle(cat: Hocolim, samples: int, rng: random.Random) -> Outcome:
    """Compose-then-convert equals convert-then-multiply in the twisted group ring."""

    def sample():
        for _ in range(samples):
            f = cat.random_morphism(rng)
            yield f, cat.random_morphism(rng, f.cod)

    def test(pair):
        f, g = pair
        gr, a = to_group_ring_matrix(f)
        _, b = to_group_ring_matrix(g)
        _, c = to_group_ring_matrix(cat.compose(g, f))
        prod = [[reduce(lambda acc, l: acc + b[i][l] * a[l][j], range(len(a)), gr.zero)
                 for j in range(len(a[0]))] for i in range(len(b))]
        return None if prod == c else {"f": repr(f), "g": repr(g)}

    return _first_failure(sample(), test)


def diagram_checks(amb: Ambient, names: Iterable[str], samples: int, seed: int) -> list[Check]:
    out: list[Check] = []
    for name in names:
        for i, cell in enumerate(diagram_cells(name, amb)):
            def thunk(cell=cell, name=name, i=i):
                rec = run_cell(cell, samples, cell_rng(seed, name, i))
                return Outcome(rec["pass"], samples, rec.get("counterexample"))
            out.append((f"{amb.name} | {name} | {cell.name}", thunk))
    return out


def hocolim_law_checks(amb: Ambient, samples: int, seed: int) -> list[Check]:
    tag = amb.name
    out: list[Check] = [
        (f"{tag} | {name}", lambda s=small, b=big, n=name: retraction(s, b, samples, seeded(seed, tag, n)))
        for name, small, big in retraction_pairs(amb)
    ]
    for label, cat in (("V[σ]", amb.a_v_sigma), ("(G/V)[σ]", amb.a_gv_sigma)):
        out.append((f"{tag} | composition in {label} is associative",
                    lambda c=cat, n=label: associativity(c, samples, seeded(seed, tag, "assoc", n))))
    out.append((f"{tag} | ev_B[σ] o i_B[σ] = id", lambda: b_retraction(amb, samples, seeded(seed, tag, "b"))))
    out.append((f"{tag} | Ψ round trip", lambda: psi_round_trip(amb, samples, seeded(seed, tag, "psi"))))
    return out


def all_diagram_names() -> tuple[str, ...]:
    return DIAGRAMS


# --- twisted rings ----------------------------------------------------------------------


def beta_round_trip(d: InclusionDatum, samples: int, rng: random.Random) -> Outcome:
    def sample():
        for _ in range(samples):
            yield [d.rh_t.random(rng) for _ in range(d.index)], d.rk_t.random(rng)

    def test(pair):
        ys, x = pair
        if d.beta_inverse(d.beta(ys)) != ys:
            return {"direction": "beta^-1 beta", "input": repr(ys)}
        if d.beta(d.beta_inverse(x)) != x:
            return {"direction": "beta beta^-1", "input": repr(x)}
        return None

    return _first_failure(sample(), test)


def alpha_round_trip(d: InclusionDatum, samples: int, rng: random.Random) -> Outcome:
    def test(pair):
        ys, x = pair
        ok = d.alpha_inverse(d.alpha(ys)) == ys and d.alpha(d.alpha_inverse(x)) == x
        return None if ok else {"input": repr(x)}

    return _first_failure((([d.rh.random(rng) for _ in range(d.index)], d.rk.random(rng))
                           for _ in range(samples)), test)


def beta_linearity(d: InclusionDatum, samples: int, rng: random.Random) -> Outcome:
    """``beta`` is left ``RH_phi[t]``-linear."""

    def test(pair):
        lam, ys = pair
        lhs = d.beta([lam * y for y in ys])
        rhs = to_rk_t(d, lam) * d.beta(ys)
        return None if lhs == rhs else {"scalar": repr(lam), "vector": repr(ys)}

    return _first_failure(((d.rh_t.random(rng), [d.rh_t.random(rng) for _ in range(d.index)])
                           for _ in range(samples)), test)


def natural_iso_checks(d: InclusionDatum, rng: random.Random) -> Outcome:
    """The closing diagram for ranks 1 to 3 plus naturality on random maps."""
    for n in (1, 2, 3):
        if not natural_iso_T(d, n, rng):
            return Outcome(False, n, {"rank": n})
        u = FreeModuleMap.random(d.rk_t, rng, n, rng.randint(1, 3))
        if not natural_iso_T_naturality(d, u):
            return Outcome(False, n, {"naturality_rank": n})
    return Outcome(True, 3)


def transfer_identity_check(d: InclusionDatum) -> Outcome:
    """``i^* i_*`` sends the identity of rank n to the identity of rank l n."""
    for n in (1, 2):
        for ring in (d.rh, d.rh_t):
            out = induction_restriction_transfer(d, FreeModuleMap.identity(ring, n))
            if out != FreeModuleMap.identity(ring, d.index * n):
                return Outcome(False, n, {"rank": n, "ring": repr(ring)})
    return Outcome(True, 4)


def random_inclusion_datum(rng: random.Random, max_order: int = 8) -> InclusionDatum:
    names = [n for n in DISTINCT_NAMES if catalog_group(n).order <= max_order]
    k = catalog_group(rng.choice(names))
    h = rng.choice(all_subgroups(k))
    psis = [p for p in automorphisms(k) if all(p(x) in h for x in h)]
    return InclusionDatum(k, h, rng.choice(psis))


def transfer_rank_law(samples: int, rng: random.Random) -> Outcome:
    """``i^* i_*`` of a map between free modules of ranks ``(n, m)`` has ranks ``(l n, l m)``."""

    def test(_):
        d = random_inclusion_datum(rng)
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        ring = rng.choice((d.rh, d.rh_t))
        out = induction_restriction_transfer(d, FreeModuleMap.random(ring, rng, n, m))
        if (out.dom, out.cod) != (d.index * n, d.index * m):
            return {"k": d.k.name, "h": list(d.h.elements), "ranks": [n, m], "got": [out.dom, out.cod]}
        return None

    return _first_failure(range(samples), test)


def transfer_checks(data: list[InclusionDatum], samples: int, seed: int) -> list[Check]:
    out: list[Check] = []
    for i, d in enumerate(data):
        tag = f"{d.k.name} > H of index {d.index} (fixture {i})"
        out += [
            (f"{tag}: beta two-sided inverse", lambda d=d, t=tag: beta_round_trip(d, samples, seeded(seed, t, "b"))),
            (f"{tag}: alpha two-sided inverse", lambda d=d, t=tag: alpha_round_trip(d, samples, seeded(seed, t, "a"))),
            (f"{tag}: beta is RH_phi[t]-linear",
             lambda d=d, t=tag: beta_linearity(d, max(1, samples // 10), seeded(seed, t, "lin"))),
            (f"{tag}: T(P) commutes for ranks 1-3", lambda d=d, t=tag: natural_iso_checks(d, seeded(seed, t, "T"))),
            (f"{tag}: i^* i_* of identities", lambda d=d: transfer_identity_check(d)),
        ]
    out.append(("transfer rank law on random inclusions", lambda: transfer_rank_law(50, seeded(seed, "rank"))))
    return out


def eta_ring(k, x: int) -> TwistedPolyRing:
    return TwistedPolyRing(TwistedGroupRing(k), GroupAutomorphism.inner(k, x))


def eta_multiplicative(k, x: int, samples: int, rng: random.Random) -> Outcome:
    ring = eta_ring(k, x)
    target = untwisted(ring)

    def test(pair):
        a, b = pair
        lhs = eta_inner(x, a * b, target)
        rhs = eta_inner(x, a, target) * eta_inner(x, b, target)
        return None if lhs == rhs else {"x": repr(a), "y": repr(b)}

    return _first_failure(((ring.random(rng), ring.random(rng)) for _ in range(samples)), test)


def eta_bijective(k, x: int, samples: int, rng: random.Random) -> Outcome:
    ring = eta_ring(k, x)
    target = untwisted(ring)

    def test(pair):
        a, b = pair
        if eta_inverse(x, eta_inner(x, a, target), ring) != a:
            return {"direction": "eta^-1 eta", "input": repr(a)}
        if eta_inner(x, eta_inverse(x, b, ring), target) != b:
            return {"direction": "eta eta^-1", "input": repr(b)}
        return None

    return _first_failure(((ring.random(rng), target.random(rng)) for _ in range(samples)), test)


def eta_ev_zero(k, x: int, samples: int, rng: random.Random) -> Outcome:
    """``ev_zero o eta = ev_zero``, and ``eta`` fixes ``1`` and sends ``t`` to ``k t``."""
    ring = eta_ring(k, x)
    target = untwisted(ring)
    if eta_inner(x, ring.one, target) != target.one:
        return Outcome(False, 1, {"unit": "eta(1) != 1"})
    if eta_inner(x, ring.t, target) != target.group_element(x) * target.t:
        return Outcome(False, 1, {"t": "eta(t) != k t"})

    def test(a):
        return None if ev_zero(eta_inner(x, a, target)) == ev_zero(a) else {"input": repr(a)}

    return _first_failure((ring.random(rng) for _ in range(samples)), test)


def eta_checks(data: list[tuple], samples: int, seed: int) -> list[Check]:
    out: list[Check] = []
    for k, x in data:
        tag = f"{k.name}, conjugation by {k.label(x)}"
        out += [
            (f"{tag}: eta is multiplicative", lambda k=k, x=x, t=tag: eta_multiplicative(k, x, samples, seeded(seed, t, "m"))),
            (f"{tag}: eta is bijective", lambda k=k, x=x, t=tag: eta_bijective(k, x, samples, seeded(seed, t, "b"))),
            (f"{tag}: eta commutes with ev_zero", lambda k=k, x=x, t=tag: eta_ev_zero(k, x, samples, seeded(seed, t, "e"))),
        ]
    return out


def eta_choice_record(data: list[tuple]) -> list[dict]:
    """For each fixture, the other choices of ``k`` with the same twist and the central unit relating them."""
    return [
        {"k": k.name, "element": k.label(x),
         "same_twist": [{"element": k.label(k2), "unit": k.label(z)} for k2, z in eta_choice_units(k, x)]}
        for k, x in data
    ]
