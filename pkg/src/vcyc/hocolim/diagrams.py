"""Machine checks of the commutative diagrams relating the homotopy colimits of one ``Ambient``.

Strict cells compare two composite functors on random morphisms.  Cells that only commute up to
the natural isomorphisms ``T`` and ``S`` are checked as naturality squares plus one coherence.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from ..errors import UnknownDiagram
from .ambient import Ambient
from .categories import STAR
from .core import HocolimMorphism, HocolimObject
from .functors import ev_sigma, inclusion, phi_twist, psi_iso, pushforward_W

DIAGRAMS = (
    "diagram_reducing_to_groups_ev",
    "diagram_of_cat_i_i[sigma]",
    "passage_to_calb",
    "mapping_torus",
)


@dataclass(frozen=True)
class Cell:
    name: str
    check: Callable[[random.Random], tuple[bool, object]]


def _eq(lhs, rhs, sample) -> tuple[bool, object]:
    if lhs == rhs:
        return True, None
    return False, {"input": repr(sample), "left": repr(lhs), "right": repr(rhs)}


def _strict(name, source, left, right) -> Cell:
    """``left(m) == right(m)`` for ``m`` drawn by ``source(rng)``."""

    def check(rng):
        m = source(rng)
        return _eq(left(m), right(m), m)

    return Cell(name, check)


# --- natural transformations ----------------------------------------------------------


def t_component(amb: Ambient, rank: int, sigma_part: bool = True) -> HocolimMorphism:
    """``T(A) = T_σ o id: (*, Φ(A)) -> (*, A)`` in ``int_{Z[σ]} B`` (or ``int_Z B``)."""
    cat = amb.qb_sigma if sigma_part else amb.qb
    obj = HocolimObject(STAR, rank)
    return cat.morphism(obj, obj, {amb.sigma_power(1): amb.b.identity(rank)})


def s_component(amb: Ambient, rank: int) -> HocolimMorphism:
    """``S(A) = T_{lift}: (eK, Φ(A)) -> (lift K, A)`` in ``int_{G(G/K)} A``."""
    e = amb.g.identity
    dst = amb.mod_k.rep(amb.lift_g)
    return amb.a_gk.structural(amb.lift_g, amb.a_gk.obj(e, rank), amb.a_gk.obj(dst, rank))


def i_b(amb: Ambient, u: HocolimMorphism, sigma_part: bool = False) -> HocolimMorphism:
    """``B -> int_Z B``: ``u -> T_e o u``."""
    cat = amb.qb_sigma if sigma_part else amb.qb
    return cat.morphism(HocolimObject(STAR, u.dom.rank), HocolimObject(STAR, u.cod.rank),
                        {amb.sigma_power(0): u})


# --- cells ----------------------------------------------------------------------------


def _sampler(cat):
    return lambda rng: cat.random_morphism(rng)


def _cells_reducing(amb: Ambient) -> list[Cell]:
    F = amb.functors
    push = pushforward_W
    return [
        _strict(
            "top_retraction: ev(G/V)[σ]_K o incl = id",
            _sampler(amb.a_gv_k),
            lambda m: ev_sigma(inclusion(m, amb.a_gv_sigma), amb.a_gv_k),
            lambda m: m,
        ),
        _strict(
            "bottom_retraction: ev_V[σ] o incl = id",
            _sampler(amb.a_k),
            lambda m: ev_sigma(inclusion(m, amb.a_v_sigma), amb.a_k),
            lambda m: m,
        ),
        _strict(
            "left_square: incl o e(G/V)_K* = e(G/V)[σ]* o incl",
            _sampler(amb.a_k),
            lambda m: inclusion(push(F.e_gv_k, m, amb.a_gv_k), amb.a_gv_sigma),
            lambda m: push(F.e_gv_sigma, inclusion(m, amb.a_v_sigma), amb.a_gv_sigma),
        ),
        _strict(
            "right_square: ev(G/V)[σ]_K o e(G/V)[σ]* = e(G/V)_K* o ev_V[σ]",
            _sampler(amb.a_v_sigma),
            lambda m: ev_sigma(push(F.e_gv_sigma, m, amb.a_gv_sigma), amb.a_gv_k),
            lambda m: push(F.e_gv_k, ev_sigma(m, amb.a_k), amb.a_gv_k),
        ),
        _ev_functorial("ev(G/V)[σ]_K is a functor", amb.a_gv_sigma, amb.a_gv_k),
        _ev_functorial("ev_V[σ] is a functor", amb.a_v_sigma, amb.a_k),
    ]


def _ev_functorial(name, big, small) -> Cell:
    def check(rng):
        a, b, c = (big.random_object(rng) for _ in range(3))
        f = big.random_morphism(rng, a, b)
        g = big.random_morphism(rng, b, c)
        lhs = ev_sigma(big.compose(g, f), small)
        rhs = small.compose(ev_sigma(g, small), ev_sigma(f, small))
        return _eq(lhs, rhs, (g, f))

    return Cell(name, check)


def _cells_cat_i_i(amb: Ambient) -> list[Cell]:
    F = amb.functors
    push = pushforward_W
    return [
        _strict(
            "square: j(G/V)[σ]* o e(G/V)[σ]* = e(G/V)* o j_V[σ]*",
            _sampler(amb.a_v_sigma),
            lambda m: inclusion(push(F.e_gv_sigma, m, amb.a_gv_sigma), amb.a_gv),
            lambda m: push(F.e_gv, inclusion(m, amb.a_v), amb.a_gv),
        ),
        _strict(
            "square: K-parts, j o e(G/V)_K* = e(G/V)* o j_V",
            _sampler(amb.a_k),
            lambda m: inclusion(push(F.e_gv_k, m, amb.a_gv_k), amb.a_gv),
            lambda m: push(F.e_gv, inclusion(m, amb.a_v), amb.a_gv),
        ),
    ]


def _cells_calb(amb: Ambient) -> list[Cell]:
    F = amb.functors
    push = pushforward_W
    return [
        _strict(
            "rows 1-2 left: ev(G/V)[σ]_K o e(G/V)[σ]* = e(G/V)_K* o ev_V[σ]",
            _sampler(amb.a_v_sigma),
            lambda m: ev_sigma(push(F.e_gv_sigma, m, amb.a_gv_sigma), amb.a_gv_k),
            lambda m: push(F.e_gv_k, ev_sigma(m, amb.a_k), amb.a_gv_k),
        ),
        _strict(
            "rows 1-2 right: j(G/V)[σ]* o e(G/V)[σ]* = e(G/V)* o j_V[σ]*",
            _sampler(amb.a_v_sigma),
            lambda m: inclusion(push(F.e_gv_sigma, m, amb.a_gv_sigma), amb.a_gv),
            lambda m: push(F.e_gv, inclusion(m, amb.a_v), amb.a_gv),
        ),
        _strict(
            "rows 2-3 left: ev_V[σ] o Ψ[σ] = ev_B[σ]",
            _sampler(amb.qb_sigma),
            lambda m: ev_sigma(psi_iso(m, amb), amb.a_k),
            lambda m: ev_sigma(m, amb.a_k),
        ),
        _strict(
            "rows 2-3 right: j_V[σ] o Ψ[σ] = Ψ o j[σ]",
            _sampler(amb.qb_sigma),
            lambda m: inclusion(psi_iso(m, amb), amb.a_v),
            lambda m: psi_iso(push(F.q_sigma_in_q, m, amb.qb), amb),
        ),
        _strict(
            "row 3 retraction: ev_B[σ] o i_B[σ] = id",
            lambda rng: amb.random_b_morphism(rng),
            lambda u: ev_sigma(i_b(amb, u, sigma_part=True), amb.a_k),
            lambda u: u,
        ),
        _strict(
            "row 2 retraction: ev_V[σ] o incl = id",
            _sampler(amb.a_k),
            lambda m: ev_sigma(inclusion(m, amb.a_v_sigma), amb.a_k),
            lambda m: m,
        ),
        _strict(
            "row 1 retraction: ev(G/V)[σ]_K o incl = id",
            _sampler(amb.a_gv_k),
            lambda m: ev_sigma(inclusion(m, amb.a_gv_sigma), amb.a_gv_k),
            lambda m: m,
        ),
    ]


def _cells_mapping_torus(amb: Ambient) -> list[Cell]:
    F = amb.functors
    push = pushforward_W
    b_sample = amb.random_b_morphism

    def t_natural(rng):
        u = b_sample(rng)
        lhs = amb.qb_sigma.compose(t_component(amb, u.cod.rank), i_b(amb, phi_twist(u, amb), True))
        rhs = amb.qb_sigma.compose(i_b(amb, u, True), t_component(amb, u.dom.rank))
        return _eq(lhs, rhs, u)

    def psi_t_natural(rng):
        u = b_sample(rng)
        tt = lambda r: psi_iso(t_component(amb, r), amb, amb.a_v)
        lhs = amb.a_v.compose(tt(u.cod.rank), inclusion(phi_twist(u, amb), amb.a_v))
        rhs = amb.a_v.compose(inclusion(u, amb.a_v), tt(u.dom.rank))
        return _eq(lhs, rhs, u)

    def s_natural(rng):
        u = b_sample(rng)
        gk = amb.a_gk
        lhs = gk.compose(s_component(amb, u.cod.rank), push(F.e_gk, phi_twist(u, amb), gk))
        rhs = gk.compose(push(F.r_sigma, push(F.e_gk, u, gk), gk), s_component(amb, u.dom.rank))
        return _eq(lhs, rhs, u)

    def coherence(rng):
        r = rng.randint(1, 3)
        lhs = inclusion(push(F.e_gv_sigma, psi_iso(t_component(amb, r), amb), amb.a_gv_sigma), amb.a_gv)
        rhs = push(F.pr_v, s_component(amb, r), amb.a_gv)
        return _eq(lhs, rhs, r)

    return [
        _strict(
            "top triangle: G(pr_V)* o R_σ* = G(pr_V)*",
            _sampler(amb.a_gk),
            lambda m: push(F.pr_v, push(F.r_sigma, m, amb.a_gk), amb.a_gv),
            lambda m: push(F.pr_v, m, amb.a_gv),
        ),
        _strict(
            "upper squares: e(G/V)* o j_V = G(pr_V)* o e(G/K)*",
            _sampler(amb.a_k),
            lambda m: push(F.e_gv, inclusion(m, amb.a_v), amb.a_gv),
            lambda m: push(F.pr_v, push(F.e_gk, m, amb.a_gk), amb.a_gv),
        ),
        _strict(
            "lower squares: j_V o id = Ψ o i_B",
            lambda rng: b_sample(rng),
            lambda u: inclusion(u, amb.a_v),
            lambda u: psi_iso(i_b(amb, u), amb),
        ),
        Cell("naturality of T", t_natural),
        Cell("naturality of Ψ o T", psi_t_natural),
        Cell("naturality of S", s_natural),
        Cell("coherence: e(G/V)[σ]* o Ψ o T = G(pr_V)* o S", coherence),
    ]


_BUILDERS = {
    "diagram_reducing_to_groups_ev": _cells_reducing,
    "diagram_of_cat_i_i[sigma]": _cells_cat_i_i,
    "passage_to_calb": _cells_calb,
    "mapping_torus": _cells_mapping_torus,
}


def diagram_cells(name: str, amb: Ambient) -> list[Cell]:
    try:
        return _BUILDERS[name](amb)
    except KeyError:
        raise UnknownDiagram(f"no built-in diagram named {name!r}", known=list(DIAGRAMS)) from None


def cell_rng(seed: int, diagram: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{diagram}:{index}")


def run_cell(cell: Cell, samples: int, rng: random.Random) -> dict:
    """``{name, samples, pass, counterexample?}``; stops at the first failing sample."""
    rec = {"name": cell.name, "samples": samples, "pass": True}
    for _ in range(samples):
        ok, ce = cell.check(rng)
        if not ok:
            rec["pass"] = False
            rec["counterexample"] = ce
            break
    return rec


def check_diagram(name: str, amb: Ambient, samples: int = 100, seed: int = 0) -> dict:
    """Report ``{diagram, cells: [{name, samples, pass, counterexample?}]}``."""
    cells = diagram_cells(name, amb)
    out = [run_cell(cell, samples, cell_rng(seed, name, i)) for i, cell in enumerate(cells)]
    return {"diagram": name, "ambient": amb.name, "cells": out}
