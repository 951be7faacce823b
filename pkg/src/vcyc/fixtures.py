"""Default fixtures for the check batteries, written in the same JSON shape as fixture files."""
from __future__ import annotations

from .catalog import catalog_group
from .hocolim import Ambient, Hocolim, MonoidCat
from .rings import Integers, IntegersMod, RingAction
from .serialization import parse_ambient, parse_eta_fixture, parse_inclusion_datum
from .vc import SemidirectZ

Z3_INVERSION = {"variant": "semidirect_z", "k": "Z/3", "phi": [0, 2, 1], "name": "Z/3 x|inv Z"}
Z2_TIMES_Z = {"variant": "semidirect_z", "k": "Z/2", "name": "Z/2 x Z"}
Z5_DOUBLING = {"variant": "semidirect_z", "k": "Z/5", "phi": [0, 2, 4, 1, 3], "name": "Z/5 x|(x2) Z"}
S3_CONJUGATION = {"variant": "semidirect_z", "k": "S3", "phi": {"inner": 1}, "name": "S3 x|c Z"}

# Z/2 has no nontrivial automorphism, so its twist lives in the coefficients
DEFAULT_AMBIENTS = [
    {"v": Z2_TIMES_Z, "ring": "Z[i]", "action": "conjugation", "name": "Z/2 x Z over Z[i] (conjugation)"},
    {"v": Z3_INVERSION, "ring": "Z", "name": "Z/3 x|inv Z over Z"},
    {"v": Z3_INVERSION, "ring": "Z[i]", "action": "conjugation", "sigma": -1,
     "name": "Z/3 x|inv Z over Z[i], sigma = -1"},
    {"v": Z5_DOUBLING, "ring": "Z[i]", "action": "conjugation", "name": "Z/5 x|(x2) Z over Z[i]"},
]

# K, generators of H, psi; reps default to the least element of each right coset
DEFAULT_TRANSFER = [
    {"k": "Z/4", "h": [2]},
    {"k": "S3", "h": [3], "psi": {"inner": 1}},
    {"k": "D_4", "h": [4], "psi": {"inner": 4}},
    {"k": "Z/8", "h": [2], "psi": [0, 3, 6, 1, 4, 7, 2, 5]},
    {"k": "Z/6", "h": [3], "psi": [0, 5, 4, 3, 2, 1]},
]

# the twist is conjugation by ``element``: a transposition of S3, a reflection of D_4, i in Q8
DEFAULT_ETA = [
    {"k": "S3", "element": 1},
    {"k": "D_4", "element": 4},
    {"k": "Q8", "element": 1},
]


def default_ambients() -> list[Ambient]:
    return [parse_ambient(a, f"ambients[{i}]") for i, a in enumerate(DEFAULT_AMBIENTS)]


def default_transfer_data():
    return [parse_inclusion_datum(d, f"fixtures[{i}]") for i, d in enumerate(DEFAULT_TRANSFER)]


def default_eta_data():
    return [parse_eta_fixture(d, f"fixtures[{i}]") for i, d in enumerate(DEFAULT_ETA)]


def associativity_fixtures() -> list[tuple[str, Hocolim]]:
    """The four index-category fixtures of the associativity battery."""
    z = SemidirectZ(catalog_group("trivial"), name="Z")
    mod5 = IntegersMod(5)
    v_amb = parse_ambient({"v": Z3_INVERSION, "ring": "Z[i]", "action": "conjugation"})
    gk_amb = Ambient(v_amb.v, spectator=catalog_group("trivial"))
    return [
        ("Z^ over Z, trivial action", Hocolim.over_matrices(MonoidCat(z), Integers())),
        ("Z^ over Z/5, x -> 2x", Hocolim.over_matrices(MonoidCat(z), mod5, RingAction.unit_scaling(mod5, 2))),
        ("V^ for V = Z/3 x|inv Z over Z[i]", v_amb.a_v),
        ("G(V/K) for V = Z/3 x|inv Z", gk_amb.a_gk),
    ]
