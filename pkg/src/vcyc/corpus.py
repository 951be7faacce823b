"""The built-in corpus: every ``K ⋊_phi Z`` over small catalog groups plus fixed amalgams."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .catalog import DISTINCT_NAMES, catalog_group
from .config import Caps, default_caps
from .errors import CapExceeded, InvalidGroup
from .finite_group import FiniteGroup, automorphisms, is_homomorphism
from .serialization import SCHEMA_VERSION, dumps, parse_vcgroup
from .vc import SemidirectZ, VCGroup, VCType

# (a, b, k): each k embeds into a and b with index 2
AMALGAM_FIXTURES = (
    ("Z/2", "Z/2", "trivial"),
    ("Z/4", "Z/4", "Z/2"),
    ("Z/2xZ/2", "Z/4", "Z/2"),
    ("Z/2xZ/2", "Z/2xZ/2", "Z/2"),
    ("Z/6", "S3", "Z/3"),
    ("S3", "S3", "Z/3"),
    ("D_4", "Z/8", "Z/4"),
)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    group: VCGroup
    expected_type: VCType
    spec: dict


def index_two_embedding(k: FiniteGroup, side: FiniteGroup) -> tuple[int, ...]:
    """The lexicographically least injective hom ``k -> side`` onto an index-2 subgroup."""
    if side.order != 2 * k.order:
        raise InvalidGroup(f"{side.name} is not twice as large as {k.name}")
    for imgs in itertools.permutations(range(side.order), k.order):
        if imgs[k.identity] != side.identity:
            continue
        if is_homomorphism(k, side, imgs):
            return tuple(imgs)
    raise InvalidGroup(f"{k.name} does not embed in {side.name}")


def _amalgam_spec(a: str, b: str, k: str) -> dict:
    ka, kb, kk = catalog_group(a), catalog_group(b), catalog_group(k)
    return {
        "variant": "amalgam",
        "a": a,
        "b": b,
        "k": k,
        "emb_a": list(index_two_embedding(kk, ka)),
        "emb_b": list(index_two_embedding(kk, kb)),
        "name": f"{a} *_{k} {b}",
    }


def _semidirect_name(k: str, index: int, trivial_phi: bool) -> str:
    if k == "trivial":
        return "Z"
    if trivial_phi:
        return f"{k} x Z"
    return f"{k} x|phi{index} Z"


def corpus_specs(caps: Caps | None = None) -> list[dict]:
    """JSON specs of the corpus groups, in a fixed order."""
    caps = caps or default_caps()
    bound = caps.corpus_order
    if bound > caps.automorphism_order:
        raise CapExceeded(
            f"corpus order {bound} exceeds the automorphism cap {caps.automorphism_order}",
            cap=caps.automorphism_order,
        )
    out = []
    for name in DISTINCT_NAMES:
        k = catalog_group(name)
        if k.order > bound:
            continue
        for i, phi in enumerate(automorphisms(k, caps.automorphism_order)):
            out.append({
                "variant": "semidirect_z",
                "k": name,
                "phi": list(phi.image),
                "name": _semidirect_name(name, i, phi.is_identity()),
            })
    for a, b, k in AMALGAM_FIXTURES:
        if max(catalog_group(a).order, catalog_group(b).order) <= bound:
            out.append(_amalgam_spec(a, b, k))
    return out


def generate_corpus(caps: Caps | None = None) -> dict:
    caps = caps or default_caps()
    specs = corpus_specs(caps)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "corpus",
        "corpus_order": caps.corpus_order,
        "groups": specs,
    }


def corpus_text(caps: Caps | None = None) -> str:
    return dumps(generate_corpus(caps))


def load_corpus(data: dict | list | None = None, caps: Caps | None = None) -> list[CorpusEntry]:
    """Parse a corpus document (or generate the built-in one)."""
    if data is None:
        data = generate_corpus(caps)
    groups = data["groups"] if isinstance(data, dict) and "groups" in data else data
    if not isinstance(groups, list):
        groups = [groups]
    out = []
    for i, spec in enumerate(groups):
        g = parse_vcgroup(spec, f"groups[{i}]")
        expected = VCType.TYPE_I if isinstance(g, SemidirectZ) else VCType.TYPE_II
        out.append(CorpusEntry(spec.get("name") or repr(g), g, expected, spec))
    return out


def corpus_groups(caps: Caps | None = None) -> list[VCGroup]:
    return [e.group for e in load_corpus(None, caps)]

