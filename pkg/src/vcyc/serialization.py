"""JSON formats for groups, elements, homomorphisms, diagrams and check fixtures.

Every reader raises ``ParseError`` naming the offending ``field`` (a dotted path), or the
``line``/``column`` when the text is not JSON at all.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .catalog import catalog_group
from .errors import ParseError, VcycError
from .finite_group import FiniteGroup, GroupAutomorphism, group_from_json
from .orientation import Edge, OrientationDiagram, dinfty_obstruction_fixture
from .rings import GaussianIntegers, IntegersMod, RingAction, ring_from_name
from .vc import Amalgam, SemidirectZ, VCElement, VCGroup, VCHom

SCHEMA_VERSION = 1


def load_json(path: str | Path) -> Any:
    text = Path(path).read_text()
    return loads(text)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from None


def dumps(data: Any) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _need(data: dict, key: str, where: str):
    if not isinstance(data, dict):
        raise ParseError(f"{where or 'document'} must be an object", field=where or "$")
    if key not in data:
        raise ParseError(f"missing {key!r}", field=_join(where, key))
    return data[key]


def _join(where: str, key) -> str:
    return f"{where}.{key}" if where else str(key)


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", field=where)
    return value


def _int_list(value, where: str) -> list[int]:
    if not isinstance(value, list):
        raise ParseError("expected a list of integers", field=where)
    return [_int(v, f"{where}[{i}]") for i, v in enumerate(value)]


def _wrap(where: str, fn, *args):
    """Re-raise structural errors from constructors as parse errors at ``where``."""
    try:
        return fn(*args)
    except ParseError:
        raise
    except VcycError as exc:
        raise ParseError(f"{exc.kind}: {exc}", field=where) from None


# --- finite groups ---------------------------------------------------------------------


def parse_group(data, where: str = "group") -> FiniteGroup:
    """A catalog name (``"S3"``, ``"Z/4"``, ...) or an inline ``{order, mul, labels}`` table."""
    if isinstance(data, str):
        try:
            return catalog_group(data)
        except ParseError as exc:
            raise ParseError(str(exc), field=where) from None
    if isinstance(data, dict) and "catalog" in data:
        return parse_group(data["catalog"], _join(where, "catalog"))
    if isinstance(data, dict):
        _need(data, "mul", where)
        return _wrap(where, group_from_json, data)
    raise ParseError("a group is a catalog name or a multiplication table", field=where)


def dump_group(g: FiniteGroup) -> dict | str:
    out = g.to_json()
    if g.name:
        out["name"] = g.name
    return out


def parse_automorphism(group: FiniteGroup, data, where: str) -> GroupAutomorphism:
    """A permutation of element indices, or ``{"inner": x}`` for conjugation ``y -> x y x^-1``."""
    if data is None:
        return GroupAutomorphism.identity_of(group)
    if isinstance(data, dict) and "inner" in data:
        x = _int(data["inner"], _join(where, "inner"))
        if not 0 <= x < group.order:
            raise ParseError("element out of range", field=_join(where, "inner"))
        return GroupAutomorphism.inner(group, x)
    image = _int_list(data, where)
    return _wrap(where, GroupAutomorphism, group, tuple(image))


# --- virtually cyclic groups -----------------------------------------------------------


def parse_vcgroup(data, where: str = "group") -> VCGroup:
    variant = _need(data, "variant", where)
    name = data.get("name")
    if variant == "semidirect_z":
        k = parse_group(_need(data, "k", where), _join(where, "k"))
        phi = parse_automorphism(k, data.get("phi"), _join(where, "phi"))
        return _wrap(where, SemidirectZ, k, phi, name)
    if variant == "amalgam":
        parts = {key: parse_group(_need(data, key, where), _join(where, key)) for key in ("a", "b", "k")}
        emb_a = _int_list(_need(data, "emb_a", where), _join(where, "emb_a"))
        emb_b = _int_list(_need(data, "emb_b", where), _join(where, "emb_b"))
        return _wrap(where, Amalgam, parts["a"], parts["b"], parts["k"], emb_a, emb_b, name)
    raise ParseError(f"unknown variant {variant!r}", field=_join(where, "variant"))


def dump_vcgroup(v: VCGroup, ref: str | None = None) -> dict:
    """``ref`` replaces the inline table of the finite piece by a catalog name."""
    if isinstance(v, SemidirectZ):
        out = {"variant": "semidirect_z", "k": ref or dump_group(v.k), "phi": list(v.phi.image)}
    else:
        out = {
            "variant": "amalgam",
            "a": dump_group(v.a),
            "b": dump_group(v.b),
            "k": dump_group(v.k),
            "emb_a": list(v.emb_a),
            "emb_b": list(v.emb_b),
        }
    if v.name:
        out["name"] = v.name
    return out


def parse_element(v: VCGroup, data, where: str = "element") -> VCElement:
    if isinstance(v, SemidirectZ):
        k = _int(_need(data, "k", where), _join(where, "k"))
        n = _int(data.get("n", 0), _join(where, "n"))
        if not 0 <= k < v.k.order:
            raise ParseError(f"k out of range for a group of order {v.k.order}", field=_join(where, "k"))
        return v.element(k, n)
    letters = _need(data, "letters", where)
    if not isinstance(letters, list):
        raise ParseError("letters must be a list of [side, element] pairs", field=_join(where, "letters"))
    out = v.from_k(_int(data.get("k", v.k.identity), _join(where, "k")))
    word = v.identity
    for i, pair in enumerate(letters):
        w = f"{where}.letters[{i}]"
        side, r = _int_list(pair, w) if isinstance(pair, list) and len(pair) == 2 else (None, None)
        if side not in (0, 1) or not 0 <= r < v.sides[side].order:
            raise ParseError("each letter is [side (0 or 1), element of that side]", field=w)
        word = v.multiply(word, v.from_side(side, r))
    return v.multiply(word, out)


def dump_element(x: VCElement) -> dict:
    if isinstance(x.owner, SemidirectZ):
        return {"k": x.k, "n": x.n}
    return {"letters": [list(p) for p in x.letters], "k": x.k}


def parse_hom(source: VCGroup, target: VCGroup, data, where: str = "hom") -> VCHom:
    """A list of generator images (normal forms in ``target``), or ``{"images": [...]}``."""
    images = data.get("images") if isinstance(data, dict) else data
    if not isinstance(images, list):
        raise ParseError("a hom is a list of generator images", field=where)
    elems = [parse_element(target, im, f"{where}[{i}]") for i, im in enumerate(images)]
    return _wrap(where, VCHom, source, target, elems)


def dump_hom(f: VCHom) -> list:
    return [dump_element(x) for x in f.images]


# --- orientation diagrams --------------------------------------------------------------


def parse_orientation_diagram(data, where: str = "") -> OrientationDiagram:
    """``{nodes: [{id, group?}], edges: [{from, to, hom | sign}]}`` or ``{obstruction: amalgam}``."""
    if isinstance(data, dict) and "obstruction" in data:
        v = parse_vcgroup(data["obstruction"], _join(where, "obstruction"))
        return _wrap(_join(where, "obstruction"), dinfty_obstruction_fixture, v)
    nodes_data = _need(data, "nodes", where)
    edges_data = _need(data, "edges", where)
    if not isinstance(nodes_data, list) or not isinstance(edges_data, list):
        raise ParseError("nodes and edges must be lists", field=where or "$")
    nodes: dict[str, VCGroup | None] = {}
    for i, node in enumerate(nodes_data):
        w = _join(where, f"nodes[{i}]")
        ident = str(_need(node, "id", w))
        if ident in nodes:
            raise ParseError(f"duplicate node id {ident!r}", field=_join(w, "id"))
        nodes[ident] = parse_vcgroup(node["group"], _join(w, "group")) if node.get("group") is not None else None
    diagram = _wrap(where or "$", OrientationDiagram, nodes, [])
    for i, edge in enumerate(edges_data):
        w = _join(where, f"edges[{i}]")
        src, dst = str(_need(edge, "from", w)), str(_need(edge, "to", w))
        for end, key in ((src, "from"), (dst, "to")):
            if end not in nodes:
                raise ParseError(f"unknown node {end!r}", field=_join(w, key))
        if "hom" in edge:
            if nodes[src] is None or nodes[dst] is None:
                raise ParseError("hom edges need groups on both ends", field=w)
            hom = parse_hom(nodes[src], nodes[dst], edge["hom"], _join(w, "hom"))
            _wrap(w, diagram.add_hom_edge, src, dst, hom)
        else:
            sign = _int(_need(edge, "sign", w), _join(w, "sign"))
            if sign not in (1, -1):
                raise ParseError("sign must be +1 or -1", field=_join(w, "sign"))
            diagram.edges.append(Edge(src, dst, sign))
    return diagram


def dump_orientation_diagram(d: OrientationDiagram) -> dict:
    return {
        "nodes": [{"id": n} for n in d.nodes],
        "edges": [{"from": e.source, "to": e.target, "sign": e.sign} for e in d.edges],
    }


# --- fixtures for the diagram, transfer and eta batteries ---------------------------------


def parse_ring_action(data, where: str = "coefficients"):
    """``{ring: "Z" | "Q" | "Z[i]" | "Z/n", action: "trivial" | "conjugation" | {"unit": u}}``.

    The action is by the Z-coordinate of a group element.
    """
    data = data or {}
    ring = _wrap(_join(where, "ring"), ring_from_name, str(data.get("ring", "Z")))
    action = data.get("action", "trivial")
    if action == "trivial":
        return ring, None
    if action == "conjugation":
        if not isinstance(ring, GaussianIntegers):
            raise ParseError("conjugation is an action on Z[i] only", field=_join(where, "action"))
        return ring, RingAction.gaussian_conjugation()
    if isinstance(action, dict) and "unit" in action:
        if not isinstance(ring, IntegersMod):
            raise ParseError("unit scaling needs a ring Z/n", field=_join(where, "action"))
        unit = _int(action["unit"], _join(where, "action.unit"))
        return ring, RingAction.unit_scaling(ring, unit)
    raise ParseError(f"unknown action {action!r}", field=_join(where, "action"))


def parse_ambient(data, where: str = "ambient"):
    """``{v: semidirect_z group, ring?, action?, sigma?, spectator?, lift?, name?}``."""
    from .hocolim.ambient import Ambient

    v = parse_vcgroup(_need(data, "v", where), _join(where, "v"))
    if not isinstance(v, SemidirectZ):
        raise ParseError("the ambient group must be of the form K x|phi Z", field=_join(where, "v"))
    ring, action = parse_ring_action(data, where)
    sigma = _int(data.get("sigma", 1), _join(where, "sigma"))
    spectator = parse_group(data["spectator"], _join(where, "spectator")) if "spectator" in data else None
    lift = parse_element(v, data["lift"], _join(where, "lift")) if "lift" in data else None
    return _wrap(where, Ambient, v, ring, action, spectator, lift, sigma, data.get("name"))


def parse_inclusion_datum(data, where: str = "fixture"):
    """``{k, h: subgroup generators, psi?: permutation, reps?: coset representatives, ring?}``."""
    from .twisted import InclusionDatum

    k = parse_group(_need(data, "k", where), _join(where, "k"))
    gens = _int_list(_need(data, "h", where), _join(where, "h"))
    if any(not 0 <= g < k.order for g in gens):
        raise ParseError("subgroup generator out of range", field=_join(where, "h"))
    h = k.subgroup(gens)
    psi = parse_automorphism(k, data.get("psi"), _join(where, "psi"))
    reps = _int_list(data["reps"], _join(where, "reps")) if "reps" in data else None
    ring = _wrap(_join(where, "ring"), ring_from_name, str(data.get("ring", "Z")))
    return _wrap(where, InclusionDatum, k, h, psi, None, reps, ring)


def parse_eta_fixture(data, where: str = "fixture") -> tuple[FiniteGroup, int]:
    """``{k, element}``: the twist is conjugation by ``element``."""
    k = parse_group(_need(data, "k", where), _join(where, "k"))
    x = _int(_need(data, "element", where), _join(where, "element"))
    if not 0 <= x < k.order:
        raise ParseError("element out of range", field=_join(where, "element"))
    return k, x


def fixture_list(data, key: str) -> list:
    """Accept a bare list, ``{key: [...]}``, or a single fixture object."""
    if isinstance(data, list):
        return data
    if isinstance(data, dict) and key in data:
        items = data[key]
        if not isinstance(items, list):
            raise ParseError(f"{key} must be a list", field=key)
        return items
    if isinstance(data, dict):
        return [data]
    raise ParseError("expected a fixture object or list", field="$")
