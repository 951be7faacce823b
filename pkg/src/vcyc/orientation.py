"""Orientability of a finite diagram of type I virtually cyclic groups.

Each edge ``u -> v`` carries the sign of the induced map on infinite cyclic quotients; an
orientation is a choice ``s(u) in {+1, -1}`` per node with ``s(u) * sign = s(v)`` on every edge.
Solved by union-find with parity.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .config import default_caps
from .errors import CapExceeded, InvalidGroup, TypeMismatch
from .vc import (
    SIDE_A,
    SIDE_B,
    Amalgam,
    Degenerate,
    SemidirectZ,
    VCElement,
    VCGroup,
    VCHom,
    induced_q_map,
)
from .finite_group import GroupAutomorphism


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    sign: int
    hom: VCHom | None = field(default=None, compare=False, repr=False)
    multiplier: int = 1


@dataclass
class OrientationDiagram:
    nodes: dict[str, VCGroup | None]
    edges: list[Edge]

    def __post_init__(self):
        for name, group in self.nodes.items():
            if group is not None and not isinstance(group, SemidirectZ):
                raise TypeMismatch(f"node {name!r} is not of type I")
        for e in self.edges:
            if e.source not in self.nodes or e.target not in self.nodes:
                raise InvalidGroup(f"edge {e.source}->{e.target} mentions an unknown node")
            if e.sign not in (1, -1):
                raise InvalidGroup("edge signs must be +1 or -1")

    @classmethod
    def from_signs(cls, nodes, edges) -> "OrientationDiagram":
        """Sign-only diagram (no groups attached), for tests and random corpora."""
        return cls({n: None for n in nodes}, [Edge(u, v, s) for u, v, s in edges])

    def add_hom_edge(self, source: str, target: str, hom: VCHom) -> Edge:
        q = induced_q_map(hom)
        if isinstance(q, Degenerate):
            raise InvalidGroup(f"edge {source}->{target} has finite image")
        e = Edge(source, target, q.sign, hom, q.multiplier)
        self.edges.append(e)
        return e


@dataclass(frozen=True)
class Orientation:
    assignment: dict[str, int]

    orientable = True

    def satisfies(self, d: OrientationDiagram) -> bool:
        return all(self.assignment[e.source] * e.sign == self.assignment[e.target] for e in d.edges)


@dataclass(frozen=True)
class Unorientable:
    witness: tuple[Edge, ...]

    orientable = False

    def sign_product(self) -> int:
        out = 1
        for e in self.witness:
            out *= e.sign
        return out

    def is_cycle(self) -> bool:
        """Edges, read undirected, form a closed walk."""
        if not self.witness:
            return False
        first = self.witness[0]
        if len(self.witness) == 1:
            return first.source == first.target
        ends = [first.source, first.target]
        for start in ends:
            cur = start
            ok = True
            for e in self.witness:
                if e.source == cur:
                    cur = e.target
                elif e.target == cur:
                    cur = e.source
                else:
                    ok = False
                    break
            if ok and cur == start:
                return True
        return False


class _ParityUnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.parity = {x: 0 for x in items}  # parity relative to parent
        self.rank = {x: 0 for x in items}

    def find(self, x):
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        root = x
        # compress, accumulating parity from the top down
        acc = 0
        for y in reversed(path):
            acc ^= self.parity[y]
            self.parity[y] = acc
            self.parent[y] = root
        return root

    def parity_of(self, x) -> int:
        self.find(x)
        return self.parity[x]

    def union(self, x, y, odd: int) -> bool:
        """Impose ``parity(x) xor parity(y) == odd``; False on contradiction."""
        rx, ry = self.find(x), self.find(y)
        px, py = self.parity[x], self.parity[y]
        if rx == ry:
            return (px ^ py) == odd
        if self.rank[rx] < self.rank[ry]:
            rx, ry, px, py = ry, rx, py, px
        self.parent[ry] = rx
        self.parity[ry] = px ^ py ^ odd
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        return True


def _tree_path(adj, start, goal) -> list[Edge]:
    prev = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x == goal:
            break
        for y, e in adj.get(x, ()):
            if y not in prev:
                prev[y] = (x, e)
                queue.append(y)
    path = []
    x = goal
    while prev[x] is not None:
        x, e = prev[x]
        path.append(e)
    path.reverse()
    return path


def solve(d: OrientationDiagram) -> Orientation | Unorientable:
    uf = _ParityUnionFind(d.nodes)
    forest: dict[str, list] = {}
    for e in d.edges:
        odd = 0 if e.sign == 1 else 1
        if uf.union(e.source, e.target, odd):
            forest.setdefault(e.source, []).append((e.target, e))
            forest.setdefault(e.target, []).append((e.source, e))
            continue
        if e.source == e.target:
            return Unorientable((e,))
        return Unorientable(tuple(_tree_path(forest, e.target, e.source)) + (e,))
    assignment = {x: (1 if uf.parity_of(x) == 0 else -1) for x in d.nodes}
    result = Orientation(assignment)
    assert result.satisfies(d)
    return result


def brute_force_solve(d: OrientationDiagram, cap: int | None = None) -> Orientation | Unorientable:
    cap = default_caps().brute_force_nodes if cap is None else cap
    names = list(d.nodes)
    if len(names) > cap:
        raise CapExceeded(f"brute force capped at {cap} nodes", cap=cap)
    for signs in itertools.product((1, -1), repeat=len(names)):
        cand = Orientation(dict(zip(names, signs)))
        if cand.satisfies(d):
            return cand
    return Unorientable(_odd_cycle(d))


def _odd_cycle(d: OrientationDiagram) -> tuple[Edge, ...]:
    """A -1 cycle found by BFS parity labelling, independent of the union-find path."""
    for e in d.edges:
        if e.source == e.target and e.sign == -1:
            return (e,)
    label: dict[str, int] = {}
    adj: dict[str, list] = {}
    for e in d.edges:
        adj.setdefault(e.source, []).append((e.target, e))
        adj.setdefault(e.target, []).append((e.source, e))
    for root in d.nodes:
        if root in label:
            continue
        label[root] = 1
        tree: dict[str, list] = {}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, e in adj.get(x, ()):
                if y not in label:
                    label[y] = label[x] * e.sign
                    tree.setdefault(x, []).append((y, e))
                    tree.setdefault(y, []).append((x, e))
                    queue.append(y)
        for e in d.edges:
            if e.source in label and label[e.source] * e.sign != label[e.target]:
                return tuple(_tree_path(tree, e.target, e.source)) + (e,)
    return ()


# --- the obstruction coming from a type II group ----------------------------------


def even_subgroup(ambient: Amalgam) -> tuple[SemidirectZ, VCElement, callable]:
    """The preimage ``W`` of the commutator subgroup of ``D_inf``, as ``K ⋊ Z``.

    Returns ``(W, t, to_w)`` where ``t`` is the amalgam element ``r_a r_b`` standing for ``W``'s
    generator and ``to_w`` converts even-length amalgam elements into ``W``.
    """
    ra = ambient.from_side(SIDE_A, _nontrivial_rep(ambient, SIDE_A))
    rb = ambient.from_side(SIDE_B, _nontrivial_rep(ambient, SIDE_B))
    t = ambient.multiply(ra, rb)
    k = ambient.k
    phi = GroupAutomorphism(k, tuple(ambient.conj(t, ambient.from_k(x)).k for x in range(k.order)))
    w = SemidirectZ(k, phi, name=f"W({ambient!r})")
    # p(t) = (-1, 0) in D_inf, so the W-exponent is minus the translation part
    t_inv = ambient.inverse(t)

    def to_w(x: VCElement) -> VCElement:
        n, flip = ambient.q_image(x)
        if flip:
            raise InvalidGroup("element does not lie in the even subgroup")
        e = -n
        rest = ambient.multiply(x, ambient.power(t_inv, e))
        # x = rest * t^e with rest in K; W normal form (k, e) means k * t^e
        if rest.letters:
            raise AssertionError("even element failed to reduce into K")
        return w.element(rest.k, e)

    return w, t, to_w


def _nontrivial_rep(v: Amalgam, side: int) -> int:
    g = v.sides[side]
    return min(r for r, _ in v._decomp[side].values() if r != g.identity)


def dinfty_obstruction_fixture(ambient: VCGroup) -> OrientationDiagram:
    """One node ``W`` with a self-loop: conjugation by a lift of a reflection."""
    if not isinstance(ambient, Amalgam):
        raise TypeMismatch("the obstruction needs a type II ambient group")
    w, t, to_w = even_subgroup(ambient)
    x = ambient.from_side(SIDE_A, _nontrivial_rep(ambient, SIDE_A))
    images = [to_w(ambient.conj(x, ambient.from_k(g))) for g in w.k.generators]
    images.append(to_w(ambient.conj(x, t)))
    hom = VCHom(w, w, images)
    d = OrientationDiagram({"W": w}, [])
    d.add_hom_edge("W", "W", hom)
    return d
