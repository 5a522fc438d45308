"""
Tree-based LDPC constructions.

Type I graphs are a d-regular tree grown from a variable root, its
role-swapped reflection, and closing edges between the two bottom layers
(I-A: fixed permutations with d = 3; I-B: MOLS with d = q).  Type II graphs
are a (q+1)-regular tree plus one extra layer closed with MOLS (l = 3 gives
PG(2, q), l = 4 gives girth-8 codes); ``reduce_to_eg`` turns the l = 3 graph
into the EG(2, q) graph.

Every builder returns a TannerGraph whose variables and checks are sorted by
(depth, path), where depth runs from the root (0) down through the reflected
tree (a reflected layer i sits at depth 2*layers - 1 - i).  Node labels keep
the construction provenance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .finite_field import build_mols, make_field
from .tanner import NodeLabel, TannerGraph

VAR = "variable"
CHECK = "check"


class Family(str, Enum):
    TYPE1A = "type1a"
    TYPE1B = "type1b"
    TYPE2_L3 = "type2-l3"
    TYPE2_L3_EG = "type2-l3-eg"
    TYPE2_L4 = "type2-l4"


class ConstructionError(ValueError):
    pass


# cycle notation from the construction tables; fixed points omitted
_TYPE1A_CYCLES = {
    6: ([], [], []),
    8: ([(1, 3)], [(1, 3)], [(0, 2)]),
    10: (
        [(1, 5), (3, 7)],
        [(1, 7), (3, 5)],
        [(0, 4), (2, 6), (1, 3), (5, 7)],
    ),
    12: (
        [(2, 6), (10, 14), (1, 9), (3, 15), (5, 13), (7, 11)],
        [(4, 12), (2, 6, 10, 14), (1, 15, 13, 11), (3, 9, 7, 5)],
        [(0, 8), (4, 12), (2, 14), (6, 10), (1, 3, 5, 7), (9, 11, 13, 15)],
    ),
}


def cycles_to_array(cycles, size: int) -> list[int]:
    """Array form of a permutation given as disjoint cycles (a -> b -> ... -> a)."""
    perm = list(range(size))
    seen = set()
    for cyc in cycles:
        for i, a in enumerate(cyc):
            if a in seen or not 0 <= a < size:
                raise ConstructionError(f"invalid cycle {cyc} for size {size}")
            seen.add(a)
            perm[a] = cyc[(i + 1) % len(cyc)]
    return perm


@dataclass(frozen=True)
class PermutationTriple:
    g: int
    size: int
    pi: tuple[int, ...]
    tau: tuple[int, ...]
    tau_prime: tuple[int, ...]

    def __post_init__(self):
        for name in ("pi", "tau", "tau_prime"):
            arr = getattr(self, name)
            if sorted(arr) != list(range(self.size)):
                raise ConstructionError(f"{name} is not a permutation of range({self.size})")


def type1a_permutations(g: int) -> PermutationTriple:
    if g not in _TYPE1A_CYCLES:
        raise ConstructionError(f"Type I-A permutations are only known for g in (6, 8, 10, 12), not {g}")
    size = 2 ** (g // 2 - 2)
    pi, tau, tau_p = (tuple(cycles_to_array(c, size)) for c in _TYPE1A_CYCLES[g])
    return PermutationTriple(g, size, pi, tau, tau_p)


class _Builder:
    """Mutable node/edge store used while a construction runs."""

    def __init__(self, depth_span: int):
        self.depth_span = depth_span
        self.nodes: set[NodeLabel] = set()
        self.edges: set[tuple[NodeLabel, NodeLabel]] = set()

    def node(self, side: str, layer: int, path=(), mirror=False, imaginary=False) -> NodeLabel:
        lab = NodeLabel(side, layer, tuple(path), mirror, imaginary)
        self.nodes.add(lab)
        return lab

    def connect(self, a: NodeLabel, b: NodeLabel) -> None:
        if a.side == b.side:
            raise ConstructionError(f"edge between two {a.side} nodes: {a} {b}")
        v, c = (a, b) if a.side == VAR else (b, a)
        if (v, c) in self.edges:
            raise ConstructionError(f"parallel edge {v} -- {c}")
        self.edges.add((v, c))

    def disconnect(self, a: NodeLabel, b: NodeLabel) -> None:
        v, c = (a, b) if a.side == VAR else (b, a)
        self.edges.remove((v, c))

    def remove(self, lab: NodeLabel) -> None:
        self.nodes.discard(lab)
        self.edges = {e for e in self.edges if lab not in e}

    def neighbours(self, lab: NodeLabel) -> list[NodeLabel]:
        return [c if v == lab else v for v, c in self.edges if lab in (v, c)]

    def _key(self, lab: NodeLabel):
        depth = self.depth_span - 1 - lab.layer if lab.mirror else lab.layer
        return depth, lab.path

    def emit(self, meta: dict) -> TannerGraph:
        if any(n.imaginary for n in self.nodes):
            raise ConstructionError("imaginary nodes must be deleted before emission")
        vars_ = sorted((n for n in self.nodes if n.side == VAR), key=self._key)
        checks = sorted((n for n in self.nodes if n.side == CHECK), key=self._key)
        vidx = {n: i for i, n in enumerate(vars_)}
        cidx = {n: i for i, n in enumerate(checks)}
        edges = [(vidx[v], cidx[c]) for v, c in self.edges]
        return TannerGraph.from_edges(
            len(vars_), len(checks), edges,
            var_labels=tuple(vars_), check_labels=tuple(checks), meta=meta,
        )


def _grow_tree(b: _Builder, layers: int, d: int, mirror: bool = False) -> list[list[NodeLabel]]:
    """d-regular tree of `layers` layers; the root has d children, others d-1.

    The unreflected tree has a variable root; the reflected tree a check root.
    Paths list child indices from the root, so leaves sort lexicographically.
    """
    sides = (CHECK, VAR) if mirror else (VAR, CHECK)
    out = [[b.node(sides[0], 0, (), mirror)]]
    for layer in range(1, layers):
        side = sides[layer % 2]
        nxt = []
        for parent in out[-1]:
            kids = d if layer == 1 else d - 1
            for k in range(kids):
                child = b.node(side, layer, parent.path + (k,), mirror)
                b.connect(parent, child)
                nxt.append(child)
        out.append(nxt)
    return out


def build_type1a(g: int) -> TannerGraph:
    """3-regular Type I-A graph of girth g, g in {6, 8, 10, 12}."""
    perms = type1a_permutations(g)
    layers = g // 2
    m = perms.size
    b = _Builder(2 * layers)
    top = _grow_tree(b, layers, 3)[-1]
    bottom = _grow_tree(b, layers, 3, mirror=True)[-1]
    # g/2 odd: the last layer of T holds variables; otherwise the reflection does
    v, c = (top, bottom) if top[0].side == VAR else (bottom, top)
    assert len(v) == len(c) == 3 * m
    for i in range(3):
        for j in range(m):
            b.connect(v[j + i * m], c[perms.pi[j] + i * m])
            if i < 2:
                b.connect(v[j + i * m], c[perms.tau[j] + (i + 1) * m])
            else:
                b.connect(v[j + i * m], c[perms.tau_prime[j]])
    return b.emit({"family": Family.TYPE1A.value, "girth_target": g, "degree": 3})


def build_type1b(p: int, s: int = 1) -> TannerGraph:
    """q-regular Type I-B graph with q^2 + 1 nodes per side (girth 6 for q >= 3)."""
    fs = make_field(p, s)
    q = fs.q
    mols = build_mols(fs)
    b = _Builder(6)
    root = b.node(VAR, 0)
    croot = b.node(CHECK, 0, mirror=True)
    v = {}
    c = {}
    for i in range(q):
        ci = b.node(CHECK, 1, (i,))
        vi = b.node(VAR, 1, (i,), mirror=True)
        b.connect(root, ci)
        b.connect(croot, vi)
        for j in range(q):
            # j = 0 is the imaginary node of set S_i
            v[i, j] = b.node(VAR, 2, (i, j), imaginary=(j == 0))
            c[i, j] = b.node(CHECK, 2, (i, j), mirror=True, imaginary=(j == 0))
            if j:
                b.connect(ci, v[i, j])
                b.connect(vi, c[i, j])
    for i in range(q):
        for j in range(q):
            for t in range(q):
                b.connect(v[i, j], c[t, int(mols[i][j, t])])
    for i in range(q):
        b.remove(v[i, 0])
        b.remove(c[i, 0])
    for i in range(1, q):
        b.disconnect(v[0, i], c[0, i])
    meta = {"family": Family.TYPE1B.value, "p": p, "s": s, "q": q, "degree": q}
    if q < 3:
        meta["degenerate"] = True
    return b.emit(meta)


def _type2_top(b: _Builder, q: int):
    root = b.node(VAR, 0)
    B1 = [b.node(CHECK, 1, (i,)) for i in range(q + 1)]
    B2 = {}
    for i in range(q + 1):
        b.connect(root, B1[i])
        for j in range(q):
            B2[i, j] = b.node(VAR, 2, (i, j))
            b.connect(B1[i], B2[i, j])
    return root, B1, B2


def build_type2_l3(p: int, s: int = 1) -> TannerGraph:
    """(q+1)-regular girth-6 graph on 1 + q + q^2 nodes per side (PG(2, q))."""
    fs = make_field(p, s)
    q = fs.q
    mols = build_mols(fs)
    b = _Builder(4)
    _, _, B2 = _type2_top(b, q)
    A = {(k, m): b.node(CHECK, 3, (k, m)) for k in range(q) for m in range(q)}
    for k in range(q):
        for m in range(q):
            b.connect(B2[0, k], A[k, m])
    for i in range(1, q + 1):
        sq = mols[i - 1]
        for j in range(q):
            for t in range(q):
                b.connect(B2[i, j], A[t, int(sq[j, t])])
    return b.emit({"family": Family.TYPE2_L3.value, "p": p, "s": s, "q": q, "degree": q + 1})


def reduce_to_eg(g3: TannerGraph, q: int) -> TannerGraph:
    """Delete the root, its check neighbours, and A_{0,0} with its neighbours.

    The result is q-regular on q^2 - 1 nodes per side: the EG(2, q) graph.
    """
    meta = dict(g3.meta)
    if meta.get("family") != Family.TYPE2_L3.value or meta.get("q") != q:
        raise ConstructionError("reduce_to_eg expects a Type II l=3 graph built with the same q")
    if g3.var_labels is None or g3.check_labels is None:
        raise ConstructionError("reduce_to_eg needs node labels")
    b = _Builder(4)
    b.nodes.update(g3.var_labels)
    b.nodes.update(g3.check_labels)
    b.edges = {(g3.var_labels[v], g3.check_labels[c]) for v, c in g3.edges()}
    root = NodeLabel(VAR, 0)
    a00 = NodeLabel(CHECK, 3, (0, 0))
    if root not in b.nodes or a00 not in b.nodes:
        raise ConstructionError("input lacks the Type II l=3 root or A_{0,0}")
    for ci in b.neighbours(root):
        b.remove(ci)
    b.remove(root)
    for v in b.neighbours(a00):
        b.remove(v)
    b.remove(a00)
    meta.update(family=Family.TYPE2_L3_EG.value, degree=q)
    if q < 3:
        meta["degenerate"] = True
    return b.emit(meta)


def build_type2_l3_eg(p: int, s: int = 1) -> TannerGraph:
    g3 = build_type2_l3(p, s)
    return reduce_to_eg(g3, p**s)


def build_type2_l4(p: int, s: int = 1) -> TannerGraph:
    """(q+1)-regular girth-8 graph on 1 + q + q^2 + q^3 nodes per side.

    Class-0 checks B_{0,i,j} join A_{i,j,t} for every t.  For i = 1..q the
    check B_{i,j,k} joins A_{t, M[i-1][k,t], M[i mod q][j,t]}, t = 0..q-1.
    """
    fs = make_field(p, s)
    q = fs.q
    mols = build_mols(fs)
    b = _Builder(5)
    _, _, B2 = _type2_top(b, q)
    B3 = {}
    for i in range(q + 1):
        for j in range(q):
            for k in range(q):
                B3[i, j, k] = b.node(CHECK, 3, (i, j, k))
                b.connect(B2[i, j], B3[i, j, k])
    A = {key: b.node(VAR, 4, key) for key in np.ndindex(q, q, q)}
    for i in range(q):
        for j in range(q):
            for t in range(q):
                b.connect(B3[0, i, j], A[i, j, t])
    for i in range(1, q + 1):
        x_sq = mols[i - 1]
        y_sq = mols[i % q]
        for j in range(q):
            for k in range(q):
                for t in range(q):
                    b.connect(B3[i, j, k], A[t, int(x_sq[k, t]), int(y_sq[j, t])])
    return b.emit({"family": Family.TYPE2_L4.value, "p": p, "s": s, "q": q, "degree": q + 1})


def claimed_girth(family: Family | str, girth_target: int | None = None) -> int:
    family = Family(family)
    if family is Family.TYPE1A:
        return int(girth_target)
    return 8 if family is Family.TYPE2_L4 else 6


def construct(family: Family | str, *, girth: int | None = None, p: int | None = None, s: int = 1) -> TannerGraph:
    """Dispatch on family name; TYPE1A needs `girth`, the others `p` (and `s`)."""
    family = Family(family)
    if family is Family.TYPE1A:
        if girth is None:
            raise ConstructionError("type1a needs a girth")
        return build_type1a(girth)
    if p is None:
        raise ConstructionError(f"{family.value} needs p (and s)")
    return {
        Family.TYPE1B: build_type1b,
        Family.TYPE2_L3: build_type2_l3,
        Family.TYPE2_L3_EG: build_type2_l3_eg,
        Family.TYPE2_L4: build_type2_l4,
    }[family](p, s)
