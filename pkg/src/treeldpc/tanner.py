"""
Tanner graphs, sparse binary parity-check matrices and alist interchange.

Variables are columns of H and checks are rows.  A graph stores, for every
variable, the sorted tuple of its check neighbours; the check-side view is
derived and kept consistent.
"""

from __future__ import annotations

import io
import math
import os
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, TextIO, Union

import numpy as np

INFINITE = math.inf


@dataclass(frozen=True, order=True)
class NodeLabel:
    """Provenance of a node in a tree-based construction.

    ``path`` lists branch indices from the root (or the family-specific
    subscripts such as the (k, m) of a closing-layer node).  ``mirror`` marks
    nodes of the reflected tree in Type I graphs.
    """

    side: str
    layer: int
    path: tuple[int, ...] = ()
    mirror: bool = False
    imaginary: bool = False


@dataclass(frozen=True)
class BinaryMatrix:
    rows: int
    cols: int
    row_supports: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.row_supports) != self.rows:
            raise ValueError(f"expected {self.rows} row supports, got {len(self.row_supports)}")
        for r, sup in enumerate(self.row_supports):
            if any(b <= a for a, b in zip(sup, sup[1:])):
                raise ValueError(f"row {r}: support not strictly increasing")
            if sup and (sup[0] < 0 or sup[-1] >= self.cols):
                raise ValueError(f"row {r}: column index out of range")

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def col_supports(self) -> tuple[tuple[int, ...], ...]:
        cols: list[list[int]] = [[] for _ in range(self.cols)]
        for r, sup in enumerate(self.row_supports):
            for c in sup:
                cols[c].append(r)
        return tuple(tuple(c) for c in cols)

    def to_dense(self, dtype=np.uint8) -> np.ndarray:
        H = np.zeros((self.rows, self.cols), dtype=dtype)
        for r, sup in enumerate(self.row_supports):
            H[r, list(sup)] = 1
        return H

    @classmethod
    def from_dense(cls, H) -> "BinaryMatrix":
        H = np.asarray(H) % 2
        if H.ndim != 2:
            raise ValueError("matrix must be two-dimensional")
        rows, cols = H.shape
        return cls(rows, cols, tuple(tuple(np.flatnonzero(row).tolist()) for row in H))

    def syndrome(self, word) -> np.ndarray:
        w = np.asarray(word, dtype=np.int64)
        return np.array([int(w[list(sup)].sum()) & 1 for sup in self.row_supports], dtype=np.uint8)


@dataclass(frozen=True)
class TannerGraph:
    num_vars: int
    num_checks: int
    var_adj: tuple[tuple[int, ...], ...]
    var_labels: Optional[tuple[NodeLabel, ...]] = None
    check_labels: Optional[tuple[NodeLabel, ...]] = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.var_adj) != self.num_vars:
            raise ValueError("adjacency length does not match num_vars")
        for v, nbrs in enumerate(self.var_adj):
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"variable {v}: duplicate check neighbour")
            if any(not 0 <= c < self.num_checks for c in nbrs):
                raise ValueError(f"variable {v}: check index out of range")
        if self.var_labels is not None and len(self.var_labels) != self.num_vars:
            raise ValueError("variable label count mismatch")
        if self.check_labels is not None and len(self.check_labels) != self.num_checks:
            raise ValueError("check label count mismatch")

    @classmethod
    def from_edges(cls, num_vars: int, num_checks: int, edges: Iterable[tuple[int, int]], **kw):
        adj: list[set[int]] = [set() for _ in range(num_vars)]
        for v, c in edges:
            if c in adj[v]:
                raise ValueError(f"parallel edge ({v}, {c})")
            adj[v].add(c)
        return cls(num_vars, num_checks, tuple(tuple(sorted(a)) for a in adj), **kw)

    @classmethod
    def from_matrix(cls, H: BinaryMatrix, **kw) -> "TannerGraph":
        return cls(H.cols, H.rows, H.col_supports, **kw)

    @property
    def check_adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.num_checks)]
        for v, nbrs in enumerate(self.var_adj):
            for c in nbrs:
                adj[c].append(v)
        return tuple(tuple(a) for a in adj)

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.var_adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(v, c) for v, nbrs in enumerate(self.var_adj) for c in nbrs]


def degree_profile(G: TannerGraph) -> dict[str, dict[int, int]]:
    """Histogram degree -> count for each side."""
    return {
        "variables": dict(sorted(Counter(len(a) for a in G.var_adj).items())),
        "checks": dict(sorted(Counter(len(a) for a in G.check_adj).items())),
    }


def _node_adjacency(G: TannerGraph) -> list[list[int]]:
    # variables are 0..n-1, checks n..n+m-1
    n = G.num_vars
    adj = [[n + c for c in nbrs] for nbrs in G.var_adj]
    adj.extend([list(a) for a in G.check_adj])
    return adj


def girth(G: TannerGraph) -> Union[int, float]:
    """Length of the shortest cycle, or ``INFINITE`` for a forest.

    Runs a breadth-first search from every node.  A non-tree edge (u, w)
    met during the search from r closes a closed walk through r of length
    dist[u] + dist[w] + 1, which contains a cycle no longer than that; the
    minimum over all roots is attained by a root lying on a shortest cycle,
    so the result is exact.
    """
    adj = _node_adjacency(G)
    best = INFINITE
    N = len(adj)
    dist = [-1] * N
    parent = [-1] * N
    for root in range(N):
        touched = [root]
        dist[root] = 0
        parent[root] = -1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            du = dist[u]
            if 2 * du + 1 >= best:
                break
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent[w] = u
                    touched.append(w)
                    queue.append(w)
                elif w != parent[u]:
                    cyc = du + dist[w] + 1
                    if cyc < best:
                        best = cyc
        for x in touched:
            dist[x] = -1
            parent[x] = -1
    return best


def to_check_matrix(G: TannerGraph) -> BinaryMatrix:
    return BinaryMatrix(G.num_checks, G.num_vars, G.check_adj)


# ---------------------------------------------------------------------------
# alist
# ---------------------------------------------------------------------------


class AlistError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def format_alist(H: BinaryMatrix) -> str:
    cols = H.col_supports
    rows = H.row_supports
    col_deg = [len(c) for c in cols]
    row_deg = [len(r) for r in rows]
    lines = [
        f"{H.cols} {H.rows}",
        f"{max(col_deg, default=0)} {max(row_deg, default=0)}",
        " ".join(map(str, col_deg)),
        " ".join(map(str, row_deg)),
    ]
    lines.extend(" ".join(str(r + 1) for r in c) for c in cols)
    lines.extend(" ".join(str(c + 1) for c in r) for r in rows)
    return "\n".join(lines) + "\n"


def write_alist(H: BinaryMatrix, sink: Union[str, os.PathLike, TextIO]) -> None:
    text = format_alist(H)
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        with open(sink, "w", encoding="ascii") as f:
            f.write(text)


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise AlistError(lineno, f"non-integer token in {line.strip()!r}") from None


def parse_alist(text: str) -> BinaryMatrix:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()

    def get(i: int) -> list[int]:
        return _ints(lines[i], i + 1) if i < len(lines) else []

    header = get(0)
    if len(header) != 2 or min(header, default=-1) < 0:
        raise AlistError(1, "expected 'N M' with non-negative integers")
    n, m = header
    maxima = get(1)
    if len(maxima) != 2 or min(maxima) < 0:
        raise AlistError(2, "expected 'max_var_degree max_check_degree'")
    max_vd, max_cd = maxima
    col_deg = get(2)
    row_deg = get(3)
    if len(col_deg) != n:
        raise AlistError(3, f"expected {n} variable degrees, got {len(col_deg)}")
    if len(row_deg) != m:
        raise AlistError(4, f"expected {m} check degrees, got {len(row_deg)}")
    for lineno, degs, cap, kind in ((3, col_deg, max_vd, "variable"), (4, row_deg, max_cd, "check")):
        for d in degs:
            if d < 0 or d > cap:
                raise AlistError(lineno, f"{kind} degree {d} outside [0, declared max {cap}]")

    def read_lists(start: int, count: int, degs: list[int], bound: int, kind: str):
        out = []
        for i in range(count):
            lineno = start + i + 1
            vals = get(start + i)
            while vals and vals[-1] == 0:
                vals.pop()
            if len(vals) != degs[i]:
                raise AlistError(lineno, f"{kind} {i + 1}: declared degree {degs[i]}, found {len(vals)} entries")
            for x in vals:
                if not 1 <= x <= bound:
                    raise AlistError(lineno, f"index {x} out of range 1..{bound}")
            if len(set(vals)) != len(vals):
                raise AlistError(lineno, "repeated index")
            out.append(tuple(sorted(x - 1 for x in vals)))
        return out

    cols = read_lists(4, n, col_deg, m, "variable")
    rows = read_lists(4 + n, m, row_deg, n, "check")
    extra = 4 + n + m
    if len(lines) > extra:
        raise AlistError(extra + 1, "unexpected trailing content")
    H = BinaryMatrix(m, n, tuple(rows))
    if H.col_supports != tuple(cols):
        # locate the first inconsistent variable line
        for j, (a, b) in enumerate(zip(H.col_supports, cols)):
            if a != b:
                raise AlistError(5 + j, f"variable {j + 1} list disagrees with check lists")
    return H


def read_alist(source: Union[str, os.PathLike, TextIO]) -> BinaryMatrix:
    if hasattr(source, "read"):
        return parse_alist(source.read())
    with open(source, "r", encoding="ascii") as f:
        return parse_alist(f.read())


def alist_roundtrip(H: BinaryMatrix) -> BinaryMatrix:
    buf = io.StringIO()
    write_alist(H, buf)
    return parse_alist(buf.getvalue())
