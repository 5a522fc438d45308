"""
GF(2) linear algebra on parity-check matrices, minimum distance, and the
tree bound.

Codewords are handled as packed uint64 words (``pack_bits``) so that weight
evaluation over many codewords is a vectorised XOR + popcount.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .tanner import BinaryMatrix, TannerGraph, degree_profile, girth, to_check_matrix

DEFAULT_CAP_K = 26


class DimensionError(ValueError):
    """Code dimension too large for exhaustive enumeration."""


def tree_bound(d: int, g: int) -> int:
    """Tree lower bound on d_min (and on the minimal pseudocodeword weight).

    d is the smallest variable degree and g the girth.  For g/2 odd the bound
    is 1 + d + d(d-1) + ... + d(d-1)^((g-6)/4); for g/2 even it is
    1 + d + ... + d(d-1)^((g-8)/4) + (d-1)^((g-4)/4).
    """
    if d < 2:
        raise ValueError(f"degree must be >= 2, got {d}")
    if g < 6 or g % 2:
        raise ValueError(f"girth must be even and >= 6, got {g}")
    half = g // 2
    if half % 2:
        top = (g - 6) // 4
        return 1 + sum(d * (d - 1) ** i for i in range(top + 1))
    top = (g - 8) // 4
    return 1 + sum(d * (d - 1) ** i for i in range(top + 1)) + (d - 1) ** ((g - 4) // 4)


# ---------------------------------------------------------------------------
# packed GF(2) rows
# ---------------------------------------------------------------------------


def as_dense(H: Union[BinaryMatrix, np.ndarray]) -> np.ndarray:
    if isinstance(H, BinaryMatrix):
        return H.to_dense()
    return (np.asarray(H) % 2).astype(np.uint8)


def pack_bits(words: np.ndarray) -> np.ndarray:
    """(..., n) 0/1 array -> (..., ceil(n/64)) uint64."""
    words = np.asarray(words, dtype=np.uint8)
    n = words.shape[-1]
    nw = max(1, -(-n // 64))
    pad = np.zeros(words.shape[:-1] + (nw * 64 - n,), dtype=np.uint8)
    bits = np.concatenate([words, pad], axis=-1)
    packed = np.packbits(bits, axis=-1, bitorder="little")
    return packed.view(np.uint64).reshape(words.shape[:-1] + (nw,))


def unpack_bits(packed: np.ndarray, n: int) -> np.ndarray:
    packed = np.ascontiguousarray(packed, dtype=np.uint64)
    bytes_ = packed.view(np.uint8)
    return np.unpackbits(bytes_, axis=-1, bitorder="little")[..., :n]


def popcount(packed: np.ndarray) -> np.ndarray:
    return np.bitwise_count(packed).sum(axis=-1, dtype=np.int64)


def _rref(A: np.ndarray, col_order=None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2); returns (rows, pivot columns)."""
    A = A.copy()
    m, n = A.shape
    cols = range(n) if col_order is None else col_order
    pivots = []
    r = 0
    for c in cols:
        if r == m:
            break
        hits = np.flatnonzero(A[r:, c])
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        A[others] ^= A[r]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def gf2_rank(H: Union[BinaryMatrix, np.ndarray]) -> int:
    A = as_dense(H)
    if A.size == 0:
        return 0
    # packed rows as Python ints; elimination by leading bit
    basis: dict[int, int] = {}
    for row in A:
        x = int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
        while x:
            lead = x.bit_length() - 1
            if lead in basis:
                x ^= basis[lead]
            else:
                basis[lead] = x
                break
    return len(basis)


def generator_basis(H: Union[BinaryMatrix, np.ndarray], n: Optional[int] = None) -> np.ndarray:
    """Rows spanning the null space of H over GF(2), shape (k, n)."""
    A = as_dense(H)
    if n is None:
        n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.uint8)
    R, pivots = _rref(A)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, p in enumerate(pivots):
            basis[i, p] = R[r, f]
    return basis


def _span_table(rows_packed: np.ndarray) -> np.ndarray:
    """All 2^r XOR combinations of the given packed rows (index bits = rows)."""
    r, nw = rows_packed.shape
    table = np.zeros((1 << r, nw), dtype=np.uint64)
    for b in range(r):
        table[1 << b : 1 << (b + 1)] = table[: 1 << b] ^ rows_packed[b]
    return table


def iter_codewords_packed(basis: np.ndarray, low_bits: int = 14):
    """Yield blocks of packed codewords covering the whole code exactly once.

    The low `low_bits` basis rows are tabulated; the remaining rows are walked
    in Gray-code order, one row XOR per block.
    """
    basis = np.asarray(basis, dtype=np.uint8)
    k = basis.shape[0]
    packed = pack_bits(basis)
    lo = min(k, low_bits)
    table = _span_table(packed[:lo])
    high = packed[lo:]
    offset = np.zeros(packed.shape[1], dtype=np.uint64)
    yield table
    for step in range(1, 1 << (k - lo)):
        # bit flipped between Gray codes of step-1 and step
        flip = (step & -step).bit_length() - 1
        offset = offset ^ high[flip]
        yield table ^ offset


def dmin_exact(basis: np.ndarray, cap_k: int = DEFAULT_CAP_K) -> Optional[int]:
    """Minimum nonzero codeword weight by exhaustive enumeration.

    Returns None for the zero code (no nonzero codewords).  Raises
    DimensionError when k exceeds ``cap_k``.
    """
    basis = np.asarray(basis, dtype=np.uint8)
    k = basis.shape[0]
    if k > cap_k:
        raise DimensionError(f"dimension {k} exceeds exhaustive cap {cap_k}")
    if k == 0:
        return None
    best = basis.shape[1] + 1
    first = True
    for block in iter_codewords_packed(basis):
        w = popcount(block)
        if first:
            w = w[1:]  # drop the zero codeword
            first = False
        if w.size:
            best = min(best, int(w.min()))
    return best


# ---------------------------------------------------------------------------
# randomized information-set search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LowWeightResult:
    weight: int
    codeword: np.ndarray


def _combo_min(G: np.ndarray) -> tuple[int, np.ndarray]:
    """Lightest nonzero XOR of one, two or three rows of packed G."""
    k = G.shape[0]
    best_w = np.iinfo(np.int64).max
    best = None
    w1 = popcount(G)
    i = int(w1.argmin())
    best_w, best = int(w1[i]), G[i]
    if k >= 2:
        iu, ju = np.triu_indices(k, 1)
        pairs = G[iu] ^ G[ju]
        w2 = popcount(pairs)
        i = int(w2.argmin())
        if w2[i] < best_w:
            best_w, best = int(w2[i]), pairs[i]
        if k >= 3:
            for a in range(k - 2):
                sel = iu > a
                trip = pairs[sel] ^ G[a]
                w3 = popcount(trip)
                i = int(w3.argmin())
                if w3[i] < best_w:
                    best_w, best = int(w3[i]), trip[i]
    return best_w, best


def low_weight_search(
    H: Union[BinaryMatrix, np.ndarray],
    w_max: int,
    budget: int = 1000,
    seed=None,
    *,
    basis: Optional[np.ndarray] = None,
) -> Optional[LowWeightResult]:
    """Randomized information-set search for a codeword of weight <= w_max.

    Each round permutes the columns at random, brings the generator to
    systematic form on the resulting information set, and scans every row
    and every sum of two or three rows.  The lightest codeword found over
    all rounds is returned if its weight is at most ``w_max``; the witness
    is syndrome-checked, so the weight is a certified upper bound on d_min.
    """
    A = as_dense(H)
    n = A.shape[1]
    if basis is None:
        basis = generator_basis(A, n)
    k = basis.shape[0]
    if k == 0:
        return None
    rng = np.random.default_rng(seed)
    best_w, best = n + 1, None
    for _ in range(budget):
        order = rng.permutation(n)
        R, _ = _rref(basis, order)
        w, word = _combo_min(pack_bits(R))
        if w < best_w:
            best_w, best = w, word
    if best is None or best_w > w_max:
        return None
    codeword = unpack_bits(best, n)
    if codeword.sum() != best_w or np.any((A.astype(np.int64) @ codeword) % 2):
        raise AssertionError("search produced an invalid witness")
    return LowWeightResult(best_w, codeword)


def dmin_search_upper(H, w_max: int, budget: int = 1000, seed=None) -> Optional[int]:
    res = low_weight_search(H, w_max, budget, seed)
    return None if res is None else res.weight


# ---------------------------------------------------------------------------
# profile
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DminStatus:
    """kind is one of 'exact', 'bounded', 'unknown', 'empty' (k = 0)."""

    kind: str
    value: Optional[int] = None
    lower: Optional[int] = None
    upper: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == "exact":
            return f"exact({self.value})"
        if self.kind == "bounded":
            up = "?" if self.upper is None else self.upper
            return f"bounded({self.lower},{up})"
        if self.kind == "empty":
            return "no codewords"
        return "unknown"


@dataclass(frozen=True)
class CodeProfile:
    n: int
    m: int
    rank_h: int
    k: int
    girth: Union[int, float]
    min_var_degree: int
    degrees: dict
    tree_bound: Optional[int]
    dmin_status: DminStatus

    @property
    def rate(self) -> float:
        return self.k / self.n if self.n else 0.0

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "rank": self.rank_h,
            "k": self.k,
            "rate": f"{self.rate:.6f}",
            "girth": "inf" if math.isinf(self.girth) else int(self.girth),
            "var_degrees": _fmt_hist(self.degrees["variables"]),
            "check_degrees": _fmt_hist(self.degrees["checks"]),
            "tree_bound": "none" if self.tree_bound is None else self.tree_bound,
            "dmin_status": str(self.dmin_status),
        }


def _fmt_hist(h: dict) -> str:
    return ",".join(f"{d}:{c}" for d, c in sorted(h.items())) or "-"


def safe_tree_bound(d: int, g) -> Optional[int]:
    if d < 2 or math.isinf(g) or g < 6:
        return None
    return tree_bound(d, int(g))


def profile(
    G: Union[TannerGraph, BinaryMatrix],
    dmin_mode: str = "auto",
    *,
    w_max: Optional[int] = None,
    budget: int = 1000,
    seed=0,
    cap_k: int = DEFAULT_CAP_K,
) -> CodeProfile:
    """Summarise a code.

    dmin_mode: 'exact' (raise DimensionError above cap_k), 'auto' (exact
    when k <= cap_k, else bounded), 'bounded' (search only) or 'none'.
    """
    if isinstance(G, BinaryMatrix):
        G = TannerGraph.from_matrix(G)
    H = to_check_matrix(G)
    A = H.to_dense()
    n, m = G.num_vars, G.num_checks
    rank = gf2_rank(A)
    k = n - rank
    g = girth(G)
    degs = degree_profile(G)
    dmin_v = min(degs["variables"], default=0)
    tb = safe_tree_bound(dmin_v, g)

    if dmin_mode not in {"exact", "auto", "bounded", "none"}:
        raise ValueError(f"unknown dmin mode {dmin_mode!r}")
    if k == 0:
        status = DminStatus("empty")
    elif dmin_mode == "none":
        status = DminStatus("unknown")
    elif dmin_mode == "exact" or (dmin_mode == "auto" and k <= cap_k):
        d = dmin_exact(generator_basis(A, n), cap_k)
        status = DminStatus("exact", value=d)
    else:
        limit = n if w_max is None else w_max
        res = low_weight_search(A, limit, budget, seed)
        status = DminStatus(
            "bounded", lower=tb if tb is not None else 1, upper=None if res is None else res.weight
        )
    return CodeProfile(n, m, rank, k, g, dmin_v, degs, tb, status)
