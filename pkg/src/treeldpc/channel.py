"""
BPSK / AWGN Monte Carlo evaluation with iterative decoding.

Conventions: bit 0 maps to +1, bit 1 to -1; an LLR is log P(0)/P(1), so a
positive value favours 0.  The all-zero codeword is transmitted, which is
exact for linear codes on this symmetric channel.

Noise for frame batch ``b`` at sweep point ``p`` is drawn from a Philox
counter-based generator keyed by ``SeedSequence([seed, p, b])``, so results
do not depend on how batches are spread over workers.
"""

from __future__ import annotations

import math
from math import comb
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .metrics import generator_basis, gf2_rank, pack_bits, unpack_bits, _span_table, DimensionError
from .tanner import BinaryMatrix, TannerGraph, girth, to_check_matrix

MIN_SUM = "min-sum"
SUM_PRODUCT = "sum-product"


@dataclass(frozen=True)
class DecoderConfig:
    variant: str = MIN_SUM
    max_iterations: int = 50
    normalization: float = 1.0

    def __post_init__(self):
        if self.variant not in (MIN_SUM, SUM_PRODUCT):
            raise ValueError(f"unknown decoder variant {self.variant!r}")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not 0.0 < self.normalization <= 1.0:
            raise ValueError("normalization must lie in (0, 1]")


@dataclass(frozen=True)
class ChannelPoint:
    ebno_db: float
    rate: float

    def __post_init__(self):
        if not 0.0 < self.rate <= 1.0:
            raise ValueError(f"rate must lie in (0, 1], got {self.rate}")

    @property
    def sigma(self) -> float:
        return math.sqrt(1.0 / (2.0 * self.rate * 10.0 ** (self.ebno_db / 10.0)))


@dataclass(frozen=True)
class DecodeOutcome:
    bits: np.ndarray
    converged: bool
    iterations_used: int


def channel_output(word, point: ChannelPoint, rng: np.random.Generator) -> np.ndarray:
    x = 1.0 - 2.0 * np.asarray(word, dtype=np.float64)
    return x + point.sigma * rng.standard_normal(x.shape)


def channel_llr(word, point: ChannelPoint, rng: np.random.Generator) -> np.ndarray:
    y = channel_output(word, point, rng)
    return 2.0 * y / point.sigma**2


class Decoder:
    """Flooding message-passing decoder for a fixed parity-check matrix.

    Messages live on a padded (checks x max check degree) edge grid; padding
    slots point at a dummy variable and carry neutral values.
    """

    def __init__(self, H: Union[BinaryMatrix, TannerGraph], cfg: DecoderConfig = DecoderConfig()):
        if isinstance(H, TannerGraph):
            H = to_check_matrix(H)
        self.H = H
        self.cfg = cfg
        self.n, self.m = H.cols, H.rows
        dc = max((len(r) for r in H.row_supports), default=0)
        self.dc = max(dc, 1)
        cv = np.full((self.m, self.dc), self.n, dtype=np.int64)
        for c, sup in enumerate(H.row_supports):
            cv[c, : len(sup)] = sup
        self.check_vars = cv
        self.pad = cv == self.n
        # edge slots of each variable into the flattened grid; m*dc is a zero slot
        cols = H.col_supports
        dv = max((len(c) for c in cols), default=0)
        ve = np.full((self.n, max(dv, 1)), self.m * self.dc, dtype=np.int64)
        fill = [0] * self.n
        for c in range(self.m):
            for e, v in enumerate(H.row_supports[c]):
                ve[v, fill[v]] = c * self.dc + e
                fill[v] += 1
        self.var_edges = ve

    def syndrome(self, bits: np.ndarray) -> np.ndarray:
        padded = np.concatenate([bits, np.zeros(bits.shape[:-1] + (1,), dtype=bits.dtype)], axis=-1)
        return padded[..., self.check_vars].sum(axis=-1) & 1

    def _check_update(self, Q: np.ndarray) -> np.ndarray:
        if self.cfg.variant == MIN_SUM:
            mag = np.where(self.pad, np.inf, np.abs(Q))
            neg = (Q < 0) & ~self.pad
            parity = neg.sum(axis=-1, keepdims=True) & 1
            sign = np.where(neg ^ parity.astype(bool), -1.0, 1.0)
            if self.dc == 1:
                out = np.zeros_like(Q)
            else:
                two = np.partition(mag, 1, axis=-1)[..., :2]
                first = np.argmin(mag, axis=-1)[..., None]
                slot = np.arange(self.dc)
                out = np.where(slot == first, two[..., 1:2], two[..., 0:1])
                out = np.where(np.isinf(out), 0.0, out)
            R = sign * out * self.cfg.normalization
        else:
            T = np.where(self.pad, 1.0, np.tanh(0.5 * Q))
            ones = np.ones(T.shape[:-1] + (1,))
            left = np.cumprod(np.concatenate([ones, T[..., :-1]], axis=-1), axis=-1)
            right = np.cumprod(np.concatenate([ones, T[..., :0:-1]], axis=-1), axis=-1)[..., ::-1]
            prod = np.clip(left * right, -1 + 1e-12, 1 - 1e-12)
            R = 2.0 * np.arctanh(prod) * self.cfg.normalization
        return np.where(self.pad, 0.0, R)

    def decode_batch(self, llr: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Decode rows of `llr`; returns (bits, converged, iterations)."""
        llr = np.atleast_2d(np.asarray(llr, dtype=np.float64))
        if llr.shape[1] != self.n:
            raise ValueError(f"LLR length {llr.shape[1]} does not match code length {self.n}")
        B = llr.shape[0]
        bits = (llr < 0).astype(np.uint8)
        converged = ~self.syndrome(bits).any(axis=-1)
        iters = np.zeros(B, dtype=np.int64)
        active = np.flatnonzero(~converged)
        if active.size == 0:
            return bits, converged, iters
        L = np.concatenate([llr[active], np.zeros((active.size, 1))], axis=1)
        R = np.zeros((active.size, self.m, self.dc))
        post = L
        for it in range(1, self.cfg.max_iterations + 1):
            Q = post[:, self.check_vars] - R
            R = self._check_update(Q)
            flat = np.concatenate([R.reshape(R.shape[0], -1), np.zeros((R.shape[0], 1))], axis=1)
            post = L + np.concatenate(
                [flat[:, self.var_edges].sum(axis=-1), np.zeros((R.shape[0], 1))], axis=1
            )
            hard = (post[:, : self.n] < 0).astype(np.uint8)
            ok = ~self.syndrome(hard).any(axis=-1)
            bits[active] = hard
            iters[active] = it
            if ok.any():
                converged[active[ok]] = True
                keep = ~ok
                active, L, R, post = active[keep], L[keep], R[keep], post[keep]
                if active.size == 0:
                    break
        return bits, converged, iters

    def decode(self, llr) -> DecodeOutcome:
        bits, conv, iters = self.decode_batch(np.asarray(llr)[None, :])
        return DecodeOutcome(bits[0], bool(conv[0]), int(iters[0]))


def decode(H: Union[BinaryMatrix, TannerGraph], llr, cfg: DecoderConfig = DecoderConfig()) -> DecodeOutcome:
    return Decoder(H, cfg).decode(llr)


# ---------------------------------------------------------------------------
# maximum-likelihood oracle
# ---------------------------------------------------------------------------

ML_MAX_K = 20


def all_codewords(basis: np.ndarray, n: Optional[int] = None) -> np.ndarray:
    basis = np.asarray(basis, dtype=np.uint8)
    k = basis.shape[0]
    if n is None:
        n = basis.shape[1]
    if k == 0:
        return np.zeros((1, n), dtype=np.uint8)
    return unpack_bits(_span_table(pack_bits(basis)), n)


def ml_decode(basis: np.ndarray, received, n: Optional[int] = None) -> np.ndarray:
    """Codeword nearest (Euclidean) to the received BPSK vector(s).

    Ties go to the lexicographically smallest codeword.  ``received`` may be
    one vector or a (frames, n) array.
    """
    basis = np.asarray(basis, dtype=np.uint8)
    if basis.shape[0] > ML_MAX_K:
        raise DimensionError(f"ML decoding limited to k <= {ML_MAX_K}, got {basis.shape[0]}")
    y = np.asarray(received, dtype=np.float64)
    single = y.ndim == 1
    y = np.atleast_2d(y)
    n = y.shape[1] if n is None else n
    words = all_codewords(basis, n)
    # lexicographic order so that argmin picks the smallest among ties
    order = np.lexsort(words.T[::-1])
    words = words[order]
    # |y - x|^2 = const - 2 <y, x>, with x = 1 - 2c
    corr = y @ (1.0 - 2.0 * words.T)
    best = np.argmax(corr, axis=1)
    out = words[best]
    return out[0] if single else out


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


@dataclass
class PointResult:
    ebno_db: float
    frames: int = 0
    bit_errors: int = 0
    frame_errors: int = 0
    detected_errors: int = 0
    undetected_errors: int = 0
    sum_iterations: int = 0
    n: int = 0

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.frames * self.n) if self.frames else 0.0

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    @property
    def avg_iterations(self) -> float:
        return self.sum_iterations / self.frames if self.frames else 0.0

    @property
    def detected_fraction(self) -> float:
        return self.detected_errors / self.frame_errors if self.frame_errors else 0.0


@dataclass
class SimResult:
    n: int
    k: int
    config: DecoderConfig
    points: list[PointResult] = field(default_factory=list)

    CSV_HEADER = "ebno_db,frames,bit_errors,frame_errors,detected_errors,undetected_errors,ber,fer,avg_iterations"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for p in self.points:
            lines.append(
                f"{p.ebno_db:g},{p.frames},{p.bit_errors},{p.frame_errors},{p.detected_errors},"
                f"{p.undetected_errors},{p.ber:.6e},{p.fer:.6e},{p.avg_iterations:.4f}"
            )
        return "\n".join(lines) + "\n"


def _batch_rng(seed: int, point_index: int, batch_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, point_index, batch_index])))


def _run_batch(dec: Decoder, point: ChannelPoint, seed: int, pi: int, bi: int, size: int):
    rng = _batch_rng(seed, pi, bi)
    sigma = point.sigma
    y = 1.0 + sigma * rng.standard_normal((size, dec.n))
    bits, conv, iters = dec.decode_batch(2.0 * y / sigma**2)
    if np.any(conv & dec.syndrome(bits).any(axis=-1)):
        raise AssertionError("decoder flagged convergence with a nonzero syndrome")
    wrong = bits.any(axis=1)
    return (
        size,
        int(bits.sum()),
        int(wrong.sum()),
        int((wrong & ~conv).sum()),
        int((wrong & conv).sum()),
        int(iters.sum()),
    )


def run_sweep(
    G: Union[TannerGraph, BinaryMatrix],
    ebno_db: Sequence[float],
    cfg: DecoderConfig = DecoderConfig(),
    *,
    min_frame_errors: int = 100,
    max_frames: int = 10_000_000,
    seed: int = 0,
    batch_size: int = 1024,
    workers: int = 1,
    rate: Optional[float] = None,
    progress=None,
) -> SimResult:
    """Monte Carlo BER/FER over the given Eb/N0 points.

    Each point stops after the first batch that brings the frame-error count
    to ``min_frame_errors`` or the frame count to ``max_frames``.  Batches
    are evaluated in index order whatever the worker count, so the counters
    depend only on (code, cfg, seed, batch_size).
    """
    H = to_check_matrix(G) if isinstance(G, TannerGraph) else G
    n = H.cols
    k = n - gf2_rank(H)
    if rate is None:
        if k == 0:
            raise ValueError("code has dimension 0; rate undefined")
        rate = k / n
    dec = Decoder(H, cfg)
    result = SimResult(n, k, cfg)
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for pi, eb in enumerate(ebno_db):
            point = ChannelPoint(float(eb), rate)
            pr = PointResult(float(eb), n=n)
            bi = 0
            while pr.frame_errors < min_frame_errors and pr.frames < max_frames:
                remaining = max_frames - pr.frames
                sizes = []
                for j in range(max(workers, 1)):
                    s = min(batch_size, remaining - sum(sizes))
                    if s <= 0:
                        break
                    sizes.append(s)
                jobs = [(bi + j, s) for j, s in enumerate(sizes)]
                if pool is None:
                    outs = [_run_batch(dec, point, seed, pi, b, s) for b, s in jobs]
                else:
                    outs = list(pool.map(lambda js: _run_batch(dec, point, seed, pi, *js), jobs))
                for out in outs:
                    bi += 1
                    frames, be, fe, de, ue, it = out
                    pr.frames += frames
                    pr.bit_errors += be
                    pr.frame_errors += fe
                    pr.detected_errors += de
                    pr.undetected_errors += ue
                    pr.sum_iterations += it
                    if pr.frame_errors >= min_frame_errors or pr.frames >= max_frames:
                        break
            result.points.append(pr)
            if progress is not None:
                progress(pr)
    finally:
        if pool is not None:
            pool.shutdown()
    return result


# ---------------------------------------------------------------------------
# random baseline
# ---------------------------------------------------------------------------


class RandomCodeError(ValueError):
    pass


def _local_cost(A: np.ndarray, vs: tuple[int, int]) -> int:
    B = (A > 0).astype(np.int64)
    par = int(np.maximum(A[:, list(vs)] - 1, 0).sum())
    O = B[:, list(vs)].T @ B
    O[0, vs[0]] = 0
    O[1, vs[1]] = 0
    excess = np.maximum(O - 1, 0)
    cyc = int(excess.sum()) - int(excess[0, vs[1]])
    return par + cyc


def build_random_regular(n: int, dv: int, dc: int, seed=None, budget: int = 200_000) -> TannerGraph:
    """Random (dv, dc)-regular Tanner graph without parallel edges or 4-cycles.

    Stubs are matched at random, then check endpoints of a bad edge and a
    random edge are swapped (preserving all degrees).  A swap is kept when it
    does not increase the local count of parallel edges and variable pairs
    sharing more than one check.
    """
    if n <= 0 or dv <= 0 or dc <= 0:
        raise RandomCodeError("n, dv and dc must be positive")
    if (n * dv) % dc:
        raise RandomCodeError(f"n*dv = {n * dv} is not divisible by dc = {dc}")
    m = n * dv // dc
    if dv > m:
        raise RandomCodeError(f"dv = {dv} exceeds number of checks {m}")
    # without 4-cycles every pair of checks (resp. variables) has at most one common neighbour
    if n * comb(dv, 2) > comb(m, 2) or m * comb(dc, 2) > comb(n, 2):
        raise RandomCodeError(f"no 4-cycle-free ({dv},{dc})-regular graph exists with n = {n}")
    rng = np.random.default_rng(seed)
    var_of = np.repeat(np.arange(n), dv)
    chk_of = rng.permutation(np.repeat(np.arange(m), dc))
    A = np.zeros((m, n), dtype=np.int64)
    np.add.at(A, (chk_of, var_of), 1)

    def bad_edges():
        B = (A > 0).astype(np.int64)
        O = B.T @ B
        np.fill_diagonal(O, 0)
        shared = (O > 1).any(axis=1)
        return np.flatnonzero((A[chk_of, var_of] > 1) | shared[var_of])

    bad = bad_edges()
    attempts = 0
    while bad.size:
        if attempts >= budget:
            raise RandomCodeError(f"edge-swap budget {budget} exhausted with {bad.size} bad edges")
        e = int(rng.choice(bad))
        f = int(rng.integers(len(var_of)))
        attempts += 1
        v1, c1, v2, c2 = var_of[e], chk_of[e], var_of[f], chk_of[f]
        if v1 == v2 or c1 == c2:
            continue
        vs = (int(v1), int(v2))
        before = _local_cost(A, vs)
        A[c1, v1] -= 1
        A[c2, v2] -= 1
        A[c2, v1] += 1
        A[c1, v2] += 1
        # occasional uphill moves keep the walk from stalling
        if _local_cost(A, vs) <= before or rng.random() < 0.02:
            chk_of[e], chk_of[f] = c2, c1
            bad = bad_edges()
        else:
            A[c2, v1] -= 1
            A[c1, v2] -= 1
            A[c1, v1] += 1
            A[c2, v2] += 1
    edges = list(zip(var_of.tolist(), chk_of.tolist()))
    G = TannerGraph.from_edges(n, m, edges)
    meta = {"family": "random", "n": n, "dv": dv, "dc": dc, "seed": seed, "girth": girth(G), "swap_attempts": attempts}
    return TannerGraph(G.num_vars, G.num_checks, G.var_adj, meta=meta)
