"""Slow, independent reference implementations used only by the tests."""

import itertools
from collections import deque

import numpy as np


def girth_by_edge_removal(var_adj, num_checks):
    """Shortest cycle = min over edges (u, w) of 1 + dist(u, w) in G - (u, w)."""
    n = len(var_adj)
    adj = [set() for _ in range(n + num_checks)]
    for v, nbrs in enumerate(var_adj):
        for c in nbrs:
            adj[v].add(n + c)
            adj[n + c].add(v)
    best = float("inf")
    for v, nbrs in enumerate(var_adj):
        for c in nbrs:
            u, w = v, n + c
            dist = {u: 0}
            q = deque([u])
            while q:
                x = q.popleft()
                for y in adj[x]:
                    if (x, y) in ((u, w), (w, u)) or y in dist:
                        continue
                    dist[y] = dist[x] + 1
                    q.append(y)
            if w in dist:
                best = min(best, dist[w] + 1)
    return best


def brute_force_dmin(H):
    """Minimum nonzero weight over all 2^n words with zero syndrome."""
    H = np.asarray(H, dtype=np.int64)
    n = H.shape[1]
    best = None
    for bits in itertools.product((0, 1), repeat=n):
        x = np.array(bits)
        w = int(x.sum())
        if w and (best is None or w < best) and not np.any(H @ x % 2):
            best = w
    return best


def naive_span_dmin(basis):
    """Minimum weight over all nonzero combinations, plain double loop."""
    basis = np.asarray(basis, dtype=np.int64)
    k, n = basis.shape
    best = None
    for mask in range(1, 2**k):
        word = np.zeros(n, dtype=np.int64)
        for i in range(k):
            if mask >> i & 1:
                word ^= basis[i]
        w = int(word.sum())
        if best is None or w < best:
            best = w
    return best


def gf2_rank_naive(H):
    A = [list(map(int, row)) for row in np.asarray(H) % 2]
    rank, cols = 0, len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                A[r] = [a ^ b for a, b in zip(A[r], A[rank])]
        rank += 1
    return rank


def naive_message_passing(H, llr, iterations, variant="min-sum", alpha=1.0):
    """Edge-by-edge flooding decoder with Python loops; returns (bits, iters, converged)."""
    H = np.asarray(H)
    m, n = H.shape
    edges = [(c, v) for c in range(m) for v in range(n) if H[c, v]]
    R = {e: 0.0 for e in edges}
    llr = np.asarray(llr, dtype=float)
    bits = (llr < 0).astype(int)
    if not np.any(H @ bits % 2):
        return bits, 0, True
    for it in range(1, iterations + 1):
        post = llr.copy()
        for (c, v), r in R.items():
            post[v] += r
        Q = {(c, v): post[v] - R[c, v] for (c, v) in edges}
        newR = {}
        for c, v in edges:
            others = [Q[c, u] for u in range(n) if H[c, u] and u != v]
            if not others:
                newR[c, v] = 0.0
            elif variant == "min-sum":
                sign = np.prod(np.sign(others)) if all(others) else np.prod([1.0 if x >= 0 else -1.0 for x in others])
                newR[c, v] = alpha * sign * min(abs(x) for x in others)
            else:
                t = np.prod([np.tanh(x / 2) for x in others])
                t = min(max(t, -1 + 1e-12), 1 - 1e-12)
                newR[c, v] = alpha * 2 * np.arctanh(t)
        R = newR
        post = llr.copy()
        for (c, v), r in R.items():
            post[v] += r
        bits = (post < 0).astype(int)
        if not np.any(H @ bits % 2):
            return bits, it, True
    return bits, iterations, False
