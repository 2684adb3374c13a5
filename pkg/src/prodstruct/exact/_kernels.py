"""Subset-DP kernels for treewidth and pathwidth.

These two dynamic programs are the hot loops of the exact module: both walk
all 2^n subsets with bitmask state.  The functions below are written in
nopython-compatible style over numpy arrays and are jit-compiled with numba
by default.  Setting PRODSTRUCT_PURE=1 (or a failed numba import) selects the
identical pure-Python/numpy path; results are bit-for-bit the same either
way.  benchmarks/bench_kernels.py compares the two.
"""

import os

import numpy as np

USE_NUMBA = os.environ.get("PRODSTRUCT_PURE", "") not in ("1", "true", "yes")
if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:      # pragma: no cover - environment dependent
        USE_NUMBA = False

INF = 127


def _treewidth_dp(adj, n):
    """dp[S] = min over orderings of S-prefixes of the max elimination degree.

    adj: int64[n] neighborhood bitmasks.  The elimination degree of v after
    eliminating T is |Q(T, v)|: vertices outside T u {v} reachable from v
    through T.  dp[full] is the treewidth.
    """
    size = 1 << n
    full = size - 1
    dp = np.empty(size, dtype=np.int8)
    dp[0] = 0
    for s in range(1, size):
        best = INF
        rest = s
        while rest:
            bit = rest & (-rest)
            rest ^= bit
            v = 0
            b = bit
            while b > 1:
                b >>= 1
                v += 1
            t = s ^ bit
            # component of v in t u {v}, grown through t
            comp = bit
            while True:
                nxt = comp
                r2 = comp
                while r2:
                    b2 = r2 & (-r2)
                    r2 ^= b2
                    w = 0
                    bb = b2
                    while bb > 1:
                        bb >>= 1
                        w += 1
                    nxt |= adj[w] & t
                if nxt == comp:
                    break
                comp = nxt
            # neighbors of the component outside t u {v}
            boundary = 0
            r2 = comp
            while r2:
                b2 = r2 & (-r2)
                r2 ^= b2
                w = 0
                bb = b2
                while bb > 1:
                    bb >>= 1
                    w += 1
                boundary |= adj[w]
            q = boundary & (full ^ t ^ bit)
            cnt = 0
            while q:
                q &= q - 1
                cnt += 1
            cand = dp[t]
            if cnt > cand:
                cand = cnt
            if cand < best:
                best = cand
        dp[s] = best
    return dp


def _pathwidth_dp(adj, n):
    """Vertex-separation DP: dp[S] = max(b(S), min_v dp[S without v]).

    b(S) = |N(S) \\ S|.  dp[full] is the pathwidth.
    """
    size = 1 << n
    dp = np.empty(size, dtype=np.int8)
    nb = np.zeros(size, dtype=np.int64)
    dp[0] = 0
    for s in range(1, size):
        low = s & (-s)
        v = 0
        b = low
        while b > 1:
            b >>= 1
            v += 1
        nbs = nb[s ^ low] | adj[v]
        nb[s] = nbs
        q = nbs & ~s
        boundary = 0
        while q:
            q &= q - 1
            boundary += 1
        best = INF
        rest = s
        while rest:
            bit = rest & (-rest)
            rest ^= bit
            d = dp[s ^ bit]
            if d < best:
                best = d
        if boundary > best:
            best = boundary
        dp[s] = best
    return dp


if USE_NUMBA:
    _treewidth_dp = njit(cache=True)(_treewidth_dp)
    _pathwidth_dp = njit(cache=True)(_pathwidth_dp)


def treewidth_dp(masks):
    adj = np.asarray(masks, dtype=np.int64)
    return _treewidth_dp(adj, len(masks))


def pathwidth_dp(masks):
    adj = np.asarray(masks, dtype=np.int64)
    return _pathwidth_dp(adj, len(masks))
