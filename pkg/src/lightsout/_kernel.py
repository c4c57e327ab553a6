"""Compiled batch sampler and solvability counter.

Every trial owns a xoshiro256** generator whose state is derived from
``(seed, stream, trial)`` with splitmix64, so a trial's result does not depend
on which worker runs it or on how trials are chunked.

Within an attempt the accept/reject coin is flipped right after the
permutation is drawn, before any pair orbit is switched on.  The acceptance
ratio depends only on the permutation's cycle type, and the coin is
independent of the orbit draws, so this reordering leaves the distribution of
every attempt unchanged while skipping the orbit work for rejected
permutations.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from .sampler import AcceptanceError, compute_weights, inclusion_probability

GENERATOR_NAME = "xoshiro256** (splitmix64-seeded per trial)"

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True, inline="always")
def _rotl(x, k):
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


@njit(cache=True)
def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def seed_state(st, seed, stream, trial):
    h = _mix(seed + _GOLDEN)
    h = _mix(h ^ (stream + _GOLDEN))
    h = _mix(h ^ (trial + _GOLDEN))
    for k in range(4):
        h = h + _GOLDEN
        st[k] = _mix(h)


@njit(cache=True)
def next_u64(st):
    s0, s1, s2, s3 = st[0], st[1], st[2], st[3]
    result = _rotl(s1 * np.uint64(5), 7) * np.uint64(9)
    t = s1 << np.uint64(17)
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = _rotl(s3, 45)
    st[0], st[1], st[2], st[3] = s0, s1, s2, s3
    return result


@njit(cache=True)
def uniform(st):
    """Uniform double in [0, 1) from the top 53 bits."""
    return (next_u64(st) >> np.uint64(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True)
def below(st, k):
    return min(int(uniform(st) * k), k - 1)


@njit(cache=True)
def gf2_full_rank(rows, n):
    """Whether the closed-neighbourhood matrix of the rows is invertible."""
    work = np.empty(n, dtype=np.uint64)
    for v in range(n):
        work[v] = rows[v] | (np.uint64(1) << np.uint64(v))
    for col in range(n):
        bit = np.uint64(1) << np.uint64(col)
        piv = -1
        for r in range(col, n):
            if work[r] & bit:
                piv = r
                break
        if piv < 0:
            return False
        t = work[piv]
        work[piv] = work[col]
        work[col] = t
        for r in range(col + 1, n):
            if work[r] & bit:
                work[r] ^= t
    return True


@njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _sample_rows(n, e, cum, ivals, incl, logpq, logacc0, pidx, st, perm, visited, cyc, rows):
    """One accepted sample written into ``rows``; returns the number of attempts."""
    attempts = 0
    one = np.uint64(1)
    while True:
        attempts += 1
        u = uniform(st)
        k = 0
        while k < cum.shape[0] - 1 and cum[k] <= u:
            k += 1
        i = ivals[k]
        for a in range(n):
            perm[a] = a
        if i > 0:
            while True:
                for a in range(i):
                    perm[a] = a
                ok = True
                for a in range(i - 1, 0, -1):
                    j = below(st, a + 1)
                    t = perm[a]
                    perm[a] = perm[j]
                    perm[j] = t
                    if perm[a] == a:
                        ok = False
                        break
                if ok and perm[0] != 0:
                    break
            # orbit-size histogram from the cycle type
            for a in range(i):
                visited[a] = 0
            nc = 0
            for a in range(i):
                if visited[a]:
                    continue
                length = 0
                x = a
                while not visited[x]:
                    visited[x] = 1
                    length += 1
                    x = perm[x]
                cyc[nc] = length
                nc += 1
            nfix = n - i
            logh = 0.0
            for c in range(nc):
                a = cyc[c]
                if a % 2 == 1:
                    logh += ((a - 1) // 2) * logpq[k, a]
                else:
                    logh += ((a - 2) // 2) * logpq[k, a] + logpq[k, a // 2]
                logh += nfix * logpq[k, a]
                for d in range(c + 1, nc):
                    b = cyc[d]
                    g = _gcd(a, b)
                    logh += g * logpq[k, a * b // g]
            ratio = logacc0[k] + logh
            if ratio > 1e-9:
                return -attempts
            if math.log1p(-uniform(st)) > min(ratio, 0.0):
                continue
        # switch pair orbits on, abandoning the attempt once e is exceeded
        npairs = n * (n - 1) // 2
        for t in range(npairs):
            visited[t] = 0
        for v in range(n):
            rows[v] = np.uint64(0)
        edges = 0
        over = False
        for a in range(n):
            for b in range(a + 1, n):
                if visited[pidx[a * n + b]]:
                    continue
                size = 0
                x, y = a, b
                while True:
                    ii = pidx[x * n + y] if x < y else pidx[y * n + x]
                    if visited[ii]:
                        break
                    visited[ii] = 1
                    size += 1
                    x = perm[x]
                    y = perm[y]
                if uniform(st) < incl[k, size]:
                    edges += size
                    if edges > e:
                        over = True
                        break
                    x, y = a, b
                    for _ in range(size):
                        rows[x] |= one << np.uint64(y)
                        rows[y] |= one << np.uint64(x)
                        x = perm[x]
                        y = perm[y]
            if over:
                break
        if over or edges != e:
            continue
        return attempts


@njit(cache=True)
def _batch(n, e, flip, cum, ivals, incl, logpq, logacc0, pidx, seed, stream, t0, t1, out_rows, out_attempts, out_solvable, keep_rows):
    npairs = n * (n - 1) // 2
    st = np.empty(4, dtype=np.uint64)
    perm = np.empty(n, dtype=np.int64)
    visited = np.empty(max(npairs, n), dtype=np.int64)
    cyc = np.empty(n, dtype=np.int64)
    rows = np.empty(n, dtype=np.uint64)
    full = np.uint64(0)
    for v in range(n):
        full |= np.uint64(1) << np.uint64(v)
    for t in range(t0, t1):
        seed_state(st, seed, stream, np.uint64(t))
        if e == 0:
            for v in range(n):
                rows[v] = np.uint64(0)
            attempts = 1
        else:
            attempts = _sample_rows(n, e, cum, ivals, incl, logpq, logacc0, pidx, st, perm, visited, cyc, rows)
        if flip:
            for v in range(n):
                rows[v] = full ^ rows[v] ^ (np.uint64(1) << np.uint64(v))
        out_attempts[t - t0] = attempts
        if attempts < 0:
            return
        out_solvable[t - t0] = gf2_full_rank(rows, n)
        if keep_rows:
            for v in range(n):
                out_rows[t - t0, v] = rows[v]


class KernelTables:
    """Numeric tables for one ``(n, e)`` in the layout the kernel reads."""

    def __init__(self, n: int, e: int, bound: str = "tight"):
        N = n * (n - 1) // 2
        if not 0 <= e <= N:
            raise ValueError(f"edge count {e} outside [0, {N}]")
        self.n = n
        self.e_requested = e
        self.flip = e > N // 2
        self.e = N - e if self.flip else e
        self.pidx = np.zeros(max(n * n, 1), dtype=np.int64)
        t = 0
        for a in range(n):
            for b in range(a + 1, n):
                self.pidx[a * n + b] = t
                t += 1
        if self.e == 0:
            self.cum = np.ones(1)
            self.ivals = np.zeros(1, dtype=np.int64)
            self.incl = np.zeros((1, 2))
            self.logpq = np.zeros((1, 2))
            self.logacc0 = np.zeros(1)
            return
        params = compute_weights(n, self.e, bound)
        K = len(params.i_values)
        self.cum = np.cumsum(np.array(params.selection))
        self.cum[-1] = 1.0
        self.ivals = np.array(params.i_values, dtype=np.int64)
        self.incl = np.zeros((K, N + 1))
        self.logpq = np.zeros((K, N + 1))
        self.logacc0 = np.zeros(K)
        sizes = np.arange(1, N + 1, dtype=np.float64)
        for k in range(K):
            p, q = params.p[k], params.q[k]
            self.incl[k, 1:] = [inclusion_probability(p, q, int(s)) for s in sizes]
            # log(p^s + q^s) = s log q + log1p((p/q)^s) with p <= q after the complement step
            lo, hi = (p, q) if p <= q else (q, p)
            self.logpq[k, 1:] = sizes * math.log(hi) + np.log1p((lo / hi) ** sizes)
            self.logacc0[k] = (
                math.log(params.r_size[k])
                - params.log_B[k]
                - self.e * math.log(p)
                - (N - self.e) * math.log(q)
            )


def run_batch(tables: KernelTables, seed: int, stream: int, t0: int, t1: int, keep_rows: bool = False):
    """Trials ``t0 .. t1-1``: (rows or None, attempts, solvable flags)."""
    count = t1 - t0
    n = tables.n
    out_rows = np.zeros((count if keep_rows else 1, max(n, 1)), dtype=np.uint64)
    out_attempts = np.zeros(count, dtype=np.int64)
    out_solvable = np.zeros(count, dtype=np.bool_)
    _batch(
        n,
        tables.e,
        tables.flip,
        tables.cum,
        tables.ivals,
        tables.incl,
        tables.logpq,
        tables.logacc0,
        tables.pidx,
        np.uint64(seed & 0xFFFFFFFFFFFFFFFF),
        np.uint64(stream & 0xFFFFFFFFFFFFFFFF),
        t0,
        t1,
        out_rows,
        out_attempts,
        out_solvable,
        keep_rows,
    )
    if (out_attempts < 0).any():
        raise AcceptanceError(
            f"acceptance ratio above one at n={n}, e={tables.e}; weights do not bound the target"
        )
    return (out_rows[:, :n] if keep_rows else None), out_attempts, out_solvable


@njit(cache=True)
def solvable_codes(codes, n):
    """Solvability of each packed upper-triangle code on ``n`` vertices."""
    out = np.zeros(codes.shape[0], dtype=np.bool_)
    nbits = n * (n - 1) // 2
    rows = np.zeros(max(n, 1), dtype=np.uint64)
    for idx in range(codes.shape[0]):
        code = codes[idx]
        for v in range(n):
            rows[v] = np.uint64(0)
        k = nbits - 1
        for j in range(1, n):
            for i in range(j):
                if (code >> np.uint64(k)) & np.uint64(1):
                    rows[i] |= np.uint64(1) << np.uint64(j)
                    rows[j] |= np.uint64(1) << np.uint64(i)
                k -= 1
        out[idx] = gf2_full_rank(rows, n)
    return out
