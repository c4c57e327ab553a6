"""Canonical forms for small graphs.

The search follows the usual individualise-and-refine scheme.  Starting from
the degree partition, cells are refined to an equitable ordered partition; a
non-singleton cell is then split by individualising each of its vertices in
turn.  Every discrete leaf orders the vertices, and the leaf whose row-major
upper triangle is lexicographically smallest defines the canonical labelling.
Subtrees known to be images of each other under an automorphism fixing the
current path (twin swaps, or maps found from equal leaves) are skipped.

The search itself is compiled with numba and works on ``uint64`` rows; the
batch entry points let enumeration canonise many candidates per call.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .formats import to_graph6
from .graph import CapacityError, Graph

MAX_CANON_VERTICES = 16
# Internal ceiling for callers that canonise components of sparse graphs.
_KERNEL_LIMIT = 64

CanonicalForm = bytes


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - np.uint64(1)
        c += 1
    return c


@njit(cache=True)
def _refine(rows, lab, ends, queue, qlen, cnt, tmp_v, tmp_c):
    """Refine the ordered partition in place; ``ends[p]`` is 1 where a cell stops at ``p``."""
    n = lab.shape[0]
    head = 0
    ncells = 0
    for p in range(n):
        ncells += ends[p]
    while head < qlen and ncells < n:
        splitter = queue[head]
        head += 1
        s = 0
        while s < n:
            e = s
            while ends[e] == 0:
                e += 1
            if e > s:
                first = _popcount(rows[lab[s]] & splitter)
                uniform = True
                for p in range(s, e + 1):
                    c = _popcount(rows[lab[p]] & splitter)
                    cnt[p] = c
                    if c != first:
                        uniform = False
                if not uniform:
                    # stable insertion sort of the cell by count
                    size = e - s + 1
                    for k in range(size):
                        tmp_v[k] = lab[s + k]
                        tmp_c[k] = cnt[s + k]
                    for k in range(1, size):
                        v = tmp_v[k]
                        c = tmp_c[k]
                        j = k - 1
                        while j >= 0 and tmp_c[j] > c:
                            tmp_v[j + 1] = tmp_v[j]
                            tmp_c[j + 1] = tmp_c[j]
                            j -= 1
                        tmp_v[j + 1] = v
                        tmp_c[j + 1] = c
                    mask = np.uint64(0)
                    for k in range(size):
                        lab[s + k] = tmp_v[k]
                        mask |= np.uint64(1) << np.uint64(tmp_v[k])
                        if k == size - 1 or tmp_c[k + 1] != tmp_c[k]:
                            if k < size - 1:
                                ends[s + k] = 1
                                ncells += 1
                            queue[qlen] = mask
                            qlen += 1
                            mask = np.uint64(0)
            s = e + 1


@njit(cache=True)
def _compare_leaf(rows, lab, pos, key, best_key, have_best):
    """Fill ``key`` for the leaf ``lab``; return -1, 0, 1 comparing it with ``best_key``."""
    n = lab.shape[0]
    for p in range(n):
        pos[lab[p]] = p
    result = 0 if have_best else -1
    for k in range(n):
        r = rows[lab[k]]
        m = np.uint64(0)
        while r:
            low = r & (~r + np.uint64(1))
            u = 0
            t = low
            while t > np.uint64(1):
                t >>= np.uint64(1)
                u += 1
            j = pos[u]
            if j > k:
                m |= np.uint64(1) << np.uint64(n - 1 - j)
            r ^= low
        key[k] = m
        if result == 0:
            if m < best_key[k]:
                result = -1
            elif m > best_key[k]:
                result = 1
    return result


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _canon_order(rows):
    n = rows.shape[0]
    best_lab = np.arange(n, dtype=np.int64)
    if n <= 1:
        return best_lab
    one = np.uint64(1)

    # automorphism store: twin transpositions first, leaf maps appended later
    max_autos = 4 * n + 64
    autos = np.empty((max_autos, n), dtype=np.int64)
    nautos = 0
    for v in range(n):
        for w in range(v + 1, n):
            bv = one << np.uint64(v)
            bw = one << np.uint64(w)
            if (rows[v] & ~bw) == (rows[w] & ~bv):
                # v and w are twins (adjacent or not); only the first twin per w is needed
                dup = False
                for u in range(v):
                    bu = one << np.uint64(u)
                    if (rows[u] & ~bw) == (rows[w] & ~bu):
                        dup = True
                        break
                if not dup and nautos < max_autos:
                    for x in range(n):
                        autos[nautos, x] = x
                    autos[nautos, v] = w
                    autos[nautos, w] = v
                    nautos += 1

    labs = np.empty((n + 1, n), dtype=np.int64)
    endss = np.zeros((n + 1, n), dtype=np.int64)
    tstart = np.zeros(n + 1, dtype=np.int64)
    tend = np.zeros(n + 1, dtype=np.int64)
    tried = np.zeros(n + 1, dtype=np.uint64)
    remaining = np.zeros(n + 1, dtype=np.uint64)
    path = np.zeros(n + 1, dtype=np.int64)
    queue = np.empty(8 * n + 8, dtype=np.uint64)
    cnt = np.empty(n, dtype=np.int64)
    tmp_v = np.empty(n, dtype=np.int64)
    tmp_c = np.empty(n, dtype=np.int64)
    pos = np.empty(n, dtype=np.int64)
    key = np.empty(n, dtype=np.uint64)
    best_key = np.zeros(n, dtype=np.uint64)
    best_path = np.zeros(n + 1, dtype=np.int64)
    have_best = False
    parent = np.empty(n, dtype=np.int64)

    # root: degree partition, cells in increasing degree
    degs = np.empty(n, dtype=np.int64)
    for v in range(n):
        degs[v] = _popcount(rows[v])
    order = np.argsort(degs, kind="mergesort")
    qlen = 0
    mask = np.uint64(0)
    for p in range(n):
        labs[0, p] = order[p]
        mask |= one << np.uint64(order[p])
        if p == n - 1 or degs[order[p + 1]] != degs[order[p]]:
            endss[0, p] = 1
            queue[qlen] = mask
            qlen += 1
            mask = np.uint64(0)
        else:
            endss[0, p] = 0
    _refine(rows, labs[0], endss[0], queue, qlen, cnt, tmp_v, tmp_c)

    level = 0
    fresh = True
    while level >= 0:
        lab = labs[level]
        ends = endss[level]
        if fresh:
            fresh = False
            # locate the first smallest non-singleton cell
            best_size = n + 1
            s = 0
            while s < n:
                e = s
                while ends[e] == 0:
                    e += 1
                if e > s and e - s + 1 < best_size:
                    best_size = e - s + 1
                    tstart[level] = s
                    tend[level] = e
                s = e + 1
            if best_size == n + 1:
                c = _compare_leaf(rows, lab, pos, key, best_key, have_best)
                if c < 0:
                    for p in range(n):
                        best_key[p] = key[p]
                        best_lab[p] = lab[p]
                    for q in range(level):
                        best_path[q] = path[q]
                    have_best = True
                elif c == 0:
                    if nautos < max_autos:
                        for p in range(n):
                            autos[nautos, best_lab[p]] = lab[p]
                        nautos += 1
                    # The map sends the best leaf's branch at the first level where
                    # the two paths part onto the current branch, which is
                    # therefore equivalent to an explored one: resume there.
                    q = 0
                    while best_path[q] == path[q]:
                        q += 1
                    level = q
                    continue
                level -= 1
                continue
            cellmask = np.uint64(0)
            for p in range(tstart[level], tend[level] + 1):
                cellmask |= one << np.uint64(lab[p])
            remaining[level] = cellmask
            tried[level] = np.uint64(0)
        if remaining[level] == 0:
            level -= 1
            continue
        low = remaining[level] & (~remaining[level] + one)
        remaining[level] ^= low
        v = 0
        t = low
        while t > one:
            t >>= one
            v += 1
        if tried[level] != 0:
            s = tstart[level]
            e = tend[level]
            for p in range(s, e + 1):
                parent[lab[p]] = lab[p]
            for a in range(nautos):
                fixes = True
                for q in range(level):
                    if autos[a, path[q]] != path[q]:
                        fixes = False
                        break
                if not fixes:
                    continue
                for p in range(s, e + 1):
                    x = lab[p]
                    y = autos[a, x]
                    ra = _find(parent, x)
                    rb = _find(parent, y)
                    if ra != rb:
                        if ra < rb:
                            parent[rb] = ra
                        else:
                            parent[ra] = rb
            rv = _find(parent, v)
            skip = False
            tm = tried[level]
            while tm:
                lw = tm & (~tm + one)
                tm ^= lw
                w = 0
                t = lw
                while t > one:
                    t >>= one
                    w += 1
                if _find(parent, w) == rv:
                    skip = True
                    break
            if skip:
                continue
        tried[level] |= low
        path[level] = v
        child = labs[level + 1]
        cends = endss[level + 1]
        s = tstart[level]
        e = tend[level]
        for p in range(n):
            child[p] = lab[p]
            cends[p] = ends[p]
        k = s + 1
        child[s] = v
        for p in range(s, e + 1):
            if lab[p] != v:
                child[k] = lab[p]
                k += 1
        cends[s] = 1
        queue[0] = low
        _refine(rows, child, cends, queue, 1, cnt, tmp_v, tmp_c)
        level += 1
        fresh = True
    return best_lab


@njit(cache=True)
def _relabel(rows, order):
    n = rows.shape[0]
    pos = np.empty(n, dtype=np.int64)
    for p in range(n):
        pos[order[p]] = p
    out = np.zeros(n, dtype=np.uint64)
    for p in range(n):
        r = rows[order[p]]
        m = np.uint64(0)
        for u in range(n):
            if (r >> np.uint64(u)) & np.uint64(1):
                m |= np.uint64(1) << np.uint64(pos[u])
        out[p] = m
    return out


@njit(cache=True)
def _canon_rows(rows):
    return _relabel(rows, _canon_order(rows))


@njit(cache=True)
def _pack_code(rows):
    """Upper triangle in column order as a single integer (needs ``n <= 11``)."""
    n = rows.shape[0]
    code = np.uint64(0)
    for j in range(1, n):
        for i in range(j):
            code = (code << np.uint64(1)) | ((rows[i] >> np.uint64(j)) & np.uint64(1))
    return code


@njit(cache=True)
def _unpack_code(code, n):
    rows = np.zeros(n, dtype=np.uint64)
    nbits = n * (n - 1) // 2
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if (code >> np.uint64(k)) & np.uint64(1):
                rows[i] |= np.uint64(1) << np.uint64(j)
                rows[j] |= np.uint64(1) << np.uint64(i)
            k -= 1
    return rows


@njit(cache=True)
def _extend_by_vertex(parent_codes, m):
    """Canonical codes of all one-vertex extensions of the ``m``-vertex parents.

    The new vertex must have degree at least the maximum degree of the
    extended graph; every graph arises this way by removing a vertex of
    maximum degree, so the filter loses nothing.
    """
    n = m + 1
    total = 0
    cap = parent_codes.shape[0] * (1 << m)
    out = np.empty(cap, dtype=np.uint64)
    rows = np.empty(n, dtype=np.uint64)
    for idx in range(parent_codes.shape[0]):
        base = _unpack_code(parent_codes[idx], m)
        for subset in range(1 << m):
            d = 0
            s = subset
            while s:
                s &= s - 1
                d += 1
            ok = True
            for v in range(m):
                dv = _popcount(base[v]) + ((subset >> v) & 1)
                if dv > d:
                    ok = False
                    break
            if not ok:
                continue
            for v in range(m):
                rows[v] = base[v]
                if (subset >> v) & 1:
                    rows[v] |= np.uint64(1) << np.uint64(m)
            rows[m] = np.uint64(subset)
            out[total] = _pack_code(_canon_rows(rows))
            total += 1
    return out[:total]


@njit(cache=True)
def _extend_connected(parents, nverts, keep_max):
    """Canonical rows of all one-edge extensions of connected parents.

    ``parents`` is a 2-D array of canonical rows padded to a common width and
    ``nverts`` gives each parent's vertex count.  The new edge either joins
    two non-adjacent vertices or hangs a new vertex off an existing one, which
    reaches every connected graph with one more edge.  Extensions with more
    than ``keep_max`` vertices are dropped.
    """
    width = parents.shape[1] + 1
    cap = 0
    for idx in range(parents.shape[0]):
        k = nverts[idx]
        cap += k * (k - 1) // 2 + k
    out = np.zeros((cap, width), dtype=np.uint64)
    out_n = np.empty(cap, dtype=np.int64)
    total = 0
    for idx in range(parents.shape[0]):
        k = nverts[idx]
        for u in range(k):
            for v in range(u + 1, k):
                if (parents[idx, u] >> np.uint64(v)) & np.uint64(1):
                    continue
                rows = parents[idx, :k].copy()
                rows[u] |= np.uint64(1) << np.uint64(v)
                rows[v] |= np.uint64(1) << np.uint64(u)
                c = _canon_rows(rows)
                out[total, :k] = c
                out_n[total] = k
                total += 1
        if k + 1 <= keep_max:
            for u in range(k):
                rows = np.zeros(k + 1, dtype=np.uint64)
                rows[:k] = parents[idx, :k]
                rows[u] |= np.uint64(1) << np.uint64(k)
                rows[k] = np.uint64(1) << np.uint64(u)
                c = _canon_rows(rows)
                out[total, : k + 1] = c
                out_n[total] = k + 1
                total += 1
    return out[:total], out_n[:total]


def _as_array(rows) -> np.ndarray:
    return np.array([int(r) for r in rows], dtype=np.uint64)


def canonical_order(n: int, rows) -> list[int]:
    """Vertex order of the canonical labelling: position ``k`` holds vertex ``order[k]``."""
    if n > MAX_CANON_VERTICES:
        raise CapacityError(f"canonical forms are limited to {MAX_CANON_VERTICES} vertices")
    if n == 0:
        return []
    return [int(v) for v in _canon_order(_as_array(rows))]


def canonical_rows(n: int, rows) -> tuple[int, ...]:
    if n > MAX_CANON_VERTICES:
        raise CapacityError(f"canonical forms are limited to {MAX_CANON_VERTICES} vertices")
    if n == 0:
        return ()
    return tuple(int(r) for r in _canon_rows(_as_array(rows)))


def canonical_graph(g: Graph) -> Graph:
    return Graph._trusted(g.n, canonical_rows(g.n, g.rows), g.e)


def canonical_form(g: Graph) -> CanonicalForm:
    """graph6 bytes of the canonically relabelled graph; equal iff isomorphic."""
    return to_graph6(canonical_graph(g)).encode("ascii")


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    return g1.n == g2.n and g1.e == g2.e and canonical_rows(g1.n, g1.rows) == canonical_rows(g2.n, g2.rows)
