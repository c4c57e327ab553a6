"""Exact enumeration of unlabelled graphs and the solvability censuses built on it.

Two catalogues are kept:

* graphs on ``n <= 9`` vertices, grown one vertex at a time.  A new vertex is
  only attached when it ends up with maximum degree, and duplicates are
  removed through canonical codes;
* connected graphs with ``j <= 12`` edges, grown one edge at a time.

Graphs with ``k`` edges and no isolated vertices are multisets of connected
components, so they are assembled from the second catalogue without any
further isomorphism tests.

The censuses use the decomposition of a sparse graph into its *core* (the
components with at least three vertices), a number of isolated edges and a
number of isolated vertices.  A connected component on ``v`` vertices with
``e`` edges contributes ``2e - v >= v - 2`` to the excess degree, so the cores
of excess ``d`` have at most ``3d`` vertices and components with at most
``d + 1`` edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from . import canon
from .graph import (
    MAX_VERTICES,
    CapacityError,
    Graph,
    complement,
    delete_vertices,
    disjoint_union,
    empty_graph,
    excess_degree,
)
from .solver import is_universally_solvable

MAX_VERTEX_ENUM = 9
MAX_EDGE_ENUM = 12
MAX_CENSUS_EXCESS = 7
MAX_U_OFFSET = 3


def _rows_from_code(code: int, n: int) -> tuple[int, ...]:
    rows = [0] * n
    k = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if (code >> k) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return tuple(rows)


@lru_cache(maxsize=None)
def _vertex_codes(n: int) -> np.ndarray:
    if n <= 1:
        return np.zeros(1, dtype=np.uint64)
    parents = _vertex_codes(n - 1)
    return np.unique(canon._extend_by_vertex(parents, n - 1))


def enumerate_by_vertices(n: int) -> Iterator[Graph]:
    """One graph per isomorphism class on ``n`` vertices, sparsest codes first."""
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    if n > MAX_VERTEX_ENUM:
        raise CapacityError(f"vertex enumeration is limited to n <= {MAX_VERTEX_ENUM}")
    for code in _vertex_codes(n):
        yield Graph._trusted(n, _rows_from_code(int(code), n))


@lru_cache(maxsize=None)
def _edge_histogram(n: int) -> tuple[int, ...]:
    """Class counts of ``n``-vertex graphs indexed by edge count."""
    hist = [0] * (n * (n - 1) // 2 + 1)
    for code in _vertex_codes(n):
        hist[int(code).bit_count()] += 1
    return tuple(hist)


@lru_cache(maxsize=None)
def _connected_arrays(j: int) -> tuple[np.ndarray, np.ndarray]:
    """Canonical rows (padded to ``j + 1`` columns) and vertex counts of connected graphs with ``j`` edges."""
    if j == 1:
        return np.array([[2, 1]], dtype=np.uint64), np.array([2], dtype=np.int64)
    rows, nverts = _connected_arrays(j - 1)
    out, out_n = canon._extend_connected(rows, nverts, j + 1)
    stacked = np.column_stack([out_n.astype(np.uint64), out])
    uniq = np.unique(stacked, axis=0)
    return np.ascontiguousarray(uniq[:, 1:]), uniq[:, 0].astype(np.int64)


@lru_cache(maxsize=None)
def connected_graphs_by_edges(j: int) -> tuple[Graph, ...]:
    """Connected graphs with exactly ``j`` edges, one per isomorphism class."""
    if j < 1 or j > MAX_EDGE_ENUM:
        raise CapacityError(f"connected catalogue covers 1 <= j <= {MAX_EDGE_ENUM}")
    rows, nverts = _connected_arrays(j)
    return tuple(
        Graph._trusted(int(k), tuple(int(r) for r in row[:k]), j) for row, k in zip(rows, nverts)
    )


def _component_multisets(k: int, max_n: int):
    """Nondecreasing sequences of catalogue entries with ``k`` edges in total."""
    pool = []
    for j in range(1, k + 1):
        pool.extend(connected_graphs_by_edges(j))

    def rec(start: int, edges_left: int, verts_left: int, chosen: list[Graph]):
        if edges_left == 0:
            yield list(chosen)
            return
        for idx in range(start, len(pool)):
            c = pool[idx]
            if c.e > edges_left:
                break
            if c.n > verts_left:
                continue
            chosen.append(c)
            yield from rec(idx, edges_left - c.e, verts_left - c.n, chosen)
            chosen.pop()

    yield from rec(0, k, max_n, [])


def enumerate_by_edges(k: int, max_n: Optional[int] = None) -> Iterator[Graph]:
    """Graphs with ``k`` edges and no isolated vertices, at most ``max_n`` vertices.

    Components are emitted in catalogue order, so each class appears once.
    """
    if k < 0:
        raise ValueError("edge count must be non-negative")
    if k > MAX_EDGE_ENUM:
        raise CapacityError(f"edge enumeration is limited to k <= {MAX_EDGE_ENUM}")
    limit = 2 * k if max_n is None else min(max_n, 2 * k)
    if limit > MAX_VERTICES:
        limit = MAX_VERTICES
    for parts in _component_multisets(k, limit):
        yield disjoint_union(*parts) if parts else empty_graph(0)


def _pad(g: Graph, n: int) -> Graph:
    return disjoint_union(g, empty_graph(n - g.n)) if n > g.n else g


def _check_pair(n: int, e: int) -> int:
    if n < 0 or n > MAX_VERTICES:
        raise CapacityError(f"vertex count must lie in [0, {MAX_VERTICES}]")
    total = n * (n - 1) // 2
    if not 0 <= e <= total:
        raise ValueError(f"edge count {e} outside [0, {total}]")
    return total


def _sparse_side(n: int, e: int) -> tuple[int, bool]:
    """Edge count on the cheaper side and whether that side is the complement."""
    total = n * (n - 1) // 2
    if total - e < e:
        return total - e, True
    return e, False


def _supported(n: int, e: int) -> str:
    k, _ = _sparse_side(n, e)
    if k <= MAX_EDGE_ENUM:
        return "edges"
    if n <= MAX_VERTEX_ENUM:
        return "vertices"
    raise CapacityError(
        f"G({n},{e}) needs n <= {MAX_VERTEX_ENUM} or min(e, N - e) <= {MAX_EDGE_ENUM}"
    )


def graphs_with(n: int, e: int) -> Iterator[Graph]:
    """One representative per class of graphs with ``n`` vertices and ``e`` edges."""
    _check_pair(n, e)
    if _supported(n, e) == "vertices":
        for g in enumerate_by_vertices(n):
            if g.e == e:
                yield g
        return
    k, flipped = _sparse_side(n, e)
    for h in enumerate_by_edges(k, n):
        g = _pad(h, n)
        yield complement(g) if flipped else g


def count_graphs(n: int, e: int) -> int:
    """Number of isomorphism classes of graphs with ``n`` vertices and ``e`` edges."""
    _check_pair(n, e)
    if _supported(n, e) == "vertices":
        return _edge_histogram(n)[e]
    k, _ = _sparse_side(n, e)
    return sum(1 for _ in _component_multisets(k, min(n, 2 * k)))


@lru_cache(maxsize=None)
def _vertex_table(n: int) -> tuple[tuple[int, int], ...]:
    """``(solvable, classes)`` for every edge count on ``n <= 9`` vertices."""
    from ._kernel import solvable_codes

    codes = _vertex_codes(n)
    flags = solvable_codes(codes, n)
    table = [[0, 0] for _ in range(n * (n - 1) // 2 + 1)]
    for code, ok in zip(codes, flags):
        cell = table[int(code).bit_count()]
        cell[0] += int(ok)
        cell[1] += 1
    return tuple((a, b) for a, b in table)


def solvable_count(n: int, e: int) -> tuple[int, int]:
    """Solvable classes and all classes with ``n`` vertices and ``e`` edges."""
    _check_pair(n, e)
    if n <= MAX_VERTEX_ENUM:
        return _vertex_table(n)[e]
    total = 0
    good = 0
    for g in graphs_with(n, e):
        total += 1
        good += is_universally_solvable(g)
    return good, total


def exact_probability(n: int, e: int) -> Fraction:
    """Fraction of the classes with ``n`` vertices and ``e`` edges that are universally solvable."""
    good, total = solvable_count(n, e)
    return Fraction(good, total)


# ---------------------------------------------------------------- censuses


@dataclass(frozen=True)
class CensusResult:
    """Classes found by a census; ``d`` is set for excess censuses, ``m`` for edge-offset ones."""

    n: int
    graphs: list[Graph] = field(compare=False)
    d: Optional[int] = None
    m: Optional[int] = None

    @property
    def count(self) -> int:
        return len(self.graphs)


@lru_cache(maxsize=None)
def _components_by_excess(x: int) -> tuple[Graph, ...]:
    # 2e - v = x with v <= x + 2 forces e <= x + 1
    out = []
    for j in range(1, x + 2):
        out.extend(c for c in connected_graphs_by_edges(j) if 2 * c.e - c.n == x)
    return tuple(out)


@lru_cache(maxsize=None)
def cores(d: int) -> tuple[Graph, ...]:
    """Graphs of excess ``d`` without isolated vertices or isolated edges."""
    if d < 0:
        return ()
    if d > MAX_CENSUS_EXCESS:
        raise CapacityError(f"cores are available for excess d <= {MAX_CENSUS_EXCESS}")
    pool = [(x, c) for x in range(1, d + 1) for c in _components_by_excess(x)]
    found = []

    def rec(start: int, left: int, chosen: list[Graph]):
        if left == 0:
            found.append(disjoint_union(*chosen) if chosen else empty_graph(0))
            return
        for idx in range(start, len(pool)):
            x, c = pool[idx]
            if x > left:
                break
            chosen.append(c)
            rec(idx, left - x, chosen)
            chosen.pop()

    rec(0, d, [])
    return tuple(found)


def _assemble(core: Graph, matched: int, isolated: int) -> Graph:
    edges = Graph._trusted(2, (2, 1), 1)
    return disjoint_union(core, *([edges] * matched), empty_graph(isolated))


def sparse_graphs_with_excess(n: int, d: int) -> Iterator[Graph]:
    """Every class on ``n`` vertices with excess ``d``: a core plus isolated edges and vertices."""
    for core in cores(d):
        for matched in range((n - core.n) // 2 + 1):
            yield _assemble(core, matched, n - core.n - 2 * matched)


def compute_E(n: int, d: int) -> CensusResult:
    """Classes on ``n`` vertices with excess ``d`` whose complement is universally solvable."""
    if n < 0 or n > MAX_VERTICES:
        raise CapacityError(f"vertex count must lie in [0, {MAX_VERTICES}]")
    if d < 0 or d > MAX_CENSUS_EXCESS:
        raise CapacityError(f"census supports 0 <= d <= {MAX_CENSUS_EXCESS}")
    members = [g for g in sparse_graphs_with_excess(n, d) if is_universally_solvable(complement(g))]
    return CensusResult(n=n, d=d, graphs=members)


def compute_U(n: int, m: int) -> CensusResult:
    """Universally solvable classes with ``N - floor(n/2) - m`` edges.

    The complement of such a graph has ``k = floor(n/2) + m`` edges.  Two
    isolated vertices there become two dominating vertices with equal closed
    neighbourhoods, so only complements with at most one isolated vertex need
    to be examined; their excess is ``2k - n + i`` for ``i`` isolated vertices.
    """
    if m < 0 or m > MAX_U_OFFSET:
        raise CapacityError(f"edge offsets are supported for 0 <= m <= {MAX_U_OFFSET}")
    if n < max(2, 2 * m) or n > MAX_VERTICES:
        raise ValueError(f"need max(2, 2m) <= n <= {MAX_VERTICES}")
    k = n // 2 + m
    members = []
    for isolated in (0, 1):
        d = 2 * k - n + isolated
        if d < 0:
            continue
        for core in cores(d):
            spare = n - isolated - core.n
            if spare < 0 or spare % 2:
                continue
            h = _assemble(core, spare // 2, isolated)
            g = complement(h)
            if is_universally_solvable(g):
                members.append(g)
    return CensusResult(n=n, m=m, graphs=members)


def strip_to_core(g: Graph) -> Graph:
    """Remove isolated vertices and isolated edges."""
    degs = g.degrees()
    drop = [v for v, dv in enumerate(degs) if dv == 0]
    drop += [v for v, dv in enumerate(degs) if dv == 1 and degs[g.neighbors(v)[0]] == 1]
    return delete_vertices(g, drop)
