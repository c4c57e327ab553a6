"""Simple undirected graphs stored as per-vertex adjacency bitmasks.

Vertex ``v`` of a graph on ``n`` vertices is the integer ``v`` in
``range(n)``; ``rows[v]`` has bit ``u`` set iff ``u`` and ``v`` are adjacent.
Graphs are immutable values, so every operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class CapacityError(ValueError):
    """Raised when an operation would exceed a supported size limit."""


VertexSet = frozenset  # frozenset[int] of vertex labels


def _check_capacity(n: int) -> None:
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    if n > MAX_VERTICES:
        raise CapacityError(f"graphs are limited to {MAX_VERTICES} vertices, got {n}")


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """A labelled simple graph; ``e`` is the cached edge count."""

    n: int
    rows: tuple[int, ...]
    e: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        _check_capacity(self.n)
        rows = tuple(int(r) for r in self.rows)
        if len(rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(rows):
            if row & ~full:
                raise ValueError(f"row {v} has bits outside the vertex range")
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in members(row):
                if not (rows[u] >> v) & 1:
                    raise ValueError(f"adjacency is not symmetric at ({v}, {u})")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "e", sum(r.bit_count() for r in rows) // 2)

    @classmethod
    def _trusted(cls, n: int, rows: tuple[int, ...], e: int | None = None) -> Graph:
        # Skips validation; callers guarantee a symmetric loop-free row tuple.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        if e is None:
            e = sum(r.bit_count() for r in rows) // 2
        object.__setattr__(g, "e", e)
        return g

    @property
    def max_edges(self) -> int:
        return self.n * (self.n - 1) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    def neighbors(self, v: int) -> list[int]:
        return list(members(self.rows[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in members(self.rows[u] >> (u + 1) << (u + 1))]

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        rows = [0] * self.n
        for v, row in enumerate(self.rows):
            rows[perm[v]] = mask_of(perm[u] for u in members(row))
        return Graph._trusted(self.n, tuple(rows), self.e)

    def __str__(self) -> str:
        return to_edge_list(self)


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    _check_capacity(n)
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph._trusted(n, tuple(rows))


def empty_graph(n: int) -> Graph:
    _check_capacity(n)
    return Graph._trusted(n, (0,) * n, 0)


def complete_graph(n: int) -> Graph:
    _check_capacity(n)
    full = (1 << n) - 1
    return Graph._trusted(n, tuple(full ^ (1 << v) for v in range(n)), n * (n - 1) // 2)


def path_graph(n: int) -> Graph:
    """Path on ``n`` vertices (``n - 1`` edges)."""
    return from_edges(n, [(v, v + 1) for v in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def star_graph(leaves: int) -> Graph:
    """K(1, leaves) with the centre at vertex 0."""
    return from_edges(leaves + 1, [(0, v) for v in range(1, leaves + 1)])


def disjoint_union(*graphs: Graph) -> Graph:
    n = sum(g.n for g in graphs)
    _check_capacity(n)
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(r << offset for r in g.rows)
        offset += g.n
    return Graph._trusted(n, tuple(rows), sum(g.e for g in graphs))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    rows = tuple(full ^ r ^ (1 << v) for v, r in enumerate(g.rows))
    return Graph._trusted(g.n, rows, g.max_edges - g.e)


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union of ``g1`` and ``g2`` plus every edge between them."""
    n = g1.n + g2.n
    _check_capacity(n)
    low = (1 << g1.n) - 1
    high = ((1 << g2.n) - 1) << g1.n
    rows = tuple(r | high for r in g1.rows) + tuple((r << g1.n) | low for r in g2.rows)
    return Graph._trusted(n, rows, g1.e + g2.e + g1.n * g2.n)


def delete_vertices(g: Graph, removed: Iterable[int]) -> Graph:
    """Induced subgraph on the surviving vertices, renumbered in their original order."""
    drop = mask_of(removed)
    if drop >> g.n:
        raise ValueError("removed vertices must belong to the graph")
    keep = [v for v in range(g.n) if not (drop >> v) & 1]
    return induced_subgraph(g, keep)


def induced_subgraph(g: Graph, keep: Sequence[int]) -> Graph:
    index = {v: k for k, v in enumerate(keep)}
    rows = []
    for v in keep:
        rows.append(mask_of(index[u] for u in members(g.rows[v]) if u in index))
    return Graph._trusted(len(keep), tuple(rows))


def excess_degree(g: Graph) -> int:
    """Number of isolated vertices minus ``n`` plus the degree sum.

    Equal to the sum of ``deg(v) - 1`` over non-isolated vertices.
    """
    degs = g.degrees()
    isolated = sum(1 for d in degs if d == 0)
    return isolated - g.n + sum(degs)


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components, ordered by their smallest vertex."""
    seen = 0
    comps = []
    for start in range(g.n):
        if (seen >> start) & 1:
            continue
        comp = frontier = 1 << start
        while frontier:
            reach = 0
            for v in members(frontier):
                reach |= g.rows[v]
            frontier = reach & ~comp
            comp |= frontier
        seen |= comp
        comps.append(frozenset(members(comp)))
    return comps


@dataclass(frozen=True)
class StructureReport:
    degrees: tuple[int, ...]
    isolated_vertices: frozenset[int]
    isolated_edges: frozenset[tuple[int, int]]
    dominating_vertices: frozenset[int]
    components: tuple[frozenset[int], ...]


def structural_queries(g: Graph) -> StructureReport:
    degs = g.degrees()
    isolated_edges = frozenset(
        (u, v) for u, v in g.edges() if degs[u] == 1 and degs[v] == 1
    )
    return StructureReport(
        degrees=degs,
        isolated_vertices=frozenset(v for v, d in enumerate(degs) if d == 0),
        isolated_edges=isolated_edges,
        dominating_vertices=frozenset(v for v, d in enumerate(degs) if d == g.n - 1),
        components=tuple(components(g)),
    )


def to_edge_list(g: Graph) -> str:
    return f"n={g.n}; " + ",".join(f"{u}-{v}" for u, v in g.edges())
