"""Shared strategies and brute-force oracles for the test suite."""

from __future__ import annotations

import itertools

from hypothesis import strategies as st

from lightsout.graph import Graph, from_edges


def all_pairs(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def all_labelled_graphs(n):
    pairs = all_pairs(n)
    for mask in range(1 << len(pairs)):
        yield from_edges(n, [pairs[k] for k in range(len(pairs)) if mask >> k & 1])


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = all_pairs(n)
    mask = draw(st.integers(0, (1 << len(pairs)) - 1)) if pairs else 0
    return from_edges(n, [pairs[k] for k in range(len(pairs)) if mask >> k & 1])


def closed_rows(g: Graph):
    return [r | (1 << v) for v, r in enumerate(g.rows)]


def span(rows):
    """Every XOR combination of ``rows`` (small inputs only)."""
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


def brute_solvable(g: Graph) -> bool:
    # every configuration must be a sum of press vectors
    return len(span(closed_rows(g))) == 1 << g.n


def brute_odd_dominating_sets(g: Graph):
    rows = closed_rows(g)
    full = (1 << g.n) - 1
    found = []
    for s in range(1 << g.n):
        if all((r & s).bit_count() % 2 == 1 for r in rows):
            found.append(s)
    assert all(s <= full for s in found)
    return found


def min_code(g: Graph) -> int:
    """Lexicographically smallest upper triangle over all relabellings."""
    best = None
    for p in itertools.permutations(range(g.n)):
        code = 0
        for i in range(g.n):
            for j in range(i + 1, g.n):
                code = code << 1 | ((g.rows[p[i]] >> p[j]) & 1)
        best = code if best is None or code < best else best
    return best
