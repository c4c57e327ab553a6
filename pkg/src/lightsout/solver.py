"""Lights Out on graphs: universal solvability, press sets and dominating sets.

Pressing vertex ``v`` toggles ``v`` and every neighbour of ``v``; a
configuration is the set of vertices whose lights are on.  Over GF(2), a press
set ``x`` clears configuration ``c`` exactly when ``A x = c`` for the
neighbourhood matrix ``A``.
"""

from __future__ import annotations

from typing import Iterable, Optional

from . import gf2
from .graph import MAX_VERTICES, CapacityError, Graph, delete_vertices, mask_of, members


def is_universally_solvable(g: Graph) -> bool:
    """True iff every configuration can be switched off.

    The graph on zero vertices counts as solvable.
    """
    return gf2.rank_of_rows(r | (1 << v) for v, r in enumerate(g.rows)) == g.n


def _config_mask(g: Graph, config: Iterable[int]) -> int:
    mask = mask_of(config)
    if mask >> g.n:
        raise ValueError("configuration contains vertices outside the graph")
    return mask


def press(g: Graph, lights: Iterable[int], presses: Iterable[int]) -> frozenset[int]:
    """Apply the presses one by one and return the lights left on."""
    state = _config_mask(g, lights)
    for v in presses:
        state ^= g.rows[v] | (1 << v)
    return frozenset(members(state))


def solve_configuration(g: Graph, lights: Iterable[int]) -> Optional[frozenset[int]]:
    """A press set that turns every light off, or ``None`` if there is none."""
    b = _config_mask(g, lights)
    x = gf2.solve(gf2.neighborhood_matrix(g), b)
    return None if x is None else frozenset(members(x))


def odd_dominating_set(g: Graph) -> Optional[frozenset[int]]:
    """A set meeting every closed neighbourhood an odd number of times."""
    return solve_configuration(g, range(g.n))


def has_even_odd_dominating_set(g: Graph) -> bool:
    """Whether some odd dominating set has even cardinality.

    The solutions of ``A x = 1`` form a coset of the kernel, so their parity is
    adjustable exactly when the kernel holds an odd-weight vector.
    """
    m = gf2.neighborhood_matrix(g)
    x = gf2.solve(m, (1 << g.n) - 1)
    if x is None:
        return False
    if x.bit_count() % 2 == 0:
        return True
    return any(k.bit_count() % 2 for k in gf2.kernel_basis(m))


def join_solvable(g1: Graph, g2: Graph) -> bool:
    """Solvability of the join of ``g1`` and ``g2`` from properties of the parts."""
    if g1.n + g2.n > MAX_VERTICES:
        raise CapacityError(f"join would have {g1.n + g2.n} vertices")
    return (
        is_universally_solvable(g1)
        and is_universally_solvable(g2)
        and (has_even_odd_dominating_set(g1) or has_even_odd_dominating_set(g2))
    )


# Complement-side shortcuts.  Each rule below reads structure of ``g`` and
# decides (or reduces) solvability of the complement of ``g`` without a rank
# computation; the test suite checks them against the rank verdict.


def complement_obstructions(g: Graph) -> list[str]:
    """Names of the structural rules certifying that the complement of ``g`` is unsolvable."""
    degs = g.degrees()
    isolated = [v for v, d in enumerate(degs) if d == 0]
    leaves = mask_of(v for v, d in enumerate(degs) if d == 1)
    found = []
    if isolated and g.n % 2 == 0:
        found.append("isolated-vertex-even-order")
    if any((row & leaves).bit_count() >= 2 for row in g.rows):
        found.append("two-pendant-neighbours")
    if len(isolated) >= 2:
        found.append("two-isolated-vertices")
    branching = sum(1 for d in degs if d >= 2)
    if any(d >= 3 and branching <= d - 1 for d in degs):
        found.append("hub-with-few-branch-vertices")
    deg2 = [v for v, d in enumerate(degs) if d == 2]
    for k, u in enumerate(deg2):
        if any(g.rows[u] == g.rows[v] for v in deg2[k + 1 :]):
            found.append("four-cycle-opposite-degree-two")
            break
    return found


def complement_reductions(g: Graph) -> list[tuple[str, Graph]]:
    """Smaller graphs whose complement is solvable exactly when the complement of ``g`` is."""
    degs = g.degrees()
    out = []
    if g.n % 2 == 1:
        for v, d in enumerate(degs):
            if d == 0:
                out.append(("odd-order-isolated-vertex", delete_vertices(g, [v])))
                break
    for u, v in g.edges():
        if degs[u] == 1 and degs[v] == 1:
            out.append(("isolated-edge", delete_vertices(g, [u, v])))
            break
    return out
