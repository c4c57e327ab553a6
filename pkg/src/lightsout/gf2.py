"""Dense square matrices over GF(2) with bit-packed rows.

Row ``i`` is an int whose bit ``j`` is the entry in column ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import Graph, members


@dataclass(frozen=True)
class Gf2Matrix:
    dim: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.dim:
            raise ValueError(f"expected {self.dim} rows, got {len(self.rows)}")
        if any(r >> self.dim for r in self.rows):
            raise ValueError("row has entries beyond the matrix dimension")

    @classmethod
    def identity(cls, dim: int) -> Gf2Matrix:
        return cls(dim, tuple(1 << i for i in range(dim)))

    @classmethod
    def from_lists(cls, entries: list[list[int]]) -> Gf2Matrix:
        rows = tuple(sum((b & 1) << j for j, b in enumerate(row)) for row in entries)
        return cls(len(entries), rows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def apply(self, x: int) -> int:
        """Matrix-vector product; bit ``i`` of the result is row ``i`` dotted with ``x``."""
        out = 0
        for i, row in enumerate(self.rows):
            out |= ((row & x).bit_count() & 1) << i
        return out


def neighborhood_matrix(g: Graph) -> Gf2Matrix:
    """Adjacency matrix plus the identity."""
    return Gf2Matrix(g.n, tuple(r | (1 << v) for v, r in enumerate(g.rows)))


def rank_of_rows(rows) -> int:
    work = list(rows)
    rank = 0
    while work:
        pivot = work.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        work = [r ^ pivot if r & low else r for r in work]
    return rank


def rank(m: Gf2Matrix) -> int:
    return rank_of_rows(m.rows)


def is_invertible(m: Gf2Matrix) -> bool:
    return rank(m) == m.dim


def _reduce(m: Gf2Matrix, b: int):
    """Gauss-Jordan elimination of ``[m | b]`` scanning columns left to right.

    Returns ``(rows, rhs, pivots)`` where ``pivots[k]`` is the pivot column of
    reduced row ``k``; rows past ``len(pivots)`` are zero on the left side.
    """
    rows = list(m.rows)
    rhs = [(b >> i) & 1 for i in range(m.dim)]
    pivots: list[int] = []
    top = 0
    for col in range(m.dim):
        bit = 1 << col
        for r in range(top, m.dim):
            if rows[r] & bit:
                break
        else:
            continue
        rows[top], rows[r] = rows[r], rows[top]
        rhs[top], rhs[r] = rhs[r], rhs[top]
        for r in range(m.dim):
            if r != top and rows[r] & bit:
                rows[r] ^= rows[top]
                rhs[r] ^= rhs[top]
        pivots.append(col)
        top += 1
    return rows, rhs, pivots


def solve(m: Gf2Matrix, b: int) -> Optional[int]:
    """Return some ``x`` with ``m x = b``, or ``None`` if the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if b < 0 or b >> m.dim:
        raise ValueError(f"right-hand side does not fit dimension {m.dim}")
    _, rhs, pivots = _reduce(m, b)
    if any(rhs[len(pivots) :]):
        return None
    x = 0
    for k, col in enumerate(pivots):
        x |= rhs[k] << col
    return x


def kernel_basis(m: Gf2Matrix) -> list[int]:
    """A basis of ``{x : m x = 0}``, one vector per free column."""
    rows, _, pivots = _reduce(m, 0)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.dim):
        if free in pivot_set:
            continue
        x = 1 << free
        for k, col in enumerate(pivots):
            if (rows[k] >> free) & 1:
                x |= 1 << col
        basis.append(x)
    return basis


def vector_bits(x: int) -> list[int]:
    return list(members(x))
