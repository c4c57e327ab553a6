"""graph6 and edge-list text encodings."""

from __future__ import annotations

import re

from .graph import Graph, MAX_VERTICES, CapacityError, from_edges

GRAPH6_HEADER = ">>graph6<<"


class FormatError(ValueError):
    """Raised for malformed graph text."""


def _encode_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))


def to_graph6(g: Graph) -> str:
    # Upper triangle in column order: (0,1), (0,2), (1,2), (0,3), ...
    bits = [(g.rows[i] >> j) & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chunks = []
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k : k + 6]:
            value = (value << 1) | b
        chunks.append(chr(value + 63))
    return _encode_size(g.n) + "".join(chunks)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise FormatError("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise FormatError(f"invalid graph6 character in {text!r}")
    if s[0] == "~":
        if len(s) < 4 or s[1] == "~":
            raise FormatError("unsupported graph6 size prefix")
        n = 0
        for c in s[1:4]:
            n = (n << 6) | (ord(c) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    if n > MAX_VERTICES:
        raise CapacityError(f"graph6 input has {n} vertices; limit is {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    bits = []
    for c in body:
        value = ord(c) - 63
        bits.extend((value >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise FormatError("nonzero padding bits in graph6 body")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return from_edges(n, edges)


_EDGE_LIST = re.compile(r"^\s*n\s*=\s*(\d+)\s*;\s*(.*?)\s*$", re.S)
_EDGE = re.compile(r"^(\d+)\s*-\s*(\d+)$")


def from_edge_list(text: str) -> Graph:
    """Parse ``"n=6; 0-1,1-2"``; duplicate edges and loops are rejected."""
    m = _EDGE_LIST.match(text)
    if not m:
        raise FormatError(f"expected 'n=<count>; u-v,...', got {text!r}")
    n = int(m.group(1))
    if n > MAX_VERTICES:
        raise CapacityError(f"edge list declares {n} vertices; limit is {MAX_VERTICES}")
    body = m.group(2)
    edges = []
    seen = set()
    if body:
        for item in body.split(","):
            em = _EDGE.match(item.strip())
            if not em:
                raise FormatError(f"bad edge {item.strip()!r}")
            u, v = int(em.group(1)), int(em.group(2))
            if u >= n or v >= n:
                raise FormatError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise FormatError(f"self-loop {u}-{v}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise FormatError(f"duplicate edge {u}-{v}")
            seen.add(key)
            edges.append(key)
    return from_edges(n, edges)


def parse_graph(text: str) -> Graph:
    """Accept either an edge list (contains ``=``) or a graph6 string."""
    if "=" in text:
        return from_edge_list(text)
    return from_graph6(text)
