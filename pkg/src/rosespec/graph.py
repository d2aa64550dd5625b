"""Simple undirected graphs, rose graphs, graph6 and canonical labels."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from . import kernels


class GraphFormatError(ValueError):
    """Raised for malformed graph6 input."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``edges`` is kept sorted lexicographically with ``u < v`` in each pair.
    Use :meth:`from_edges` to build from unordered pairs.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        prev = None
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge {e} for n={self.n}")
            if prev is not None and e <= prev:
                raise ValueError("edges must be sorted and distinct")
            prev = e

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, tuple(sorted(seen)))

    @classmethod
    def from_rows(cls, rows, n: int | None = None) -> "Graph":
        """Build from adjacency bitmask rows (see :mod:`rosespec.kernels`)."""
        if n is None:
            n = len(rows)
        edges = []
        for u in range(n):
            r = int(rows[u]) >> (u + 1)
            v = u + 1
            while r:
                if r & 1:
                    edges.append((u, v))
                r >>= 1
                v += 1
        return cls(n, tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        nb = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.neighbors)

    @cached_property
    def rows(self) -> np.ndarray:
        if self.n > kernels.MAX_ORDER:
            raise ValueError(f"bitmask kernels support n <= {kernels.MAX_ORDER}")
        rows = np.zeros(self.n, np.int64)
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return rows

    def adjacency(self) -> list[list[int]]:
        a = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            a[u][v] = a[v][u] = 1
        return a

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors[u]

    def relabel(self, perm) -> "Graph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


@dataclass(frozen=True)
class RoseSpec:
    """Multiset of cycle lengths; ``k = 1`` is the plain cycle."""

    lengths: tuple[int, ...] = field()

    def __init__(self, lengths: Iterable[int]):
        ls = tuple(sorted(int(x) for x in lengths))
        if not ls:
            raise ValueError("a rose needs at least one cycle")
        if ls[0] < 3:
            raise ValueError(f"cycle lengths must be >= 3, got {ls[0]}")
        object.__setattr__(self, "lengths", ls)

    @property
    def k(self) -> int:
        return len(self.lengths)

    @property
    def n(self) -> int:
        return 1 + sum(x - 1 for x in self.lengths)

    @property
    def m(self) -> int:
        return sum(self.lengths)

    def __str__(self):
        return "R(" + ",".join(map(str, self.lengths)) + ")"


def build_rose(spec: RoseSpec | Iterable[int]) -> Graph:
    """Cycles of ``spec`` glued at vertex 0, laid out consecutively."""
    if not isinstance(spec, RoseSpec):
        spec = RoseSpec(spec)
    edges = []
    nxt = 1
    for length in spec.lengths:
        cyc = [0] + list(range(nxt, nxt + length - 1))
        nxt += length - 1
        for i in range(length):
            edges.append((cyc[i], cyc[(i + 1) % length]))
    return Graph.from_edges(spec.n, edges)


def roses_on(n: int, min_k: int = 1) -> list[RoseSpec]:
    """All rose specs with exactly ``n`` vertices, sorted by lengths."""
    out = []

    def rec(remaining, smallest, acc):
        if remaining == 0:
            if len(acc) >= min_k:
                out.append(RoseSpec(l + 1 for l in acc))
            return
        for part in range(smallest, remaining + 1):
            rec(remaining - part, part, acc + [part])

    if n >= 3:
        rec(n - 1, 2, [])
    return sorted(out, key=lambda s: s.lengths)


def degree_sequence(g: Graph) -> list[int]:
    return sorted(g.degrees, reverse=True)


def connected_components(g: Graph) -> int:
    seen = [False] * g.n
    comps = 0
    for s in range(g.n):
        if seen[s]:
            continue
        comps += 1
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.neighbors[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return comps


def delete_vertices(g: Graph, vs: Iterable[int]) -> Graph:
    """Induced subgraph on the remaining vertices, order preserved."""
    drop = set(vs)
    for v in drop:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    keep = [v for v in range(g.n) if v not in drop]
    new = {v: i for i, v in enumerate(keep)}
    edges = [(new[u], new[v]) for u, v in g.edges if u in new and v in new]
    return Graph(len(keep), tuple(edges))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph(off, tuple(edges))


def path_graph(order: int) -> Graph:
    return Graph(order, tuple((i, i + 1) for i in range(order - 1)))


def cycle_graph(order: int) -> Graph:
    return Graph.from_edges(order, ((i, (i + 1) % order) for i in range(order)))


def complete_graph(order: int) -> Graph:
    return Graph(order, tuple((u, v) for u in range(order) for v in range(u + 1, order)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((u, a + w) for u in range(a) for w in range(b)))


# graph6 ---------------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def write_graph6(g: Graph) -> str:
    """graph6 string (no header, no newline)."""
    nb = g.neighbors
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if u in nb[v] else 0)
    bits.extend([0] * (-len(bits) % 6))
    out = [_encode_n(g.n)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i:i + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip("\r\n")
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise GraphFormatError("empty graph6 string")
    vals = []
    for ch in s:
        o = ord(ch)
        if not 63 <= o <= 126:
            raise GraphFormatError(f"invalid graph6 byte {ch!r}")
        vals.append(o - 63)
    if vals[0] < 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 2 and vals[1] < 63:
        if len(vals) < 4:
            raise GraphFormatError("truncated size header")
        n, body = (vals[1] << 12) | (vals[2] << 6) | vals[3], vals[4:]
    else:
        if len(vals) < 8:
            raise GraphFormatError("truncated size header")
        n = 0
        for x in vals[2:8]:
            n = (n << 6) | x
        body = vals[8:]
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(body) < need:
        raise GraphFormatError(f"expected {need} data bytes, got {len(body)}")
    if len(body) > need:
        raise GraphFormatError("trailing data after graph6 body")
    pad = need * 6 - nbits
    if pad and body and body[-1] & ((1 << pad) - 1):
        raise GraphFormatError("nonzero padding bits")
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(n, edges)


# canonical labels -----------------------------------------------------------

def canonical_form(g: Graph) -> tuple[list[int], Graph]:
    """``(perm, h)`` where ``h = g.relabel(perm)`` is the canonical representative."""
    order, crows = kernels.canonical_rows(g.rows, g.n)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[int(v)] = i
    return perm, Graph.from_rows(crows, g.n)


def canonical_label(g: Graph) -> bytes:
    """Bytes equal for two graphs iff they are isomorphic."""
    return write_graph6(canonical_form(g)[1]).encode("ascii")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_label(g) == canonical_label(h)
