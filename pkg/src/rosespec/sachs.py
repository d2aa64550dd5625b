"""Sachs subgraphs, adjacency char-poly coefficients, and matching counts."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .graph import Graph, RoseSpec, disjoint_union, path_graph
from .linalg import Polynomial


@dataclass(frozen=True)
class SachsSubgraph:
    edge_components: tuple[tuple[int, int], ...]
    cycle_components: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return 2 * len(self.edge_components) + sum(len(c) for c in self.cycle_components)

    @property
    def components(self) -> int:
        return len(self.edge_components) + len(self.cycle_components)

    @property
    def cycles(self) -> int:
        return len(self.cycle_components)

    @property
    def weight(self) -> int:
        return (-1) ** self.components * 2 ** self.cycles


@dataclass(frozen=True)
class PathPartition:
    """Orders (vertex counts) of the paths in a disjoint union."""

    lengths: tuple[int, ...]

    def __init__(self, lengths: Iterable[int]):
        ls = tuple(sorted(int(x) for x in lengths))
        if any(x < 1 for x in ls):
            raise ValueError("paths need at least one vertex")
        object.__setattr__(self, "lengths", ls)

    @property
    def n(self) -> int:
        return sum(self.lengths)

    def graph(self) -> Graph:
        return disjoint_union(*(path_graph(x) for x in self.lengths))


def matchings_count(g: Graph, j: int) -> int:
    """Sets of ``j`` pairwise disjoint edges, by include/exclude recursion."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    edges = g.edges

    def rec(idx, need, used):
        if need == 0:
            return 1
        if len(edges) - idx < need:
            return 0
        u, v = edges[idx]
        total = rec(idx + 1, need, used)
        if not (used >> u) & 1 and not (used >> v) & 1:
            total += rec(idx + 1, need - 1, used | (1 << u) | (1 << v))
        return total

    return rec(0, j, 0)


@lru_cache(maxsize=None)
def _path_matchings(order: int) -> tuple[int, ...]:
    """``m(P_order, i)`` for all ``i``; ``m(P_l, i) = m(P_{l-1}, i) + m(P_{l-2}, i-1)``."""
    if order <= 1:
        return (1,)
    a, b = _path_matchings(order - 1), _path_matchings(order - 2)
    out = list(a) + [0] * (order // 2 + 1 - len(a))
    for i, c in enumerate(b):
        out[i + 1] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _convolve(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for k, y in enumerate(b):
            out[i + k] += x * y
    return out


def path_union_polynomial(lengths: Iterable[int]) -> list[int]:
    """Matching counts of a path union, indexed by matching size."""
    acc = [1]
    for x in lengths:
        if x > 0:
            acc = _convolve(acc, _path_matchings(x))
    return acc


def path_union_matchings(p: PathPartition | Iterable[int], j: int) -> int:
    lengths = p.lengths if isinstance(p, PathPartition) else tuple(p)
    if j < 0:
        raise ValueError("j must be nonnegative")
    counts = path_union_polynomial(lengths)
    return counts[j] if j < len(counts) else 0


def rose_matchings(spec: RoseSpec | Iterable[int], j: int) -> int:
    """Split matchings on whether they use an edge at the central vertex.

    Removing the centre leaves paths of orders ``l_i - 1``; removing it and a
    neighbour on cycle ``i`` shortens that path to ``l_i - 2``. Each cycle
    contributes two such neighbours.
    """
    if not isinstance(spec, RoseSpec):
        spec = RoseSpec(spec)
    if j < 0:
        raise ValueError("j must be nonnegative")
    base = [x - 1 for x in spec.lengths]
    total = path_union_matchings(base, j)
    if j >= 1:
        for i in range(len(base)):
            shorter = base[:i] + [base[i] - 1] + base[i + 1:]
            total += 2 * path_union_matchings(shorter, j - 1)
    return total


def simple_cycles(g: Graph) -> list[tuple[int, ...]]:
    """Every cycle once: smallest vertex first, then the smaller-neighbour direction."""
    out = []
    nb = g.neighbors
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def dfs(u):
            for w in sorted(nb[u]):
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                elif w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    dfs(w)
                    path.pop()
                    on_path.discard(w)

        dfs(s)
    return out


def _matchings_on(g: Graph, allowed: int, j: int):
    edges = [e for e in g.edges if (allowed >> e[0]) & 1 and (allowed >> e[1]) & 1]
    for combo in combinations(edges, j):
        used = 0
        ok = True
        for u, v in combo:
            bits = (1 << u) | (1 << v)
            if used & bits:
                ok = False
                break
            used |= bits
        if ok:
            yield combo


def sachs_subgraphs(g: Graph, i: int) -> list[SachsSubgraph]:
    """All Sachs subgraphs on exactly ``i`` vertices.

    Vertex-disjoint cycle sets are chosen first (cycles from DFS, in index
    order); the leftover vertex budget is filled by matchings avoiding them.
    """
    if not 1 <= i <= g.n:
        raise ValueError(f"need 1 <= i <= n, got i={i}, n={g.n}")
    cycles = simple_cycles(g)
    masks = [sum(1 << v for v in c) for c in cycles]
    full = (1 << g.n) - 1
    out = []

    def rec(start, used, chosen, size):
        rest = i - size
        if rest % 2 == 0:
            for combo in _matchings_on(g, full & ~used, rest // 2):
                out.append(SachsSubgraph(tuple(combo), tuple(cycles[c] for c in chosen)))
        for c in range(start, len(cycles)):
            if not masks[c] & used and size + len(cycles[c]) <= i:
                rec(c + 1, used | masks[c], chosen + [c], size + len(cycles[c]))

    rec(0, 0, [], 0)
    return out


def _sachs_weights(g: Graph):
    """Memoised signed Sachs sums over vertex subsets.

    ``f(mask, i)`` sums ``(-1)^k(S) 2^c(S)`` over Sachs subgraphs inside
    ``mask`` on ``i`` vertices, branching on the lowest vertex of ``mask``:
    unused, matched to a neighbour, or on a cycle whose minimum it is.
    """
    cycles_by_min = [[] for _ in range(g.n)]
    for c in simple_cycles(g):
        cycles_by_min[c[0]].append((sum(1 << v for v in c), len(c)))
    nbmask = [sum(1 << w for w in g.neighbors[v]) for v in range(g.n)]

    @lru_cache(maxsize=None)
    def f(mask, i):
        if i == 0:
            return 1
        if i < 0 or mask.bit_count() < i:
            return 0
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        total = f(rest, i)
        nb = nbmask[v] & rest
        while nb:
            low = nb & -nb
            total -= f(rest & ~low, i - 2)
            nb ^= low
        for cm, length in cycles_by_min[v]:
            if cm & mask == cm:
                total -= 2 * f(mask & ~cm, i - length)
        return total

    return f


def sachs_coefficient(g: Graph, i: int) -> int:
    """Coefficient of ``x^(n-i)`` in the adjacency characteristic polynomial."""
    if not 1 <= i <= g.n:
        raise ValueError(f"need 1 <= i <= n, got i={i}, n={g.n}")
    return _sachs_weights(g)((1 << g.n) - 1, i)


def sachs_char_poly(g: Graph) -> Polynomial:
    f = _sachs_weights(g)
    full = (1 << g.n) - 1
    coeffs = [0] * (g.n + 1)
    coeffs[g.n] = 1
    for i in range(1, g.n + 1):
        coeffs[g.n - i] = f(full, i)
    return Polynomial(coeffs)
