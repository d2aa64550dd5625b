"""Universal Laplacians and the invariants fixed by the Laplacian spectrum."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations

from .graph import Graph, connected_components
from .linalg import (Polynomial, char_poly, char_poly_rational, laplacian,
                     matmul, spanning_tree_count, trace, trace_power)


@dataclass(frozen=True)
class UniversalParams:
    """Coefficients of ``alpha*D + beta*A``."""

    alpha: Fraction
    beta: Fraction

    def __init__(self, alpha, beta):
        a, b = Fraction(alpha), Fraction(beta)
        if b == 0:
            raise ValueError("beta must be nonzero")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def parse(cls, text: str) -> "UniversalParams":
        """Accept ``laplacian``, ``adjacency``, ``signless`` or ``alpha:beta``."""
        named = {"laplacian": (1, -1), "adjacency": (0, 1), "signless": (1, 1)}
        key = text.strip().lower()
        if key in named:
            return cls(*named[key])
        parts = key.split(":")
        if len(parts) != 2:
            raise ValueError(f"expected alpha:beta, got {text!r}")
        try:
            return cls(Fraction(parts[0]), Fraction(parts[1]))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad parameters {text!r}: {exc}") from None

    def integer_scaled(self) -> tuple[int, int]:
        """``(a, b)`` integers proportional to ``(alpha, beta)`` by a positive factor."""
        d = self.alpha.denominator * self.beta.denominator
        return int(self.alpha * d), int(self.beta * d)

    def __str__(self):
        return f"{self.alpha}:{self.beta}"


LAPLACIAN = UniversalParams(1, -1)
ADJACENCY = UniversalParams(0, 1)
SIGNLESS = UniversalParams(1, 1)


def universal_laplacian(g: Graph, p: UniversalParams) -> list[list[Fraction]]:
    q = [[Fraction(0)] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        q[u][v] = q[v][u] = p.beta
    for i, d in enumerate(g.degrees):
        q[i][i] = p.alpha * d
    return q


def _as_int_matrix(q):
    if all(x.denominator == 1 for row in q for x in row):
        return [[int(x) for x in row] for row in q]
    return None


def universal_char_poly(g: Graph, p: UniversalParams) -> Polynomial:
    q = universal_laplacian(g, p)
    iq = _as_int_matrix(q)
    return char_poly(iq) if iq is not None else char_poly_rational(q)


def cospectral(g: Graph, h: Graph, p: UniversalParams) -> bool:
    if g.n != h.n:
        return False
    return universal_char_poly(g, p) == universal_char_poly(h, p)


def triangle_count(g: Graph) -> tuple[int, list[int]]:
    """``(t, [t_i])`` from the diagonal of A^3."""
    a = g.adjacency()
    a3 = matmul(matmul(a, a), a)
    per = [a3[i][i] // 2 for i in range(g.n)]
    return trace(a3) // 6, per


def triangle_count_enumerated(g: Graph) -> tuple[int, list[int]]:
    per = [0] * g.n
    t = 0
    for a, b, c in combinations(range(g.n), 3):
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c):
            t += 1
            per[a] += 1
            per[b] += 1
            per[c] += 1
    return t, per


def quadrilateral_count(g: Graph) -> int:
    """Number of 4-cycles as subgraphs; each 4-set hosts up to three."""
    f = 0
    e = g.has_edge
    for a, b, c, d in combinations(range(g.n), 4):
        for w, x, y, z in ((a, b, c, d), (a, b, d, c), (a, c, b, d)):
            if e(w, x) and e(x, y) and e(y, z) and e(z, w):
                f += 1
    return f


def closed_walk_count(g: Graph, v: int, length: int) -> int:
    """``(A^length)[v][v]`` by repeated vector-matrix products."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    if length < 0:
        raise ValueError("length must be nonnegative")
    vec = [0] * g.n
    vec[v] = 1
    for _ in range(length):
        nxt = [0] * g.n
        for u, c in enumerate(vec):
            if c:
                for w in g.neighbors[u]:
                    nxt[w] += c
        vec = nxt
    return vec[v]


def closed_walks_enumerated(g: Graph, v: int, length: int) -> int:
    """Explicit depth-first walk enumeration; an oracle for short lengths."""
    def rec(u, left):
        if left == 0:
            return 1 if u == v else 0
        return sum(rec(w, left - 1) for w in g.neighbors[u])
    return rec(v, length)


def degree_pair_sum(g: Graph) -> int:
    """``sum_i sum_{j~i} d_i d_j`` (every edge counted from both ends)."""
    d = g.degrees
    return 2 * sum(d[u] * d[v] for u, v in g.edges)


@dataclass(frozen=True)
class SpectralReport:
    n: int
    edge_count: int
    component_count: int
    spanning_trees: int
    sum_d2: int
    sum_d3_minus_6t: int
    trL4_quantity: int

    def as_dict(self) -> dict:
        return asdict(self)


def spectral_report(g: Graph) -> SpectralReport:
    d = g.degrees
    t, ti = triangle_count(g)
    f = quadrilateral_count(g)
    q4 = (sum(x ** 4 for x in d) + 2 * degree_pair_sum(g)
          - 8 * sum(x * y for x, y in zip(d, ti)) + 24 * t + 8 * f)
    return SpectralReport(
        n=g.n,
        edge_count=g.m,
        component_count=connected_components(g),
        spanning_trees=spanning_tree_count(g) if g.n else 0,
        sum_d2=sum(x * x for x in d),
        sum_d3_minus_6t=sum(x ** 3 for x in d) - 6 * t,
        trL4_quantity=q4,
    )


def report_from_traces(g: Graph) -> dict:
    """Recover the trace-determined fields from ``tr L^j`` alone (j <= 4)."""
    lap = laplacian(g)
    tr1, tr2, tr3, tr4 = (trace_power(lap, j) if g.n else 0 for j in (1, 2, 3, 4))
    sum_d2 = tr2 - tr1
    sum_d3_minus_6t = tr3 - 3 * sum_d2
    # tr L^4 = q4 + 4(sum d^3 - 6t) + 2 sum d^2 - sum d
    trL4_quantity = tr4 - 4 * sum_d3_minus_6t - 2 * sum_d2 + tr1
    return {"edge_count": tr1 // 2, "sum_d2": sum_d2,
            "sum_d3_minus_6t": sum_d3_minus_6t, "trL4_quantity": trL4_quantity}


@dataclass(frozen=True)
class DegreeIdentityReport:
    k: int
    sum_sq_excess: int
    sum_sq_target: int
    sum_sq_holds: bool
    sum_cube_excess: int
    sum_cube_bound: int
    sum_cube_below_bound: bool
    eef_applicable: bool
    e33: int
    e13: int
    f: int
    eef_lhs: int
    eef_rhs: int
    eef_holds: bool

    def as_dict(self) -> dict:
        return asdict(self)


def bicyclic_mate_degrees(n: int) -> list[int]:
    """Degree sequence forced on a Laplacian mate of a 2-rose on ``n`` vertices."""
    return [3, 3, 3] + [2] * (n - 4) + [1]


def degree_identity_checks(g: Graph, k: int) -> DegreeIdentityReport:
    d = g.degrees
    sq = sum((x - 2) ** 2 for x in d)
    cube = sum((x - 2) ** 3 for x in d)
    sq_t = (2 * k - 2) ** 2
    cube_b = (2 * k - 2) ** 3 - 6 * k
    e33 = sum(1 for u, v in g.edges if d[u] == 3 and d[v] == 3)
    ones = [v for v in range(g.n) if d[v] == 1]
    e13 = sum(1 for w in g.neighbors[ones[0]] if d[w] == 3) if ones else 0
    f = quadrilateral_count(g)
    lhs = e33 - e13 + 2 * f
    rhs = 5 + (2 if g.n == 6 else 0)
    applicable = sorted(d, reverse=True) == bicyclic_mate_degrees(g.n) if g.n >= 4 else False
    return DegreeIdentityReport(
        k=k, sum_sq_excess=sq, sum_sq_target=sq_t, sum_sq_holds=sq == sq_t,
        sum_cube_excess=cube, sum_cube_bound=cube_b, sum_cube_below_bound=cube < cube_b,
        eef_applicable=applicable, e33=e33, e13=e13, f=f,
        eef_lhs=lhs, eef_rhs=rhs, eef_holds=lhs == rhs,
    )
