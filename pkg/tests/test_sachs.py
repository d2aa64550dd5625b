from itertools import combinations

import pytest

from conftest import random_graph
from rosespec.graph import Graph, build_rose, cycle_graph, path_graph, roses_on
from rosespec.linalg import char_poly
from rosespec.sachs import (PathPartition, SachsSubgraph, matchings_count,
                            path_union_matchings, rose_matchings, sachs_char_poly,
                            sachs_coefficient, sachs_subgraphs, simple_cycles)
from rosespec.search import enumerate_connected
from rosespec.suites import path_union_extension_check, path_union_suite, partitions


def brute_matchings(g, j):
    return sum(1 for combo in combinations(g.edges, j)
               if len({v for e in combo for v in e}) == 2 * j)


def test_matching_examples():
    assert path_union_matchings((1, 3), 2) == 0
    assert path_union_matchings((2, 2), 2) == 1
    assert matchings_count(cycle_graph(6), 3) == 2
    assert matchings_count(build_rose((3, 4)), 0) == 1
    assert path_union_matchings((4, 4), 2) == path_union_matchings((3, 5), 2)
    assert path_union_matchings((7,), 0) == 1
    with pytest.raises(ValueError):
        matchings_count(cycle_graph(4), -1)


def test_bowtie_two_matchings():
    # one triangle edge from each side, except the two edges meeting at the centre
    bowtie = build_rose((3, 3))
    assert rose_matchings((3, 3), 1) == 6
    assert rose_matchings((3, 3), 2) == brute_matchings(bowtie, 2) == 5


def test_matchings_oracle(rng):
    for _ in range(100):
        g = random_graph(rng, rng.randint(0, 8))
        for j in range(0, 5):
            assert matchings_count(g, j) == brute_matchings(g, j)


def test_rose_recurrence_all_small():
    for n in range(3, 13):
        for spec in roses_on(n):
            g = build_rose(spec)
            for j in range(0, n // 2 + 2):
                assert rose_matchings(spec, j) == matchings_count(g, j)


def test_path_unions_against_explicit_graphs():
    for n in range(1, 13):
        for k in range(1, n + 1):
            for parts in partitions(n, k):
                g = PathPartition(parts).graph()
                assert g.n == n
                for j in range(0, n // 2 + 2):
                    assert path_union_matchings(parts, j) == matchings_count(g, j)


def test_short_paths_have_no_large_matchings():
    for order in range(1, 15):
        for i in range(order // 2 + 1, order + 2):
            assert path_union_matchings((order,), i) == 0


def test_path_union_counts_constant():
    res = path_union_suite(4, 4, 16)
    assert res["passed"], res["violations"]
    assert res["classes"] > 100


def test_path_union_extension_spot_check():
    res = path_union_extension_check(12)
    assert res["comparisons"] > 0
    # counterexamples would be reported; none occur on rose-derived unions
    assert res["counterexample_count"] == 0


def test_path_partition():
    p = PathPartition([3, 1, 2])
    assert p.lengths == (1, 2, 3) and p.n == 6
    with pytest.raises(ValueError):
        PathPartition([0, 2])


def test_simple_cycles():
    from math import factorial
    k4 = Graph.from_edges(4, combinations(range(4), 2))
    assert len(simple_cycles(k4)) == 7
    assert len(simple_cycles(build_rose((3, 4, 5)))) == 3
    k5 = Graph.from_edges(5, combinations(range(5), 2))
    expected = sum(factorial(5) // factorial(5 - r) // (2 * r) for r in range(3, 6))
    assert len(simple_cycles(k5)) == expected


def test_sachs_subgraph_examples():
    c3 = cycle_graph(3)
    assert [s.cycle_components for s in sachs_subgraphs(c3, 3)] == [((0, 1, 2),)]
    assert len(sachs_subgraphs(c3, 2)) == 3
    bowtie = build_rose((3, 3))
    four = sachs_subgraphs(bowtie, 4)
    # four vertices: a 2-matching, or a triangle plus a disjoint edge (none here)
    assert len(four) == matchings_count(bowtie, 2) == 5
    assert all(s.order == 4 for s in four)
    five = sachs_subgraphs(bowtie, 5)
    assert sorted((s.cycles, len(s.edge_components)) for s in five) == [(1, 1), (1, 1)]
    with pytest.raises(ValueError):
        sachs_subgraphs(c3, 0)


def test_sachs_subgraph_fields():
    s = SachsSubgraph(((0, 1),), ((2, 3, 4),))
    assert (s.order, s.components, s.cycles, s.weight) == (5, 2, 1, 2)


def _brute_sachs(g, i):
    """Enumerate edge subsets; keep those that are disjoint edges and cycles."""
    total = 0
    verts = range(g.n)
    for vs in combinations(verts, i):
        sub = [e for e in g.edges if e[0] in vs and e[1] in vs]
        for r in range(len(sub) + 1):
            for es in combinations(sub, r):
                deg = {v: 0 for v in vs}
                for u, v in es:
                    deg[u] += 1
                    deg[v] += 1
                if not all(1 <= deg[v] <= 2 for v in vs):
                    continue
                adj = {v: [] for v in vs}
                for u, v in es:
                    adj[u].append(v)
                    adj[v].append(u)
                seen, comps, cycles, ok = set(), 0, 0, True
                for s in vs:
                    if s in seen:
                        continue
                    stack, part = [s], []
                    seen.add(s)
                    while stack:
                        u = stack.pop()
                        part.append(u)
                        for w in adj[u]:
                            if w not in seen:
                                seen.add(w)
                                stack.append(w)
                    ecount = sum(deg[v] for v in part) // 2
                    if len(part) == 2 and ecount == 1:
                        comps += 1
                    elif len(part) >= 3 and ecount == len(part) and all(deg[v] == 2 for v in part):
                        comps += 1
                        cycles += 1
                    else:
                        ok = False
                if ok:
                    total += (-1) ** comps * 2 ** cycles
    return total


def test_sachs_subgraphs_against_brute_force(rng):
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 6))
        for i in range(1, g.n + 1):
            subs = sachs_subgraphs(g, i)
            assert len(set(subs)) == len(subs)
            assert sum(s.weight for s in subs) == _brute_sachs(g, i) == sachs_coefficient(g, i)


def test_sachs_coefficient_examples(rng):
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 8))
        assert sachs_coefficient(g, 1) == 0
        assert sachs_coefficient(g, 2) == -g.m
    assert sachs_coefficient(build_rose((3, 3)), 3) == -4


def test_sachs_theorem_connected_graphs_and_roses():
    for n in range(1, 8):
        for m in range(n - 1, n * (n - 1) // 2 + 1):
            for g in enumerate_connected(n, m):
                assert sachs_char_poly(g) == char_poly(g.adjacency())
    for n in range(3, 11):
        for spec in roses_on(n):
            g = build_rose(spec)
            assert sachs_char_poly(g) == char_poly(g.adjacency())


def test_path_matchings_large_exact():
    # m(P_40, 20) = 1 (the unique perfect matching), m(P_n, 1) = n - 1
    assert path_union_matchings((40,), 20) == 1
    assert path_union_matchings((40,), 1) == 39
    assert matchings_count(path_graph(10), 5) == 1
