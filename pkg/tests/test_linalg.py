import random
from fractions import Fraction

import pytest

from conftest import random_graph
from rosespec.graph import build_rose, cycle_graph, path_graph, roses_on, Graph
from rosespec.linalg import (PRIMES, Polynomial, char_poly, char_poly_modular,
                             char_poly_rational, coefficient_bound, crt_symmetric, determinant,
                             identity, laplacian, primes_for_bound, spanning_tree_count,
                             trace, trace_power)


def random_matrix(rng, n, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


def shifted(a, x):
    return [[(x if i == j else 0) - a[i][j] for j in range(len(a))] for i in range(len(a))]


def test_polynomial_basics():
    p = Polynomial([1, 2, 0, 0])
    assert p.coeffs == (1, 2) and p.degree == 1
    assert Polynomial([]).degree == -1
    assert Polynomial.from_roots([1, -1]) == Polynomial([-1, 0, 1])
    q, r = divmod(Polynomial([-1, 0, 1]), Polynomial([-1, 1]))
    assert q == Polynomial([1, 1]) and not r.coeffs
    assert Polynomial([-1, 1]).divides(Polynomial([-1, 0, 1]))
    assert not Polynomial([2, 1]).divides(Polynomial([-1, 0, 1]))
    assert Polynomial([1, 1, 1]).derivative() == Polynomial([1, 2])
    assert Polynomial([1, 2, 3])(2) == 17


def test_char_poly_examples():
    assert char_poly([[0, 0], [0, 0]]) == Polynomial([0, 0, 1])
    assert char_poly(path_graph(2).adjacency()) == Polynomial([-1, 0, 1])
    expected = Polynomial.from_roots([0, 2, 3, 3]) * Polynomial([4, -6, 1])
    assert char_poly(laplacian(build_rose((3, 4)))) == expected
    assert char_poly([]) == Polynomial([1])


def test_char_poly_methods_agree_and_match_determinant(rng):
    for _ in range(50):
        n = rng.randint(1, 6)
        a = random_matrix(rng, n)
        cp = char_poly(a)
        assert cp == char_poly(a, "bareiss") == char_poly_modular(a)
        assert cp.degree == n and cp.coeffs[-1] == 1
        assert cp.coeffs[n - 1] == -trace(a)
        for _ in range(10):
            x = rng.randint(-20, 20)
            assert cp(x) == determinant(shifted(a, x))


def test_char_poly_bad_method():
    with pytest.raises(ValueError):
        char_poly([[1]], "eigen")
    with pytest.raises(ValueError):
        char_poly([[1, 2]])


def test_determinant_examples(rng):
    assert determinant([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert determinant([[1, 1], [1, 1]]) == 0
    lap = laplacian(cycle_graph(3))
    assert determinant([row[1:] for row in lap[1:]]) == 3
    for _ in range(30):
        n = rng.randint(1, 6)
        a = random_matrix(rng, n)
        assert determinant(a) == (-1) ** n * char_poly(a).coeffs[0]


def test_determinant_cofactor_oracle(rng):
    def cofactor(a):
        if len(a) == 1:
            return a[0][0]
        return sum((-1) ** j * a[0][j] * cofactor([r[:j] + r[j + 1:] for r in a[1:]])
                   for j in range(len(a)))
    for _ in range(30):
        a = random_matrix(rng, rng.randint(1, 5), -9, 9)
        assert determinant(a) == cofactor(a)


def test_big_integers():
    a = [[10 ** 30 + i * 7 + j for j in range(4)] for i in range(4)]
    a[0][0] += 1
    cp = char_poly(a)
    assert cp == char_poly(a, "bareiss")
    assert cp(3) == determinant(shifted(a, 3))


def test_rational_char_poly():
    q = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 3), Fraction(-1, 2)]]
    cp = char_poly_rational(q)
    # x^2 - tr x + det
    assert cp == Polynomial([Fraction(-1, 4) - Fraction(1, 9), 0, 1])


def test_spanning_trees():
    assert spanning_tree_count(build_rose((3, 4))) == 12
    assert spanning_tree_count(build_rose((3, 5))) == 15
    for length in range(3, 13):
        assert spanning_tree_count(cycle_graph(length)) == length
    assert spanning_tree_count(Graph(3, ((0, 1),))) == 0
    assert spanning_tree_count(Graph(1)) == 1
    with pytest.raises(ValueError):
        spanning_tree_count(Graph(0))


def test_spanning_trees_of_trees():
    r = random.Random(5)
    for n in range(1, 9):
        for _ in range(10):
            edges = [(r.randrange(v), v) for v in range(1, n)]
            assert spanning_tree_count(Graph.from_edges(n, edges)) == 1


def test_spanning_trees_of_roses_multiply():
    for n in range(3, 13):
        for spec in roses_on(n):
            prod = 1
            for x in spec.lengths:
                prod *= x
            assert spanning_tree_count(build_rose(spec)) == prod


def test_trace_power_examples():
    assert trace_power(cycle_graph(3).adjacency(), 3) == 6
    assert trace_power(build_rose((3, 4)).adjacency(), 1) == 0
    assert trace_power(laplacian(build_rose((3, 4))), 1) == 14
    with pytest.raises(ValueError):
        trace_power(identity(2), 0)


def test_newton_identities(rng):
    # power sums p_j from char poly coefficients e_i: p_j = -j c_{n-j} - sum c_{n-i} p_{j-i}
    for _ in range(20):
        g = random_graph(rng, rng.randint(1, 8))
        lap = laplacian(g)
        n = g.n
        c = char_poly(lap).coeffs
        e = [c[n - i] if i <= n else 0 for i in range(6)]
        p = {}
        for j in range(1, 6):
            p[j] = -j * e[j] - sum(e[i] * p[j - i] for i in range(1, j))
            assert p[j] == trace_power(lap, j)


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def test_modular_primes_are_prime():
    assert len(set(PRIMES)) == len(PRIMES)
    for p in PRIMES:
        assert p < 2 ** 31 and _is_prime(p)


def test_crt_and_bounds():
    primes = PRIMES[:3]
    for x in (0, 1, -1, 12345678901234567, -98765432109876543):
        assert crt_symmetric([x % p for p in primes], primes) == x
    assert coefficient_bound(3, 2) == 12
    with pytest.raises(OverflowError):
        primes_for_bound(10 ** 400)
