"""Exact integer and rational matrix algebra.

Matrices are lists of rows of Python ints (or ``Fraction`` where noted).
Nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import comb, lcm, prod

import numpy as np

from . import kernels
from .graph import Graph


class Polynomial:
    """Dense polynomial with exact coefficients; ``coeffs[i]`` multiplies x**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, roots):
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Polynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        """Long division; the quotient stays integral when the divisor is monic."""
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial([]), Polynomial(rem)
        quo = [0] * (dq + 1)
        for i in range(dq, -1, -1):
            c = rem[i + other.degree]
            if c:
                if isinstance(c, int) and isinstance(lead, int) and c % lead == 0:
                    q = c // lead
                else:
                    q = Fraction(c) / lead
                quo[i] = q
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        return Polynomial(quo), Polynomial(rem)

    def divides(self, other: "Polynomial") -> bool:
        """True iff ``self`` divides ``other``."""
        return not divmod(other, self)[1].coeffs

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"


# Kept for readers who think in the integer case.
IntPolynomial = Polynomial


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(m):
                    oi[j] += x * bt[j]
    return out


def trace(a) -> int:
    return sum(a[i][i] for i in range(len(a)))


def trace_power(a, j: int) -> int:
    if j < 1:
        raise ValueError("power must be positive")
    p = a
    for _ in range(j - 1):
        p = matmul(p, a)
    return trace(p)


def _check_square(a):
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    return n


def char_poly(a, method: str = "faddeev") -> Polynomial:
    """``det(xI - a)``, monic of degree ``len(a)``.

    ``method`` is ``"faddeev"`` (Faddeev-LeVerrier; every division by the
    step index is exact for integer input) or ``"bareiss"`` (fraction-free
    determinants at ``n + 1`` integer points, then exact interpolation).
    """
    n = _check_square(a)
    if method == "bareiss":
        return _char_poly_interp(a, n)
    if method != "faddeev":
        raise ValueError(f"unknown method {method!r}")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        # m <- a*m + c*I ; c <- -tr(a*m)/k
        for i in range(n):
            m[i][i] += c
        am = matmul(a, m)
        t = trace(am)
        if isinstance(t, int):
            if t % k:
                raise ArithmeticError("non-exact Faddeev step; input not integral")
            c = -(t // k)
        else:
            c = -Fraction(t) / k
        coeffs[n - k] = c
        m = am
    return Polynomial(coeffs)


def determinant(a) -> int:
    """Bareiss fraction-free elimination; exact for integer matrices."""
    n = _check_square(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                v = row_i[j] * pk - mik * row_k[j]
                row_i[j] = v // prev if isinstance(v, int) and isinstance(prev, int) else v / prev
            row_i[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def _char_poly_interp(a, n):
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        mx = [[(x if i == j else 0) - a[i][j] for j in range(n)] for i in range(n)]
        ys.append(determinant(mx))
    # Newton divided differences at 0..n, then expand.
    dd = [Fraction(y) for y in ys]
    coef_newton = [dd[0]]
    for level in range(1, n + 1):
        dd = [(dd[i + 1] - dd[i]) / level for i in range(len(dd) - 1)]
        coef_newton.append(dd[0])
    poly = Polynomial([coef_newton[n]])
    for i in range(n - 1, -1, -1):
        poly = poly * Polynomial([-xs[i], 1]) + Polynomial([coef_newton[i]])
    return Polynomial([int(c) if Fraction(c).denominator == 1 else c for c in poly.coeffs])


def char_poly_rational(q) -> Polynomial:
    """Char poly of a ``Fraction`` matrix via the integer matrix ``d*q``.

    If ``det(xI - d q) = sum c_i x^i`` then ``det(xI - q) = sum c_i d^(i-n) x^i``.
    """
    n = _check_square(q)
    d = reduce(lcm, (Fraction(x).denominator for row in q for x in row), 1)
    scaled = [[int(Fraction(x) * d) for x in row] for row in q]
    cp = char_poly(scaled)
    if d == 1:
        return cp
    out = []
    for i, c in enumerate(cp.coeffs):
        v = Fraction(c, d ** (n - i))
        out.append(int(v) if v.denominator == 1 else v)
    return Polynomial(out)


def laplacian(g: Graph) -> list[list[int]]:
    lap = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        lap[u][v] = lap[v][u] = -1
    for i, d in enumerate(g.degrees):
        lap[i][i] = d
    return lap


def spanning_tree_count(g: Graph) -> int:
    """Matrix-Tree theorem: determinant of the Laplacian with row/col 0 removed."""
    if g.n == 0:
        raise ValueError("spanning trees undefined for the null graph")
    lap = laplacian(g)
    minor = [row[1:] for row in lap[1:]]
    return determinant(minor)


# modular char polys ---------------------------------------------------------

PRIMES = (2147483647, 2147483629, 2147483587, 2147483579,
          2147483563, 2147483549, 2147483543, 2147483497,
          2147483489, 2147483477, 2147483423, 2147483399)


def coefficient_bound(n: int, radius: int) -> int:
    """Bound on |coefficients| of a char poly whose roots lie in ``|z| <= radius``."""
    return max(comb(n, i) * radius ** i for i in range(n + 1))


def primes_for_bound(bound: int) -> tuple[int, ...]:
    """Enough primes that their product exceeds ``2 * bound``."""
    out = []
    acc = 1
    for p in PRIMES:
        out.append(p)
        acc *= p
        if acc > 2 * bound:
            return tuple(out)
    raise OverflowError("coefficient bound too large for the modular path")


def crt_symmetric(residues, primes) -> int:
    """Integer in ``(-M/2, M/2]`` with the given residues, ``M = prod(primes)``."""
    x, mod = 0, 1
    for r, p in zip(residues, primes):
        r = int(r)
        t = ((r - x) * pow(mod, -1, p)) % p
        x += mod * t
        mod *= p
    if x > mod // 2:
        x -= mod
    return x


def char_poly_modular(a) -> Polynomial:
    """Char poly of an integer matrix by Hessenberg reduction mod several primes."""
    n = _check_square(a)
    radius = max((sum(abs(x) for x in row) for row in a), default=0)
    primes = primes_for_bound(coefficient_bound(n, radius))
    res = [kernels.charpoly_mod(np.array([[x % p for x in row] for row in a],
                                         dtype=np.int64).reshape(n, n), n, p)
           for p in primes]
    return Polynomial([crt_symmetric([r[i] for r in res], primes) for i in range(n + 1)])


def polynomial_product(polys) -> Polynomial:
    return prod(polys, start=Polynomial([1]))
