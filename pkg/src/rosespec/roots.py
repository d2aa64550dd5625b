"""Certified decimal display of real roots of exact polynomials.

Roots are isolated with Sturm sequences over the rationals and bisected
until every displayed digit is certain. Digits are truncated, not rounded,
so ``0.6086`` means the root lies in ``[0.6086, 0.6087)``.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .linalg import Polynomial


def _monic(p: Polynomial) -> Polynomial:
    lead = Fraction(p.coeffs[-1])
    return Polynomial([Fraction(c) / lead for c in p.coeffs])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    a, b = _monic(a) if a.coeffs else a, _monic(b) if b.coeffs else b
    while b.coeffs:
        a, b = b, divmod(a, b)[1]
        if b.coeffs:
            b = _monic(b)
    return _monic(a) if a.coeffs else a


def squarefree_factors(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: ``p = c * prod(a_i ** i)`` with each ``a_i`` squarefree."""
    out = []
    dp = p.derivative()
    a0 = poly_gcd(p, dp)
    b = divmod(p, a0)[0]
    c = divmod(dp, a0)[0]
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = divmod(b, a)[0]
        c = divmod(d, a)[0]
        d = c - b.derivative()
        if a.degree > 0:
            out.append((_monic(a), i))
        i += 1
    return out


def _sturm_chain(q: Polynomial) -> list[Polynomial]:
    chain = [q, q.derivative()]
    while chain[-1].degree > 0:
        r = divmod(chain[-2], chain[-1])[1]
        if not r.coeffs:
            break
        chain.append(-r)
    return chain


def _sign_changes(chain, x) -> int:
    signs = [s for s in (p(x) for p in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _isolate(q: Polynomial) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]`` each holding one root of squarefree ``q``."""
    chain = _sturm_chain(q)
    lead = Fraction(q.coeffs[-1])
    bound = 1 + max(abs(Fraction(c) / lead) for c in q.coeffs[:-1]) if q.degree > 0 else Fraction(1)
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        cnt = _sign_changes(chain, lo) - _sign_changes(chain, hi)
        if cnt == 0:
            continue
        if cnt == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def _format(units: int, places: int, negative: bool) -> str:
    digits = str(abs(units)).rjust(places + 1, "0")
    body = digits if places == 0 else digits[:-places] + "." + digits[-places:]
    return ("-" if negative else "") + body


def _exact(x: Fraction, places: int) -> str:
    return _format(int(x * 10 ** places), places, x < 0)


def _refine(chain, lo: Fraction, hi: Fraction, places: int) -> str:
    """Bisect ``(lo, hi]`` (one root) at decimal grid points.

    Splitting only at multiples of ``10**-places`` means a rational root on
    the grid is hit exactly; otherwise the interval ends up strictly between
    two consecutive grid points and the truncated digits are certain.
    """
    q = chain[0]
    s = 10 ** places
    while True:
        if q(hi) == 0:
            return _exact(hi, places)
        k_lo = math.floor(lo * s) + 1
        k_hi = math.ceil(hi * s) - 1
        if k_lo > k_hi:
            k = math.floor(lo * s)
            return _format(k if k >= 0 else k + 1, places, k < 0)
        g = Fraction((k_lo + k_hi) // 2, s)
        if q(g) == 0:
            return _exact(g, places)
        if _sign_changes(chain, lo) - _sign_changes(chain, g) == 1:
            hi = g
        else:
            lo = g


def real_roots(p: Polynomial, places: int = 6) -> list[tuple[str, int]]:
    """``[(decimal, multiplicity), ...]`` in increasing order."""
    if places < 0:
        raise ValueError("places must be nonnegative")
    found = []
    for factor, mult in squarefree_factors(p):
        chain = _sturm_chain(factor)
        for lo, hi in _isolate(factor):
            found.append((lo, hi, chain, mult))
    shown = [(_refine(chain, lo, hi, places), mult) for lo, hi, chain, mult in found]
    # intervals of different factors can overlap; truncation keeps order
    return sorted(shown, key=lambda t: Fraction(t[0]))


def real_roots_flat(p: Polynomial, places: int = 6) -> list[str]:
    """Roots repeated by multiplicity."""
    return [r for r, mult in real_roots(p, places) for _ in range(mult)]
