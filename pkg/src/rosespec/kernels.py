"""Hot inner loops for canonical labeling, augmentation and modular char polys.

Graphs enter as int64 arrays of adjacency bitmasks: bit ``j`` of ``rows[i]``
is set iff ``i ~ j``. This limits kernels to ``MAX_ORDER`` vertices.

Every function here runs unchanged under numba or plain Python.
"""
import numpy as np

from ._jit import njit

MAX_ORDER = 62


@njit
def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def degrees(rows, n):
    deg = np.zeros(n, np.int64)
    for i in range(n):
        deg[i] = popcount(rows[i])
    return deg


@njit
def component_count(rows, n):
    seen = np.int64(0)
    comps = 0
    for s in range(n):
        if (seen >> s) & 1:
            continue
        comps += 1
        frontier = np.int64(1) << s
        seen |= frontier
        while frontier:
            nxt = np.int64(0)
            for v in range(n):
                if (frontier >> v) & 1:
                    nxt |= rows[v]
            frontier = nxt & ~seen
            seen |= frontier
    return comps


@njit
def _next_break(brk, i):
    j = i + 1
    while not brk[j]:
        j += 1
    return j


@njit
def refine(rows, n, order, brk):
    """Refine an ordered partition in place until it is equitable.

    ``order`` lists vertices by position; ``brk[p]`` marks the start of a
    cell (``brk[n]`` is always set). Each cell is split by neighbour counts
    into every other cell, sub-cells ordered by increasing count.
    """
    cnt = np.empty(n, np.int64)
    changed = True
    while changed:
        changed = False
        ws = 0
        while ws < n:
            we = _next_break(brk, ws)
            wmask = np.int64(0)
            for p in range(ws, we):
                wmask |= np.int64(1) << order[p]
            xs = 0
            while xs < n:
                xe = _next_break(brk, xs)
                if xe - xs > 1:
                    uniform = True
                    for p in range(xs, xe):
                        cnt[p] = popcount(rows[order[p]] & wmask)
                        if cnt[p] != cnt[xs]:
                            uniform = False
                    if not uniform:
                        for p in range(xs + 1, xe):
                            cv = cnt[p]
                            ov = order[p]
                            q = p - 1
                            while q >= xs and cnt[q] > cv:
                                cnt[q + 1] = cnt[q]
                                order[q + 1] = order[q]
                                q -= 1
                            cnt[q + 1] = cv
                            order[q + 1] = ov
                        for p in range(xs + 1, xe):
                            if cnt[p] != cnt[p - 1]:
                                brk[p] = True
                        changed = True
                xs = xe
            ws = we


@njit
def _first_open_cell(brk, n):
    s = 0
    while s < n:
        e = _next_break(brk, s)
        if e - s > 1:
            return s, e
        s = e
    return -1, -1


@njit
def _relabel(rows, n, order, out):
    pos = np.empty(n, np.int64)
    for i in range(n):
        pos[order[i]] = i
    for i in range(n):
        r = rows[order[i]]
        c = np.int64(0)
        for j in range(n):
            if (r >> j) & 1:
                c |= np.int64(1) << pos[j]
        out[i] = c


@njit
def canonical_rows(rows, n):
    """Return ``(perm, crows)``: vertex ``perm[i]`` becomes ``i``.

    ``crows`` is the lexicographically least relabelled adjacency over all
    leaves of the individualisation-refinement tree. Branches on twin
    vertices (``N(u) - v == N(v) - u``) are skipped: swapping twins is an
    automorphism fixing everything already individualised.
    """
    perm = np.arange(n)
    best = np.zeros(n, np.int64)
    if n <= 1:
        for i in range(n):
            best[i] = rows[i]
        return perm, best
    s_order = np.empty((n + 1, n), np.int64)
    s_brk = np.zeros((n + 1, n + 1), np.bool_)
    s_cs = np.empty(n + 1, np.int64)
    s_ce = np.empty(n + 1, np.int64)
    s_pos = np.empty(n + 1, np.int64)
    for i in range(n):
        s_order[0, i] = i
    s_brk[0, 0] = True
    s_brk[0, n] = True
    refine(rows, n, s_order[0], s_brk[0])
    cur = np.empty(n, np.int64)
    have_best = False

    cs, ce = _first_open_cell(s_brk[0], n)
    if cs < 0:
        _relabel(rows, n, s_order[0], best)
        for i in range(n):
            perm[i] = s_order[0, i]
        return perm, best
    s_cs[0] = cs
    s_ce[0] = ce
    s_pos[0] = cs
    d = 0
    while d >= 0:
        p = s_pos[d]
        if p >= s_ce[d]:
            d -= 1
            continue
        s_pos[d] = p + 1
        v = s_order[d, p]
        skip = False
        for q in range(s_cs[d], p):
            u = s_order[d, q]
            if (rows[u] & ~(np.int64(1) << v)) == (rows[v] & ~(np.int64(1) << u)):
                skip = True
                break
        if skip:
            continue
        nd = d + 1
        for i in range(n):
            s_order[nd, i] = s_order[d, i]
        for i in range(n + 1):
            s_brk[nd, i] = s_brk[d, i]
        c0 = s_cs[d]
        s_order[nd, p] = s_order[nd, c0]
        s_order[nd, c0] = v
        s_brk[nd, c0 + 1] = True
        refine(rows, n, s_order[nd], s_brk[nd])
        cs, ce = _first_open_cell(s_brk[nd], n)
        if cs >= 0:
            d = nd
            s_cs[d] = cs
            s_ce[d] = ce
            s_pos[d] = cs
            continue
        _relabel(rows, n, s_order[nd], cur)
        better = not have_best
        if have_best:
            for i in range(n):
                if cur[i] != best[i]:
                    better = cur[i] < best[i]
                    break
        if better:
            have_best = True
            for i in range(n):
                best[i] = cur[i]
                perm[i] = s_order[nd, i]
    return perm, best


@njit
def _degree_square_floor(deg, n, extra, min_deg):
    """Least reachable sum of squared degrees after ``extra`` more endpoints."""
    d = deg.copy()
    for i in range(n):
        if d[i] < min_deg:
            extra -= min_deg - d[i]
            d[i] = min_deg
    if extra < 0:
        return np.int64(-1)
    for _ in range(extra):
        k = 0
        for i in range(1, n):
            if d[i] < d[k]:
                k = i
        d[k] += 1
    s = np.int64(0)
    for i in range(n):
        s += d[i] * d[i]
    return s


@njit
def _rows_equal(a, b, n):
    for i in range(n):
        if a[i] != b[i]:
            return False
    return True


@njit
def expand_children(prow, n, m_target, connected, s2_target, max_deg):
    """Canonical-augmentation children of the canonical graph ``prow``.

    A child ``G + e`` is kept only if ``e`` lies in the orbit of the child's
    designated edge (the last edge of its canonical form), i.e. if deleting
    the designated edge gives back the parent's class. Children of one parent
    are deduplicated by canonical form.

    Pruning, all hereditary along subgraphs: ``s2_target >= 0`` bounds the
    final sum of squared degrees, ``max_deg >= 0`` caps degrees, and
    ``connected`` requires the remaining edges to be able to join all
    components. Returns an array of child canonical rows.
    """
    out = np.empty((n * (n - 1) // 2 + 1, n), np.int64)
    count = 0
    deg = degrees(prow, n)
    edges = 0
    s2 = np.int64(0)
    for i in range(n):
        edges += deg[i]
        s2 += deg[i] * deg[i]
    edges //= 2
    r = m_target - edges - 1
    if r < 0:
        return out[:0]
    child = np.empty(n, np.int64)
    red = np.empty(n, np.int64)
    for u in range(n):
        for v in range(u + 1, n):
            if (prow[u] >> v) & 1:
                continue
            if max_deg >= 0 and (deg[u] >= max_deg or deg[v] >= max_deg):
                continue
            if s2_target >= 0:
                cs2 = s2 + 2 * deg[u] + 2 * deg[v] + 2
                if cs2 > s2_target:
                    continue
                if r == 0 and cs2 != s2_target:
                    continue
                deg[u] += 1
                deg[v] += 1
                floor = _degree_square_floor(deg, n, 2 * r, 1 if connected else 0)
                deg[u] -= 1
                deg[v] -= 1
                if floor < 0 or floor > s2_target:
                    continue
            for i in range(n):
                child[i] = prow[i]
            child[u] |= np.int64(1) << v
            child[v] |= np.int64(1) << u
            if connected and component_count(child, n) - 1 > r:
                continue
            perm, crow = canonical_rows(child, n)
            dup = False
            for q in range(count):
                if _rows_equal(out[q], crow, n):
                    dup = True
                    break
            if dup:
                continue
            a = n - 2
            while a >= 0 and (crow[a] >> (a + 1)) == 0:
                a -= 1
            b = n - 1
            while not (crow[a] >> b) & 1:
                b -= 1
            x = perm[a]
            y = perm[b]
            if (x == u and y == v) or (x == v and y == u):
                ok = True
            else:
                for i in range(n):
                    red[i] = crow[i]
                red[a] &= ~(np.int64(1) << b)
                red[b] &= ~(np.int64(1) << a)
                _, rc = canonical_rows(red, n)
                ok = _rows_equal(rc, prow, n)
            if ok:
                for i in range(n):
                    out[count, i] = crow[i]
                count += 1
    return out[:count]


@njit
def _modinv(a, p):
    result = np.int64(1)
    base = a % p
    e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


@njit
def charpoly_mod(mat, n, p):
    """Ascending coefficients of ``det(xI - mat)`` modulo a prime ``p < 2**31``.

    Reduces to upper Hessenberg form by similarity, then runs the
    Hessenberg determinant recurrence.
    """
    h = np.empty((n, n), np.int64)
    for i in range(n):
        for j in range(n):
            h[i, j] = mat[i, j] % p
    for j in range(n - 2):
        piv = -1
        for i in range(j + 1, n):
            if h[i, j] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != j + 1:
            for c in range(n):
                t = h[piv, c]
                h[piv, c] = h[j + 1, c]
                h[j + 1, c] = t
            for r in range(n):
                t = h[r, piv]
                h[r, piv] = h[r, j + 1]
                h[r, j + 1] = t
        inv = _modinv(h[j + 1, j], p)
        for i in range(j + 2, n):
            if h[i, j] != 0:
                u = h[i, j] * inv % p
                for c in range(n):
                    h[i, c] = (h[i, c] - u * h[j + 1, c]) % p
                for r in range(n):
                    h[r, j + 1] = (h[r, j + 1] + u * h[r, i]) % p
    P = np.zeros((n + 1, n + 1), np.int64)
    P[0, 0] = 1
    for k in range(1, n + 1):
        hk = h[k - 1, k - 1]
        for c in range(k):
            P[k, c + 1] = (P[k, c + 1] + P[k - 1, c]) % p
            P[k, c] = (P[k, c] - hk * P[k - 1, c]) % p
        t = np.int64(1)
        for i in range(k - 1, 0, -1):
            t = t * h[i, i - 1] % p
            coef = h[i - 1, k - 1] * t % p
            if coef != 0:
                for c in range(i):
                    P[k, c] = (P[k, c] - coef * P[i - 1, c]) % p
    out = np.empty(n + 1, np.int64)
    for c in range(n + 1):
        out[c] = P[n, c]
    return out


@njit
def universal_residues(rows, n, alpha_mod, beta_mod, primes):
    """Char poly residues of ``alpha*D + beta*A`` for each prime.

    ``alpha_mod[k]`` and ``beta_mod[k]`` are the integer parameters already
    reduced modulo ``primes[k]``.
    """
    out = np.empty((primes.shape[0], n + 1), np.int64)
    mat = np.empty((n, n), np.int64)
    deg = degrees(rows, n)
    for k in range(primes.shape[0]):
        p = primes[k]
        for i in range(n):
            for j in range(n):
                mat[i, j] = beta_mod[k] if (rows[i] >> j) & 1 else 0
            mat[i, i] = alpha_mod[k] * deg[i] % p
        res = charpoly_mod(mat, n, p)
        for c in range(n + 1):
            out[k, c] = res[c]
    return out
