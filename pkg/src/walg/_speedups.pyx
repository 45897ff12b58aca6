# cython: language_level=3
"""Compiled twin of walg._kernels; keep the two modules in lockstep.

Same data layout and same algorithms; the win comes from typed loop
variables and compiled dict/tuple traffic around the arbitrary-precision
scalars (Fraction coefficients, int matrix entries).
"""

from fractions import Fraction
from math import gcd

_ONE = Fraction(1)


cdef inline void _acc(dict out, tuple mono, object coeff):
    c = out.get(mono)
    if c is None:
        out[mono] = coeff
    else:
        c = c + coeff
        if c:
            out[mono] = c
        else:
            del out[mono]


cpdef dict gen_times_mono(int g, tuple mono, dict bracket, cache):
    """Straighten x_g * mono into PBW normal form (left multiplication)."""
    cdef int i, e, k
    cdef dict out
    cdef tuple rest, n1, n2
    if not mono:
        return {((g, 1),): _ONE}
    if cache is not None:
        hit = cache.get((g, mono))
        if hit is not None:
            return hit
    i = mono[0][0]
    e = mono[0][1]
    if g < i:
        out = {((g, 1),) + mono: _ONE}
    elif g == i:
        out = {((g, e + 1),) + mono[1:]: _ONE}
    else:
        rest = ((i, e - 1),) + mono[1:] if e > 1 else mono[1:]
        out = {}
        for n1, c1 in gen_times_mono(g, rest, bracket, cache).items():
            for n2, c2 in gen_times_mono(i, n1, bracket, cache).items():
                _acc(out, n2, c1 * c2)
        for k, c in bracket.get((i, g), ()):
            # [x_g, x_i] = -[x_i, x_g]
            for n1, c1 in gen_times_mono(k, rest, bracket, cache).items():
                _acc(out, n1, -c * c1)
    if cache is not None:
        cache[(g, mono)] = out
    return out


cpdef dict mono_times_gen(tuple mono, int g, dict bracket, cache):
    """Straighten mono * x_g (right multiplication by a generator)."""
    cdef int j, e, k, last
    cdef dict out
    cdef tuple head, n1, n2
    if not mono:
        return {((g, 1),): _ONE}
    if cache is not None:
        hit = cache.get((mono, g))
        if hit is not None:
            return hit
    last = len(mono) - 1
    j = mono[last][0]
    e = mono[last][1]
    if g > j:
        out = {mono + ((g, 1),): _ONE}
    elif g == j:
        out = {mono[:last] + ((g, e + 1),): _ONE}
    else:
        head = mono[:last] + ((j, e - 1),) if e > 1 else mono[:last]
        out = {}
        for n1, c1 in mono_times_gen(head, g, bracket, cache).items():
            for n2, c2 in mono_times_gen(n1, j, bracket, cache).items():
                _acc(out, n2, c1 * c2)
        for k, c in bracket.get((g, j), ()):
            # [x_j, x_g] = -[x_g, x_j]
            for n1, c1 in mono_times_gen(head, k, bracket, cache).items():
                _acc(out, n1, -c * c1)
    if cache is not None:
        cache[(mono, g)] = out
    return out


cdef dict _gen_times_terms(int g, dict terms, dict bracket, cache):
    cdef dict out = {}
    cdef tuple mono, n
    for mono, c in terms.items():
        for n, c1 in gen_times_mono(g, mono, bracket, cache).items():
            _acc(out, n, c * c1)
    return out


cdef dict _terms_times_gen(dict terms, int g, dict bracket, cache):
    cdef dict out = {}
    cdef tuple mono, n
    for mono, c in terms.items():
        for n, c1 in mono_times_gen(mono, g, bracket, cache).items():
            _acc(out, n, c * c1)
    return out


cpdef dict mul_terms(dict t1, dict t2, dict bracket, cache):
    """PBW product of two straightened term dicts (left-to-right fold)."""
    cdef dict out = {}
    cdef dict acc
    cdef tuple mono, n
    cdef int idx, exp, r
    for mono, c in t1.items():
        if not mono:
            for n, c2 in t2.items():
                _acc(out, n, c * c2)
            continue
        acc = t2
        for idx, exp in reversed(mono):
            for r in range(exp):
                acc = _gen_times_terms(idx, acc, bracket, cache)
        for n, c2 in acc.items():
            _acc(out, n, c * c2)
    return out


cpdef dict mul_terms_rl(dict t1, dict t2, dict bracket, cache):
    """PBW product reducing right-to-left; cross-check for `mul_terms`."""
    cdef dict out = {}
    cdef dict acc
    cdef tuple mono, n
    cdef int idx, exp, r
    for mono, c in t2.items():
        if not mono:
            for n, c1 in t1.items():
                _acc(out, n, c * c1)
            continue
        acc = t1
        for idx, exp in mono:
            for r in range(exp):
                acc = _terms_times_gen(acc, idx, bracket, cache)
        for n, c1 in acc.items():
            _acc(out, n, c * c1)
    return out


# ---------------------------------------------------------------------------
# fraction-free elimination
# ---------------------------------------------------------------------------


cdef dict _int_row(row):
    cdef dict out = {}
    lcm = 1
    for c in row.values():
        d = c.denominator
        lcm = lcm * d // gcd(lcm, d)
    g = 0
    for j, c in row.items():
        v = c.numerator * (lcm // c.denominator)
        if v:
            out[j] = v
            g = gcd(g, v)
    if g > 1:
        for j in out:
            out[j] = out[j] // g
    return out


cdef dict _normalize(dict row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for j in row:
            row[j] = row[j] // g
    return row


def rref_sparse(rows, ncols):
    """Canonical reduced row echelon form of sparse Fraction rows."""
    cdef list work = []
    cdef list pivots = []
    cdef list pivot_rows = []
    cdef list nxt
    cdef dict r, prow, new
    cdef int col, best, idx, i, i2
    for r0 in rows:
        r = _int_row(r0)
        if r:
            work.append(r)
    while work:
        col = min(min(r) for r in work)
        best = -1
        for idx in range(len(work)):
            r = work[idx]
            if col in r and (best < 0 or len(r) < len(<dict> work[best])):
                best = idx
        prow = work.pop(best)
        p = prow[col]
        nxt = []
        for r in work:
            a = r.get(col)
            if a is None:
                nxt.append(r)
                continue
            new = {}
            for j, v in r.items():
                w = p * v - a * prow.get(j, 0)
                if w:
                    new[j] = w
            for j, v in prow.items():
                if j not in r:
                    w = -a * v
                    if w:
                        new[j] = w
            if new:
                nxt.append(_normalize(new))
        work = nxt
        pivots.append(col)
        pivot_rows.append(prow)
    for i in range(len(pivot_rows) - 1, -1, -1):
        col = pivots[i]
        prow = pivot_rows[i]
        p = prow[col]
        for i2 in range(i):
            r = pivot_rows[i2]
            a = r.get(col)
            if a is None:
                continue
            new = {}
            for j, v in r.items():
                w = p * v - a * prow.get(j, 0)
                if w:
                    new[j] = w
            for j, v in prow.items():
                if j not in r:
                    w = -a * v
                    if w:
                        new[j] = w
            pivot_rows[i2] = _normalize(new)
    out = []
    for i in range(len(pivot_rows)):
        prow = pivot_rows[i]
        p = prow[pivots[i]]
        out.append({j: Fraction(v, p) for j, v in prow.items()})
    return pivots, out


def rref_dense(rows, int ncols):
    """Dense variant of `rref_sparse` for small matrices; same contract."""
    cdef list work = []
    cdef list pivots = []
    cdef list pivot_rows = []
    cdef list nxt, ints, r2
    cdef int col, best, idx, i, i2
    for r in rows:
        lcm = 1
        for c in r:
            if c:
                d = c.denominator
                lcm = lcm * d // gcd(lcm, d)
        ints = [c.numerator * (lcm // c.denominator) for c in r]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        if g:
            work.append(ints)
    for col in range(ncols):
        best = -1
        for idx in range(len(work)):
            if (<list> work[idx])[col]:
                best = idx
                break
        if best < 0:
            continue
        prow = work.pop(best)
        p = prow[col]
        nxt = []
        for r in work:
            a = r[col]
            if a:
                r2 = [p * v - a * w for v, w in zip(r, prow)]
                g = 0
                for v in r2:
                    g = gcd(g, v)
                if g > 1:
                    r2 = [v // g for v in r2]
                if not g:
                    continue
                nxt.append(r2)
            else:
                nxt.append(r)
        work = nxt
        pivots.append(col)
        pivot_rows.append(prow)
        if not work:
            break
    for i in range(len(pivot_rows) - 1, -1, -1):
        col = pivots[i]
        prow = pivot_rows[i]
        p = prow[col]
        for i2 in range(i):
            r = pivot_rows[i2]
            a = r[col]
            if not a:
                continue
            r2 = [p * v - a * w for v, w in zip(r, prow)]
            g = 0
            for v in r2:
                g = gcd(g, v)
            if g > 1:
                r2 = [v // g for v in r2]
            pivot_rows[i2] = r2
    out = []
    for i in range(len(pivot_rows)):
        prow = pivot_rows[i]
        p = prow[pivots[i]]
        out.append({j: Fraction(v, p) for j, v in enumerate(prow) if v})
    return pivots, out
