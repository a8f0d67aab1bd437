# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled row-reduction kernels.

F_p elimination runs on C int64 buffers; the Q kernel does fraction-free
integer elimination (arbitrary-precision Python ints, but without per-step
gcd reductions of Fractions) and normalizes to Fractions at the end.  Output
is bit-identical to the pure-Python kernel since the RREF is canonical.
"""

from fractions import Fraction
from math import gcd

from libc.stdlib cimport malloc, free

IMPL = "cython"


def rref_fp(rows, long long p):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return [], []
    cdef Py_ssize_t ncols = len(rows[0])
    cdef long long *m = <long long *> malloc(nrows * ncols * sizeof(long long))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t r, c, sel, piv_r
    cdef long long f, inv
    try:
        for r in range(nrows):
            row = rows[r]
            for c in range(ncols):
                m[r * ncols + c] = row[c] % p
        pivots = []
        piv_r = 0
        for col in range(ncols):
            sel = -1
            for r in range(piv_r, nrows):
                if m[r * ncols + col] != 0:
                    sel = r
                    break
            if sel < 0:
                continue
            if sel != piv_r:
                for c in range(ncols):
                    f = m[piv_r * ncols + c]
                    m[piv_r * ncols + c] = m[sel * ncols + c]
                    m[sel * ncols + c] = f
            inv = pow(m[piv_r * ncols + col], -1, p)
            for c in range(col, ncols):
                m[piv_r * ncols + c] = m[piv_r * ncols + c] * inv % p
            for r in range(nrows):
                if r == piv_r:
                    continue
                f = m[r * ncols + col]
                if f != 0:
                    for c in range(col, ncols):
                        m[r * ncols + c] = (m[r * ncols + c] - f * m[piv_r * ncols + c]) % p
                        if m[r * ncols + c] < 0:
                            m[r * ncols + c] += p
            pivots.append(col)
            piv_r += 1
            if piv_r == nrows:
                break
        out = []
        for r in range(piv_r):
            out.append([m[r * ncols + c] for c in range(ncols)])
        return out, pivots
    finally:
        free(m)


def rref_qq(rows):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return [], []
    cdef Py_ssize_t ncols = len(rows[0])
    cdef Py_ssize_t r, c, sel, piv_r, i
    # clear denominators row-wise; entries become Python ints
    m = []
    for r in range(nrows):
        lcm = 1
        for x in rows[r]:
            d = x.denominator
            if d != 1:
                lcm = lcm // gcd(lcm, d) * d
        m.append([int(x * lcm) for x in rows[r]])
    pivots = []
    piv_r = 0
    for col in range(ncols):
        sel = -1
        for r in range(piv_r, nrows):
            if m[r][col] != 0:
                sel = r
                break
        if sel < 0:
            continue
        if sel != piv_r:
            m[piv_r], m[sel] = m[sel], m[piv_r]
        row = m[piv_r]
        pv = row[col]
        for r in range(nrows):
            if r == piv_r:
                continue
            other = m[r]
            f = other[col]
            if f != 0:
                for c in range(ncols):
                    other[c] = other[c] * pv - f * row[c]
                g = 0
                for c in range(ncols):
                    if other[c]:
                        g = gcd(g, other[c])
                if g > 1:
                    for c in range(ncols):
                        other[c] //= g
        pivots.append(col)
        piv_r += 1
        if piv_r == nrows:
            break
    out = []
    for i in range(piv_r):
        pv = m[i][pivots[i]]
        out.append([Fraction(x, pv) for x in m[i]])
    return out, pivots
