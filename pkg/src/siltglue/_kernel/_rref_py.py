"""Pure-Python reduced row echelon kernels.

These are the fallback implementations of the two hot loops: Gauss-Jordan
elimination over Q (Fraction entries) and over F_p (int entries).  The
compiled kernel in ``_rref_cy`` produces bit-identical output; the reduced
row echelon form is canonical, so the two routes are interchangeable.
"""

from fractions import Fraction

IMPL = "python"


def rref_qq(rows):
    """RREF over Q.

    Takes a list of rows of Fractions; returns ``(reduced_rows, pivot_cols)``
    with zero rows dropped, pivots equal to 1 and pivot columns cleared.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    piv_r = 0
    for col in range(ncols):
        sel = None
        for r in range(piv_r, len(m)):
            if m[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        m[piv_r], m[sel] = m[sel], m[piv_r]
        row = m[piv_r]
        inv = 1 / row[col]
        for c in range(col, ncols):
            row[c] *= inv
        for r in range(len(m)):
            if r == piv_r:
                continue
            f = m[r][col]
            if f != 0:
                other = m[r]
                for c in range(col, ncols):
                    other[c] -= f * row[c]
        pivots.append(col)
        piv_r += 1
        if piv_r == len(m):
            break
    return m[:piv_r], pivots


def rref_fp(rows, p):
    """RREF over F_p; rows are lists of ints in [0, p)."""
    m = [[x % p for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    piv_r = 0
    for col in range(ncols):
        sel = None
        for r in range(piv_r, len(m)):
            if m[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        m[piv_r], m[sel] = m[sel], m[piv_r]
        row = m[piv_r]
        inv = pow(row[col], -1, p)
        for c in range(col, ncols):
            row[c] = row[c] * inv % p
        for r in range(len(m)):
            if r == piv_r:
                continue
            f = m[r][col]
            if f:
                other = m[r]
                for c in range(col, ncols):
                    other[c] = (other[c] - f * row[c]) % p
        pivots.append(col)
        piv_r += 1
        if piv_r == len(m):
            break
    return m[:piv_r], pivots


def _clear_denominators(row):
    lcm = 1
    for x in row:
        d = x.denominator
        if d != 1:
            from math import gcd

            lcm = lcm // gcd(lcm, d) * d
    return [int(x * lcm) for x in row]


def rref_qq_bareiss(rows):
    """Fraction-free variant: integer elimination, normalized at the end.

    Same contract and output as :func:`rref_qq`; used by the benchmark to
    compare against the compiled kernel on equal footing.
    """
    from math import gcd

    m = [_clear_denominators(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    piv_r = 0
    for col in range(ncols):
        sel = None
        for r in range(piv_r, len(m)):
            if m[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        m[piv_r], m[sel] = m[sel], m[piv_r]
        row = m[piv_r]
        for r in range(len(m)):
            if r == piv_r:
                continue
            f = m[r][col]
            if f:
                other = m[r]
                pv = row[col]
                for c in range(ncols):
                    other[c] = other[c] * pv - f * row[c]
                g = 0
                for c in range(ncols):
                    g = gcd(g, other[c])
                if g > 1:
                    for c in range(ncols):
                        other[c] //= g
        pivots.append(col)
        piv_r += 1
        if piv_r == len(m):
            break
    out = []
    for i, col in enumerate(pivots):
        pv = m[i][col]
        out.append([Fraction(x, pv) for x in m[i]])
    return out, pivots
