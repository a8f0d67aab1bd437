"""Exact dense linear algebra over Q and F_p.

Everything is deterministic: the pivot is the first nonzero entry in a
row-major scan, and the reduced row echelon form is canonical.  Matrices are
immutable after construction and all operations are pure.
"""

from .fields import QQ, PrimeField
from . import _kernel


class Matrix:
    """Dense matrix over a single field; entries are field scalars."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, data, cols=None):
        self.field = field
        data = [list(r) for r in data]
        if data:
            cols_seen = {len(r) for r in data}
            if len(cols_seen) != 1:
                raise ValueError("ragged rows")
            ncols = cols_seen.pop()
            if cols is not None and cols != ncols:
                raise ValueError("cols mismatch")
        else:
            ncols = cols or 0
        self.rows = len(data)
        self.cols = ncols
        self.data = data

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(field, [[field.zero] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r][c]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.data == other.data
            and self.cols == other.cols
        )

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"

    def transpose(self):
        return Matrix(self.field, [[self.data[r][c] for r in range(self.rows)] for c in range(self.cols)], cols=self.rows)

    def matmul(self, other):
        if self.field != other.field or self.cols != other.rows:
            raise ValueError("shape or field mismatch")
        fld = self.field
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = fld.zero
                for k in range(self.cols):
                    acc = fld.add(acc, fld.mul(self.data[i][k], other.data[k][j]))
                row.append(acc)
            out.append(row)
        return Matrix(fld, out, cols=other.cols)

    def mul_vector(self, vec):
        fld = self.field
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            acc = fld.zero
            for k in range(self.cols):
                acc = fld.add(acc, fld.mul(self.data[i][k], vec[k]))
            out.append(acc)
        return out

    def rref(self):
        """Canonical reduced row echelon form: (Matrix, pivot columns)."""
        red, piv = _rref_rows(self.field, self.data)
        return Matrix(self.field, red, cols=self.cols), piv


def _rref_rows(field, rows):
    if field == QQ:
        return _kernel.rref_qq(rows)
    if isinstance(field, PrimeField):
        return _kernel.rref_fp(rows, field.p)
    raise TypeError(f"unsupported field {field!r}")


def rank(mat):
    """Rank over the field by exact elimination."""
    _, piv = _rref_rows(mat.field, mat.data)
    return len(piv)


def solve(mat, b):
    """Some x with mat.x = b, or None when the system is inconsistent."""
    if len(b) != mat.rows:
        raise ValueError("dimension mismatch")
    fld = mat.field
    aug = [row + [b[i]] for i, row in enumerate(mat.data)]
    red, piv = _rref_rows(fld, aug)
    if mat.cols in piv:
        return None  # pivot in the augmented column: b outside the column space
    x = [fld.zero] * mat.cols
    for i, col in enumerate(piv):
        x[col] = red[i][mat.cols]
    return x


def kernel_basis(mat):
    """Basis of the null space, in canonical (free-column) order."""
    fld = mat.field
    red, piv = _rref_rows(fld, mat.data)
    piv_set = set(piv)
    free = [c for c in range(mat.cols) if c not in piv_set]
    basis = []
    for fc in free:
        v = [fld.zero] * mat.cols
        v[fc] = fld.one
        for i, col in enumerate(piv):
            v[col] = fld.neg(red[i][fc])
        basis.append(v)
    return basis


def row_space_rref(field, vectors):
    """RREF rows spanning the same space as `vectors` (zero rows dropped)."""
    if not vectors:
        return [], []
    return _rref_rows(field, vectors)


def in_row_space(field, rref_rows, pivots, vec):
    """Membership test against an RREF row space; pure reduction."""
    fld = field
    v = list(vec)
    for row, col in zip(rref_rows, pivots):
        f = v[col]
        if not fld.is_zero(f):
            for c in range(len(v)):
                v[c] = fld.sub(v[c], fld.mul(f, row[c]))
    return all(fld.is_zero(x) for x in v)
