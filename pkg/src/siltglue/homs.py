"""Morphism spaces in the homotopy category.

Hom(X, Y[k]) is computed as degree-0 chain maps X -> Y[k] modulo null-
homotopic maps, by exact linear algebra over the base field: unknowns are the
path coefficients of the matrix entries, the chain condition cuts out a
kernel, and homotopies span a subspace of it.
"""

from .complexes import ChainMap, PathMatrix, shift
from .linalg import Matrix, kernel_basis, row_space_rref, in_row_space, solve


class _VarSpace:
    """Coordinates for degreewise path-matrix maps X^n -> Z^{n+shift}."""

    def __init__(self, X, Z, degree_shift=0):
        self.X = X
        self.Z = Z
        self.shift = degree_shift
        self.slots = []  # (degree n, row i, col j, path)
        self.index = {}
        alg = X.algebra
        degrees = sorted(set(X.components) & {n - degree_shift for n in Z.components})
        for n in degrees:
            src = X.component(n)
            tgt = Z.component(n + degree_shift)
            for i, w in enumerate(tgt):
                for j, v in enumerate(src):
                    for p in alg.hom_proj_basis(v, w):
                        self.index[(n, i, j, p)] = len(self.slots)
                        self.slots.append((n, i, j, p))

    @property
    def dim(self):
        return len(self.slots)

    def to_vector(self, comps):
        """Flatten degreewise matrices {n: PathMatrix} into coordinates."""
        fld = self.X.algebra.field
        vec = [fld.zero] * self.dim
        for n, m in comps.items():
            for i in range(m.rows):
                for j in range(m.cols):
                    for p, c in m.entries[i][j].terms.items():
                        vec[self.index[(n, i, j, p)]] = c
        return vec

    def from_vector(self, vec):
        """Inverse of to_vector; returns {n: PathMatrix}."""
        alg = self.X.algebra
        fld = alg.field
        acc = {}
        for idx, c in enumerate(vec):
            if fld.is_zero(c):
                continue
            n, i, j, p = self.slots[idx]
            acc.setdefault(n, {}).setdefault((i, j), {})[p] = c
        out = {}
        for n, cells in acc.items():
            src = self.X.component(n)
            tgt = self.Z.component(n + self.shift)
            ents = [
                [alg.element(cells.get((i, j), {})) for j in range(len(src))]
                for i in range(len(tgt))
            ]
            out[n] = PathMatrix(alg, tgt, src, ents)
        return out


class HomSpace:
    """Hom_{K^b}(X, Y[k]) with a canonical basis of representatives."""

    def __init__(self, X, Y, k=0):
        self.X = X
        self.Y = Y
        self.k = k
        self.Z = shift(Y, k)
        self._compute()

    def _compute(self):
        X, Z = self.X, self.Z
        fld = X.algebra.field
        self.fvars = _VarSpace(X, Z, 0)
        self.hvars = _VarSpace(X, Z, -1)

        # chain condition d_Z f - f d_X = 0, one equation per target coordinate
        eqs = []
        eq_space = _VarSpace(X, Z, 1)  # target of the defect map
        nvars = self.fvars.dim
        for col in range(nvars):
            n, i, j, p = self.fvars.slots[col]
            unit = X.algebra.path_element(p)
            m = PathMatrix.zero(X.algebra, Z.component(n), X.component(n))
            m.entries[i][j] = unit
            defect = self._defect({n: m})
            vec = eq_space.to_vector(defect)
            eqs.append(vec)
        if nvars == 0:
            self.cycle_basis = []
        else:
            # columns of the equation matrix are the f-variables
            mat = Matrix(fld, [[eqs[c][r] for c in range(nvars)] for r in range(eq_space.dim)], cols=nvars)
            self.cycle_basis = kernel_basis(mat)

        # boundaries: image of h |-> d_Z h + h d_X
        bvecs = []
        for col in range(self.hvars.dim):
            n, i, j, p = self.hvars.slots[col]
            unit = X.algebra.path_element(p)
            m = PathMatrix.zero(X.algebra, Z.component(n - 1), X.component(n))
            m.entries[i][j] = unit
            bvecs.append(self.fvars.to_vector(self._boundary({n: m})))
        self._brows, self._bpivs = row_space_rref(fld, bvecs)

        # canonical representatives: cycle-kernel vectors that grow the span
        rows = [list(r) for r in self._brows]
        pivs = list(self._bpivs)
        reps = []
        for v in self.cycle_basis:
            if not in_row_space(fld, rows, pivs, v):
                reps.append(v)
                rows, pivs = row_space_rref(fld, rows + [v])
        self._reps = reps
        self._full_rows, self._full_pivs = rows, pivs

    def _defect(self, comps):
        """d_Z o f - f o d_X for degreewise (not necessarily chain) maps."""
        X, Z = self.X, self.Z
        out = {}
        for n in set(X.components):
            fn = comps.get(n)
            fn1 = comps.get(n + 1)
            lhs = Z.differential(n).compose(fn) if fn is not None else None
            rhs = fn1.compose(X.differential(n)) if fn1 is not None else None
            if lhs is None and rhs is None:
                continue
            if lhs is None:
                lhs = PathMatrix.zero(X.algebra, rhs.row_vertices, rhs.col_vertices)
            if rhs is None:
                rhs = PathMatrix.zero(X.algebra, lhs.row_vertices, lhs.col_vertices)
            d = lhs - rhs
            if not d.is_zero():
                out[n] = d
        return out

    def _boundary(self, hcomps):
        """d_Z o h + h o d_X, a chain map for any degreewise h of degree -1."""
        X, Z = self.X, self.Z
        out = {}
        for n in set(X.components) | {m - 1 for m in hcomps}:
            hn = hcomps.get(n)
            hn1 = hcomps.get(n + 1)
            a = Z.differential(n - 1).compose(hn) if hn is not None else None
            b = hn1.compose(X.differential(n)) if hn1 is not None else None
            if a is None and b is None:
                continue
            if a is None:
                a = PathMatrix.zero(X.algebra, b.row_vertices, b.col_vertices)
            if b is None:
                b = PathMatrix.zero(X.algebra, a.row_vertices, a.col_vertices)
            s = a + b
            if not s.is_zero():
                out[n] = s
        return out

    @property
    def dim(self):
        return len(self._reps)

    def basis_maps(self):
        """Canonical representing chain maps X -> Y[k]."""
        out = []
        for v in self._reps:
            comps = self.fvars.from_vector(v)
            out.append(ChainMap(self.X, self.Z, comps))
        return out

    def is_null_homotopic(self, f):
        vec = self.fvars.to_vector({n: f.component(n) for n in f.components})
        fld = self.X.algebra.field
        return in_row_space(fld, self._brows, self._bpivs, vec)

    def coordinates(self, f):
        """Coefficients of [f] in the representative basis, exact.

        Raises ValueError if f is not a cycle of this Hom space.
        """
        fld = self.X.algebra.field
        vec = self.fvars.to_vector({n: f.component(n) for n in f.components})
        cols = self._reps + [list(r) for r in self._brows]
        if not cols:
            if all(fld.is_zero(x) for x in vec):
                return []
            raise ValueError("map outside the homotopy Hom space")
        mat = Matrix(fld, [[cols[c][r] for c in range(len(cols))] for r in range(self.fvars.dim)], cols=len(cols))
        x = solve(mat, vec)
        if x is None:
            raise ValueError("map outside the homotopy Hom space")
        return x[: len(self._reps)]

    def homotopy_witness(self, f):
        """For a null-homotopic f, a degree -1 map h with f = d h + h d."""
        fld = self.X.algebra.field
        vec = self.fvars.to_vector({n: f.component(n) for n in f.components})
        bcols = []
        for col in range(self.hvars.dim):
            n, i, j, p = self.hvars.slots[col]
            m = PathMatrix.zero(self.X.algebra, self.Z.component(n - 1), self.X.component(n))
            m.entries[i][j] = self.X.algebra.path_element(p)
            bcols.append(self.fvars.to_vector(self._boundary({n: m})))
        mat = Matrix(fld, [[bcols[c][r] for c in range(len(bcols))] for r in range(self.fvars.dim)], cols=len(bcols))
        x = solve(mat, vec)
        if x is None:
            return None
        acc = [fld.zero] * self.hvars.dim
        for c, coef in enumerate(x):
            acc[c] = coef
        return self.hvars.from_vector(acc)


def hom_basis(X, Y, k=0):
    return HomSpace(X, Y, k)


def hom_dim(X, Y, k=0):
    return HomSpace(X, Y, k).dim


def hom_window(X, Y):
    """Shifts k outside [lo_Y - hi_X, hi_Y - lo_X] give Hom(X, Y[k]) = 0."""
    if X.is_zero() or Y.is_zero():
        return (0, -1)
    return (Y.lo - X.hi, Y.hi - X.lo)


def hom_dim_table(X, Y, lo=None, hi=None):
    """Dimensions of Hom(X, Y[k]) over a shift window (default: full support)."""
    wlo, whi = hom_window(X, Y)
    if lo is None:
        lo = wlo
    if hi is None:
        hi = whi
    out = {}
    for k in range(lo, hi + 1):
        if k < wlo or k > whi:
            out[k] = 0
        else:
            out[k] = hom_dim(X, Y, k)
    return out


def s_sup(M, T_list):
    """sup{k >= 0 : Hom(M, T_i[k]) != 0 for some i}, or None if empty."""
    best = None
    for T in T_list:
        _, whi = hom_window(M, T)
        for k in range(max(0, best + 1 if best is not None else 0), whi + 1):
            if hom_dim(M, T, k) > 0:
                best = k
    return best


def is_nonpositive(complexes):
    """Check Hom(T_i, T_j[k]) = 0 for all k >= 1 (presilting condition).

    Returns (True, None) or (False, (i, j, k, witness chain map)).
    """
    for i, Ti in enumerate(complexes):
        for j, Tj in enumerate(complexes):
            _, whi = hom_window(Ti, Tj)
            for k in range(1, whi + 1):
                hs = HomSpace(Ti, Tj, k)
                if hs.dim > 0:
                    return False, (i, j, k, hs.basis_maps()[0])
    return True, None
