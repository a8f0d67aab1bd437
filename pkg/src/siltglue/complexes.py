"""Bounded complexes of projectives over a path algebra.

Objects of the bounded homotopy category of projectives are modeled as
cohomological complexes whose degree-n component is an ordered list of
vertices (one per indecomposable projective summand P_v) and whose
differentials are matrices of path-algebra elements.

Sign conventions, fixed once: the differential has degree +1; the shift [1]
moves components one degree to the left and flips the sign of d; the cone of
f: X -> Y has components X^{n+1} (+) Y^n with differential
[[-d_X, 0], [f, d_Y]].
"""

from .quiver import AlgebraElement, QuiverError


class ComplexError(ValueError):
    pass


class PathMatrix:
    """Matrix of algebra elements mapping (+) P_{v_j} -> (+) P_{w_i}.

    Rows are indexed by the target summands w_i, columns by the source
    summands v_j; the (i, j) entry lies in e_{w_i} A e_{v_j}, i.e. its paths
    run from w_i to v_j, and it acts by left multiplication.
    """

    __slots__ = ("algebra", "row_vertices", "col_vertices", "entries")

    def __init__(self, algebra, row_vertices, col_vertices, entries):
        row_vertices = tuple(row_vertices)
        col_vertices = tuple(col_vertices)
        if len(entries) != len(row_vertices):
            raise ComplexError("row count mismatch")
        for row in entries:
            if len(row) != len(col_vertices):
                raise ComplexError("column count mismatch")
        for i, row in enumerate(entries):
            for j, x in enumerate(row):
                if not isinstance(x, AlgebraElement) or x.algebra != algebra:
                    raise ComplexError(f"entry ({i},{j}) is not an element of the algebra")
                if not x.is_zero():
                    if x.source != row_vertices[i] or x.target != col_vertices[j]:
                        raise ComplexError(
                            f"entry ({i},{j}) lies outside "
                            f"e_{row_vertices[i]} A e_{col_vertices[j]}"
                        )
        self.algebra = algebra
        self.row_vertices = row_vertices
        self.col_vertices = col_vertices
        self.entries = [list(row) for row in entries]

    @classmethod
    def zero(cls, algebra, row_vertices, col_vertices):
        z = algebra.zero_element()
        return cls(
            algebra,
            row_vertices,
            col_vertices,
            [[z for _ in col_vertices] for _ in row_vertices],
        )

    @classmethod
    def identity(cls, algebra, vertices):
        z = algebra.zero_element()
        ents = [
            [algebra.unit_at(v) if i == j else z for j, _ in enumerate(vertices)]
            for i, v in enumerate(vertices)
        ]
        return cls(algebra, vertices, vertices, ents)

    @property
    def rows(self):
        return len(self.row_vertices)

    @property
    def cols(self):
        return len(self.col_vertices)

    def is_zero(self):
        return all(x.is_zero() for row in self.entries for x in row)

    def compose(self, other):
        """self o other (apply `other` first): algebra-matrix product."""
        if other.algebra != self.algebra:
            raise ComplexError("different algebras")
        if self.col_vertices != other.row_vertices:
            raise ComplexError("composition shape mismatch")
        alg = self.algebra
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = alg.zero_element()
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PathMatrix(alg, self.row_vertices, other.col_vertices, out)

    def __add__(self, other):
        if self.row_vertices != other.row_vertices or self.col_vertices != other.col_vertices:
            raise ComplexError("shape mismatch")
        ents = [
            [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
            for i in range(self.rows)
        ]
        return PathMatrix(self.algebra, self.row_vertices, self.col_vertices, ents)

    def __neg__(self):
        ents = [[-x for x in row] for row in self.entries]
        return PathMatrix(self.algebra, self.row_vertices, self.col_vertices, ents)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        ents = [[x.scale(scalar) for x in row] for row in self.entries]
        return PathMatrix(self.algebra, self.row_vertices, self.col_vertices, ents)

    def submatrix(self, row_idx, col_idx):
        ents = [[self.entries[i][j] for j in col_idx] for i in row_idx]
        return PathMatrix(
            self.algebra,
            [self.row_vertices[i] for i in row_idx],
            [self.col_vertices[j] for j in col_idx],
            ents,
        )

    @classmethod
    def block_diag(cls, algebra, a, b):
        rv = a.row_vertices + b.row_vertices
        cv = a.col_vertices + b.col_vertices
        z = algebra.zero_element()
        ents = []
        for i in range(a.rows):
            ents.append(list(a.entries[i]) + [z] * b.cols)
        for i in range(b.rows):
            ents.append([z] * a.cols + list(b.entries[i]))
        return cls(algebra, rv, cv, ents)

    @classmethod
    def vstack(cls, a, b):
        """Stack maps with the same source: rows of a above rows of b."""
        if a.col_vertices != b.col_vertices:
            raise ComplexError("vstack column mismatch")
        return cls(
            a.algebra,
            a.row_vertices + b.row_vertices,
            a.col_vertices,
            a.entries + b.entries,
        )

    @classmethod
    def hstack(cls, a, b):
        """Join maps with the same target: columns of a before columns of b."""
        if a.row_vertices != b.row_vertices:
            raise ComplexError("hstack row mismatch")
        ents = [list(ra) + list(rb) for ra, rb in zip(a.entries, b.entries)]
        return cls(a.algebra, a.row_vertices, a.col_vertices + b.col_vertices, ents)

    def scalar_part(self):
        """Field matrix of trivial-path coefficients (zero off same-vertex slots)."""
        fld = self.algebra.field
        out = []
        for i in range(self.rows):
            row = []
            for j in range(self.cols):
                if self.row_vertices[i] == self.col_vertices[j]:
                    row.append(self.entries[i][j].trivial_coefficient())
                else:
                    row.append(fld.zero)
            out.append(row)
        return out

    def radical_part(self):
        """The matrix with all trivial-path coefficients removed."""
        alg = self.algebra
        ents = []
        for i in range(self.rows):
            row = []
            for j in range(self.cols):
                x = self.entries[i][j]
                row.append(alg.element({p: c for p, c in x.terms.items() if not p.is_trivial()}))
            ents.append(row)
        return PathMatrix(alg, self.row_vertices, self.col_vertices, ents)

    def invert(self):
        """Inverse of a matrix whose scalar part is invertible.

        Works because the radical part is nilpotent: with V = S + R, the
        inverse is a finite Neumann series of -S^{-1} R applied to S^{-1}.
        """
        from .linalg import Matrix, solve

        if self.rows != self.cols:
            raise ComplexError("not square")
        alg = self.algebra
        fld = alg.field
        s = Matrix(fld, self.scalar_part(), cols=self.cols)
        n = self.rows
        # invert the scalar part column by column
        cols = []
        for j in range(n):
            e = [fld.one if i == j else fld.zero for i in range(n)]
            x = solve(s, e)
            if x is None:
                raise ComplexError("scalar part is singular")
            cols.append(x)
        z = alg.zero_element()
        s_inv = PathMatrix(
            alg,
            self.col_vertices,
            self.row_vertices,
            [
                [
                    alg.unit_at(self.col_vertices[i], cols[j][i])
                    if self.col_vertices[i] == self.row_vertices[j] and not fld.is_zero(cols[j][i])
                    else z
                    for j in range(n)
                ]
                for i in range(n)
            ],
        )
        r = self.radical_part()
        term = s_inv.compose(r)  # S^-1 R, nilpotent
        # (S + R)^-1 = (1 + S^-1 R)^-1 S^-1, a finite alternating series
        acc = PathMatrix.identity(alg, self.col_vertices)
        power = PathMatrix.identity(alg, self.col_vertices)
        sign = -1
        while True:
            power = power.compose(term)
            if power.is_zero():
                break
            acc = acc + (power if sign > 0 else -power)
            sign = -sign
        return acc.compose(s_inv)

    def __eq__(self, other):
        return (
            isinstance(other, PathMatrix)
            and self.algebra == other.algebra
            and self.row_vertices == other.row_vertices
            and self.col_vertices == other.col_vertices
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"PathMatrix({self.rows}x{self.cols})"


class ProjComplex:
    """Bounded complex of projectives with d of degree +1 and d^2 = 0."""

    __slots__ = ("algebra", "components", "differentials")

    def __init__(self, algebra, components, differentials, check=True):
        comps = {int(n): tuple(vs) for n, vs in components.items() if len(tuple(vs)) > 0}
        diffs = {}
        for n, d in differentials.items():
            n = int(n)
            if d is None or (d.rows == 0 and d.cols == 0):
                continue
            diffs[n] = d
        for n, d in list(diffs.items()):
            src = comps.get(n, ())
            tgt = comps.get(n + 1, ())
            if d.col_vertices != src or d.row_vertices != tgt:
                raise ComplexError(f"differential at degree {n} has wrong shape")
            if not tgt or not src:
                del diffs[n]
        if check:
            for v in {v for vs in comps.values() for v in vs}:
                if v not in algebra.quiver.vertex_index:
                    raise QuiverError(f"unknown vertex {v!r}")
            for n in comps:
                if n + 1 in comps and n not in diffs:
                    diffs[n] = PathMatrix.zero(algebra, comps[n + 1], comps[n])
            for n, d in diffs.items():
                if n + 1 in diffs:
                    dd = diffs[n + 1].compose(d)
                    if not dd.is_zero():
                        bad = next(
                            (i, j)
                            for i in range(dd.rows)
                            for j in range(dd.cols)
                            if not dd.entries[i][j].is_zero()
                        )
                        raise ComplexError(
                            f"d^2 != 0 at degree {n}, entry {bad}: {dd.entries[bad[0]][bad[1]]!r}"
                        )
        else:
            for n in comps:
                if n + 1 in comps and n not in diffs:
                    diffs[n] = PathMatrix.zero(algebra, comps[n + 1], comps[n])
        self.algebra = algebra
        self.components = comps
        self.differentials = diffs

    @classmethod
    def zero(cls, algebra):
        return cls(algebra, {}, {})

    @classmethod
    def stalk(cls, algebra, vertex, degree=0):
        return cls(algebra, {degree: (vertex,)}, {})

    @classmethod
    def free(cls, algebra, vertices, degree=0):
        return cls(algebra, {degree: tuple(vertices)}, {})

    def is_zero(self):
        return not self.components

    @property
    def lo(self):
        return min(self.components) if self.components else 0

    @property
    def hi(self):
        return max(self.components) if self.components else 0

    def component(self, n):
        return self.components.get(n, ())

    def differential(self, n):
        if n in self.differentials:
            return self.differentials[n]
        return PathMatrix.zero(self.algebra, self.component(n + 1), self.component(n))

    def summand_count(self):
        return sum(len(vs) for vs in self.components.values())

    def graded_multiset(self):
        """Per-degree vertex multisets; invariant of the isomorphism class once minimal."""
        return {n: tuple(sorted(vs)) for n, vs in self.components.items()}

    def __eq__(self, other):
        return (
            isinstance(other, ProjComplex)
            and self.algebra == other.algebra
            and self.components == other.components
            and {n: d for n, d in self.differentials.items() if not d.is_zero()}
            == {n: d for n, d in other.differentials.items() if not d.is_zero()}
        )

    def describe(self):
        if self.is_zero():
            return "0"
        bits = []
        for n in sorted(self.components):
            bits.append(f"{n}:[" + ",".join(f"P_{v}" for v in self.components[n]) + "]")
        return " ".join(bits)

    def __repr__(self):
        return f"ProjComplex({self.describe()})"


class ChainMap:
    """Degree-0 chain map between complexes over one algebra."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source, target, components, check=True):
        if source.algebra != target.algebra:
            raise ComplexError("different algebras")
        comps = {}
        for n, m in components.items():
            n = int(n)
            if m.rows == 0 or m.cols == 0:
                continue
            if m.col_vertices != source.component(n) or m.row_vertices != target.component(n):
                raise ComplexError(f"chain map component at degree {n} has wrong shape")
            comps[n] = m
        self.source = source
        self.target = target
        self.components = comps
        if check:
            self.check_chain_condition()

    def check_chain_condition(self):
        X, Y = self.source, self.target
        for n in range(min(X.lo, Y.lo) - 1, max(X.hi, Y.hi) + 1):
            lhs = Y.differential(n).compose(self.component(n))
            rhs = self.component(n + 1).compose(X.differential(n))
            if not (lhs - rhs).is_zero():
                raise ComplexError(f"not a chain map at degree {n}")

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, {}, check=False)

    @classmethod
    def identity(cls, X):
        comps = {n: PathMatrix.identity(X.algebra, vs) for n, vs in X.components.items()}
        return cls(X, X, comps, check=False)

    def component(self, n):
        if n in self.components:
            return self.components[n]
        return PathMatrix.zero(self.source.algebra, self.target.component(n), self.source.component(n))

    def compose(self, other):
        """self o other: apply `other` first."""
        if other.target is not self.source and other.target != self.source:
            raise ComplexError("composition endpoint mismatch")
        comps = {}
        for n in set(self.components) | set(other.components):
            comps[n] = self.component(n).compose(other.component(n))
        return ChainMap(other.source, self.target, comps, check=False)

    def __add__(self, other):
        comps = {}
        for n in set(self.components) | set(other.components):
            comps[n] = self.component(n) + other.component(n)
        return ChainMap(self.source, self.target, comps, check=False)

    def __neg__(self):
        return ChainMap(self.source, self.target, {n: -m for n, m in self.components.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        return ChainMap(
            self.source,
            self.target,
            {n: m.scale(scalar) for n, m in self.components.items()},
            check=False,
        )

    def is_zero(self):
        return all(m.is_zero() for m in self.components.values())

    def __repr__(self):
        return f"ChainMap({self.source.describe()} -> {self.target.describe()})"


class Triangle:
    """Triangle X -> Y -> Z -> X[1], stored via u: X->Y and v: Y->Z."""

    __slots__ = ("X", "Y", "Z", "u", "v")

    def __init__(self, X, Y, Z, u, v):
        self.X, self.Y, self.Z = X, Y, Z
        self.u, self.v = u, v

    def __repr__(self):
        return f"Triangle({self.X.describe()} -> {self.Y.describe()} -> {self.Z.describe()})"


def make_complex(algebra, components, differentials):
    """Validated constructor; reports the first failing degree on d^2 != 0."""
    return ProjComplex(algebra, components, differentials)


def shift(X, k):
    """Suspension: (X[k])^n = X^{n+k}, differential scaled by (-1)^k."""
    if k == 0:
        return X
    comps = {n - k: vs for n, vs in X.components.items()}
    sign = 1 if k % 2 == 0 else -1
    diffs = {}
    for n, d in X.differentials.items():
        diffs[n - k] = d if sign > 0 else -d
    return ProjComplex(X.algebra, comps, diffs, check=False)


def shift_map(f, k):
    """The shifted chain map f[k]: X[k] -> Y[k]."""
    Xk, Yk = shift(f.source, k), shift(f.target, k)
    return ChainMap(Xk, Yk, {n - k: m for n, m in f.components.items()}, check=False)


def direct_sum(X, Y):
    """Degreewise concatenation with block-diagonal differentials."""
    if X.algebra != Y.algebra:
        raise ComplexError("different algebras")
    alg = X.algebra
    comps = {}
    for n in set(X.components) | set(Y.components):
        comps[n] = X.component(n) + Y.component(n)
    diffs = {}
    for n in comps:
        if n + 1 in comps:
            diffs[n] = PathMatrix.block_diag(alg, X.differential(n), Y.differential(n))
    return ProjComplex(alg, comps, diffs, check=False)


def direct_sum_many(algebra, complexes):
    out = ProjComplex.zero(algebra)
    for X in complexes:
        out = direct_sum(out, X)
    return out


def summand_inclusion(X, Y):
    """Inclusion X -> direct_sum(X, Y)."""
    S = direct_sum(X, Y)
    alg = X.algebra
    comps = {}
    for n, vs in X.components.items():
        idm = PathMatrix.identity(alg, vs)
        zero = PathMatrix.zero(alg, Y.component(n), vs)
        comps[n] = PathMatrix.vstack(idm, zero)
    return ChainMap(X, S, comps, check=False)


def cone(f):
    """Mapping cone: triangle X -> Y -> C(f)."""
    X, Y = f.source, f.target
    alg = X.algebra
    comps = {}
    for n in range(min(X.lo - 1, Y.lo), max(X.hi - 1, Y.hi) + 1):
        vs = X.component(n + 1) + Y.component(n)
        if vs:
            comps[n] = vs
    diffs = {}
    for n in comps:
        if n + 1 not in comps:
            continue
        top = PathMatrix.hstack(
            -X.differential(n + 1),
            PathMatrix.zero(alg, X.component(n + 2), Y.component(n)),
        )
        bot = PathMatrix.hstack(f.component(n + 1), Y.differential(n))
        diffs[n] = PathMatrix.vstack(top, bot)
    C = ProjComplex(alg, comps, diffs, check=False)
    incl = {}
    for n, vs in Y.components.items():
        zero = PathMatrix.zero(alg, X.component(n + 1), vs)
        incl[n] = PathMatrix.vstack(zero, PathMatrix.identity(alg, vs))
    v = ChainMap(Y, C, incl, check=False)
    return Triangle(X, Y, C, f, v)


def cone_projection(f):
    """The degreewise projection C(f) -> X[1] closing the triangle."""
    tri = cone(f)
    X = f.source
    X1 = shift(X, 1)
    alg = X.algebra
    comps = {}
    for n in tri.Z.components:
        proj = PathMatrix.hstack(
            PathMatrix.identity(alg, X.component(n + 1)),
            PathMatrix.zero(alg, X.component(n + 1), f.target.component(n)),
        )
        comps[n] = proj
    return ChainMap(tri.Z, X1, comps, check=False)


def cocone(f):
    """Cocone: triangle CC(f) -> X -> Y with CC(f) = C(f)[-1]."""
    X, Y = f.source, f.target
    tri = cone(f)
    CC = shift(tri.Z, -1)
    alg = X.algebra
    proj = {}
    for n, vs in CC.components.items():
        # CC^n = X^n (+) Y^{n-1}; project onto X^n
        p = PathMatrix.hstack(
            PathMatrix.identity(alg, X.component(n)),
            PathMatrix.zero(alg, X.component(n), Y.component(n - 1)),
        )
        proj[n] = p
    u = ChainMap(CC, X, proj, check=False)
    return Triangle(CC, X, Y, u, f)


class MinimizeResult:
    """Minimal model with the homotopy equivalence to and from the original."""

    __slots__ = ("complex", "to_min", "from_min")

    def __init__(self, complex, to_min, from_min):
        self.complex = complex
        self.to_min = to_min
        self.from_min = from_min


def minimize(X):
    """Strip unit differential entries by exact Gaussian cancellation.

    Returns a MinimizeResult whose complex has all differential entries in
    the radical (no trivial-path coefficients) and mutually inverse-up-to-
    homotopy chain maps in both directions.
    """
    alg = X.algebra
    fld = alg.field
    cur = X
    p_total = ChainMap.identity(X)
    i_total = ChainMap.identity(X)
    while True:
        found = None
        for n in sorted(cur.differentials):
            d = cur.differentials[n]
            for i in range(d.rows):
                for j in range(d.cols):
                    c = d.entries[i][j].trivial_coefficient()
                    if not fld.is_zero(c):
                        found = (n, i, j, c)
                        break
                if found:
                    break
            if found:
                break
        if not found:
            return MinimizeResult(cur, p_total, i_total)
        n, i, j, c = found
        cur, step_p, step_i = _cancel(cur, n, i, j, c)
        p_total = step_p.compose(p_total)
        i_total = i_total.compose(step_i)


def _cancel(X, n, i, j, c):
    """Cancel the unit entry d^n[i][j] = c*e_v + radical; one Gauss step."""
    alg = X.algebra
    fld = alg.field
    d = X.differential(n)
    v = d.col_vertices[j]
    rows_keep = [r for r in range(d.rows) if r != i]
    cols_keep = [s for s in range(d.cols) if s != j]
    phi = d.entries[i][j]
    # phi = c*e_v + radical; invert it inside e_v A e_v (radical is nilpotent,
    # and for an acyclic quiver e_v A e_v = K e_v, so phi = c*e_v exactly)
    phi_inv = alg.unit_at(v, fld.inv(c))
    beta = [d.entries[i][s] for s in cols_keep]  # row i without col j
    gamma = [d.entries[r][j] for r in rows_keep]  # col j without row i
    delta = d.submatrix(rows_keep, cols_keep)
    corr = [
        [gamma[a] * (phi_inv * beta[b]) for b in range(len(cols_keep))]
        for a in range(len(rows_keep))
    ]
    new_d = delta - PathMatrix(alg, delta.row_vertices, delta.col_vertices, corr)

    comps = dict(X.components)
    src_vs = tuple(x for k, x in enumerate(comps[n]) if k != j)
    tgt_vs = tuple(x for k, x in enumerate(comps[n + 1]) if k != i)
    if src_vs:
        comps[n] = src_vs
    else:
        del comps[n]
    if tgt_vs:
        comps[n + 1] = tgt_vs
    else:
        del comps[n + 1]

    diffs = {}
    for m, dm in X.differentials.items():
        if m == n:
            continue
        if m == n - 1:
            diffs[m] = dm.submatrix([r for r in range(dm.rows) if r != j], range(dm.cols))
        elif m == n + 1:
            diffs[m] = dm.submatrix(range(dm.rows), [s for s in range(dm.cols) if s != i])
        else:
            diffs[m] = dm
    if src_vs and tgt_vs:
        diffs[n] = new_d
    Y = ProjComplex(alg, comps, {m: dmat for m, dmat in diffs.items()}, check=False)

    # projection p: X -> Y and inclusion i: Y -> X, chain maps with p o i = id
    p_comps = {}
    i_comps = {}
    for m, vs in X.components.items():
        if m == n:
            idm = PathMatrix.identity(alg, src_vs) if src_vs else PathMatrix.zero(alg, (), ())
            # p at degree n: drop coordinate j
            sel = [r for r in range(len(vs)) if r != j]
            pm = PathMatrix(
                alg,
                src_vs,
                vs,
                [
                    [alg.unit_at(vs[col]) if col == sel[r] else alg.zero_element() for col in range(len(vs))]
                    for r in range(len(sel))
                ],
            )
            p_comps[m] = pm
            # i at degree n: identity on kept coordinates, row j = -phi^{-1} beta
            ents = []
            for row in range(len(vs)):
                if row == j:
                    ents.append([-(phi_inv * b) for b in beta])
                else:
                    r_new = sel.index(row)
                    ents.append(
                        [alg.unit_at(vs[row]) if cidx == r_new else alg.zero_element() for cidx in range(len(sel))]
                    )
            i_comps[m] = PathMatrix(alg, vs, src_vs, ents)
        elif m == n + 1:
            sel = [r for r in range(len(vs)) if r != i]
            # p at degree n+1: drop coordinate i with correction -gamma phi^{-1}
            ents = []
            for r_new, row in enumerate(sel):
                ent_row = []
                for col in range(len(vs)):
                    if col == row:
                        ent_row.append(alg.unit_at(vs[col]))
                    elif col == i:
                        ent_row.append(-(gamma[r_new] * phi_inv))
                    else:
                        ent_row.append(alg.zero_element())
                ents.append(ent_row)
            p_comps[m] = PathMatrix(alg, tgt_vs, vs, ents)
            # i at degree n+1: inclusion with zero row at i
            ents = []
            for row in range(len(vs)):
                if row == i:
                    ents.append([alg.zero_element()] * len(sel))
                else:
                    r_new = sel.index(row)
                    ents.append(
                        [alg.unit_at(vs[row]) if cidx == r_new else alg.zero_element() for cidx in range(len(sel))]
                    )
            i_comps[m] = PathMatrix(alg, vs, tgt_vs, ents)
        else:
            p_comps[m] = PathMatrix.identity(alg, vs)
            i_comps[m] = PathMatrix.identity(alg, vs)
    p = ChainMap(X, Y, p_comps, check=False)
    imap = ChainMap(Y, X, i_comps, check=False)
    return Y, p, imap


def transform(X, change):
    """Conjugate a complex by degreewise invertible maps V_n.

    `change` maps degree -> invertible PathMatrix on X^n.  The result has the
    same components and differentials V_{n+1} d V_n^{-1}.
    """
    alg = X.algebra
    inv = {n: m.invert() for n, m in change.items()}

    def V(n):
        return change.get(n) or PathMatrix.identity(alg, X.component(n))

    def Vinv(n):
        return inv.get(n) or PathMatrix.identity(alg, X.component(n))

    diffs = {}
    for n, d in X.differentials.items():
        diffs[n] = V(n + 1).compose(d).compose(Vinv(n))
    return ProjComplex(alg, dict(X.components), diffs, check=False)


def subcomplex_on_indices(X, index_map):
    """Subquotient on chosen summand indices when d is block-diagonal for them.

    `index_map` maps degree -> sorted list of summand indices to keep.  The
    caller guarantees that the differential does not mix kept and dropped
    indices; this is validated by the d^2/shape checks on construction.
    """
    alg = X.algebra
    comps = {}
    for n, idx in index_map.items():
        vs = tuple(X.component(n)[i] for i in idx)
        if vs:
            comps[n] = vs
    diffs = {}
    for n in comps:
        if n + 1 in comps:
            d = X.differential(n)
            diffs[n] = d.submatrix(index_map[n + 1], index_map[n])
    return ProjComplex(alg, comps, diffs)


def opposite_complex(X, op_algebra):
    """Transport to the opposite algebra: reverse arrows, negate degrees.

    A complex over A maps contravariantly to one over A^op via transposing
    every differential and reversing each path.  Degrees are negated so the
    result is again a cohomological complex; Hom spaces match up as
    Hom_A(X, Y) = Hom_{A^op}(op(Y), op(X)).
    """
    from .quiver import Path

    alg = X.algebra
    comps = {-n: tuple(X.component(n)) for n in X.components}

    def op_elem(x):
        terms = {}
        for p, cval in x.terms.items():
            terms[Path(p.target, p.source, tuple(reversed(p.arrows)))] = cval
        return op_algebra.element(terms)

    diffs = {}
    for n, d in X.differentials.items():
        # d^n: X^n -> X^{n+1} becomes op(X)^{-n-1} -> op(X)^{-n}
        ents = [[op_elem(d.entries[i][j]) for i in range(d.rows)] for j in range(d.cols)]
        diffs[-n - 1] = PathMatrix(op_algebra, d.col_vertices, d.row_vertices, ents)
    return ProjComplex(op_algebra, comps, diffs)


def opposite_map(f, op_source, op_target, op_algebra):
    """Transport a chain map to the opposite algebra (direction reverses)."""
    from .quiver import Path

    def op_elem(x):
        terms = {}
        for p, cval in x.terms.items():
            terms[Path(p.target, p.source, tuple(reversed(p.arrows)))] = cval
        return op_algebra.element(terms)

    comps = {}
    for n, m in f.components.items():
        ents = [[op_elem(m.entries[i][j]) for i in range(m.rows)] for j in range(m.cols)]
        comps[-n] = PathMatrix(op_algebra, m.col_vertices, m.row_vertices, ents)
    return ChainMap(op_target, op_source, comps, check=False)
