"""Finite acyclic quivers and their path algebras.

Conventions (fixed once, everywhere):

* paths compose left-to-right: for arrows a: 1->2 and b: 2->3 the product
  ``a*b`` is the path ``ab`` from 1 to 3;
* right modules, P_v := e_v A; Hom_A(P_v, P_w) is e_w A e_v acting by left
  multiplication, with basis the paths from w to v.
"""

from dataclasses import dataclass

from .fields import QQ


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """Finite quiver with unique vertex labels and arrow names; must be acyclic."""

    def __init__(self, vertices, arrows):
        vertices = [str(v) for v in vertices]
        if len(set(vertices)) != len(vertices):
            raise QuiverError("duplicate vertex labels")
        arrs = []
        for a in arrows:
            if isinstance(a, Arrow):
                arrs.append(Arrow(a.name, str(a.source), str(a.target)))
            else:
                name, src, tgt = a
                arrs.append(Arrow(str(name), str(src), str(tgt)))
        names = [a.name for a in arrs]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        vset = set(vertices)
        for a in arrs:
            if a.source not in vset or a.target not in vset:
                raise QuiverError(f"arrow {a.name} uses unknown vertex")
        self.vertices = vertices
        self.arrows = arrs
        self.arrow_by_name = {a.name: a for a in arrs}
        self.vertex_index = {v: i for i, v in enumerate(vertices)}
        self.arrow_index = {a.name: i for i, a in enumerate(arrs)}
        self._check_acyclic()

    def _check_acyclic(self):
        out = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.source].append(a)
        state = {v: 0 for v in self.vertices}  # 0 new, 1 on stack, 2 done
        for start in self.vertices:
            if state[start]:
                continue
            stack = [(start, iter(out[start]), [])]
            state[start] = 1
            while stack:
                v, it, trail = stack[-1]
                adv = next(it, None)
                if adv is None:
                    state[v] = 2
                    stack.pop()
                    continue
                w = adv.target
                if state[w] == 1:
                    cycle = [adv.name]
                    for u, _, tr in reversed(stack):
                        if u == w:
                            break
                        if tr:
                            cycle.append(tr[-1])
                    raise QuiverError(
                        "cycle detected through arrow(s) " + ", ".join(reversed(cycle))
                    )
                if state[w] == 0:
                    state[w] = 1
                    stack.append((w, iter(out[w]), [adv.name]))

    def arrows_from(self, v):
        return [a for a in self.arrows if a.source == v]

    def full_subquiver(self, vertex_subset):
        keep = set(vertex_subset)
        verts = [v for v in self.vertices if v in keep]
        arrs = [a for a in self.arrows if a.source in keep and a.target in keep]
        return Quiver(verts, arrs)

    def opposite(self):
        return Quiver(self.vertices, [(a.name, a.target, a.source) for a in self.arrows])

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __repr__(self):
        return f"Quiver({self.vertices}, {[a.name for a in self.arrows]})"


@dataclass(frozen=True)
class Path:
    """A path in a quiver; empty arrow tuple means the trivial path e_v."""

    source: str
    target: str
    arrows: tuple  # tuple of arrow names, composing left to right

    @property
    def length(self):
        return len(self.arrows)

    def is_trivial(self):
        return not self.arrows

    def label(self):
        return "*".join(self.arrows) if self.arrows else f"e_{self.source}"

    def __repr__(self):
        return f"Path({self.label()}: {self.source}->{self.target})"


class PathAlgebra:
    """Path algebra of a finite acyclic quiver over an exact field.

    The path basis is enumerated once, sorted by length then lexicographically
    by arrow indices; this order fixes all downstream determinism.
    """

    def __init__(self, quiver, field=QQ):
        self.quiver = quiver
        self.field = field
        self.basis = self._enumerate_paths()
        self.basis_index = {p: i for i, p in enumerate(self.basis)}
        # paths from w to v, i.e. a basis of e_w A e_v = Hom(P_v, P_w)
        self._between = {}
        for p in self.basis:
            self._between.setdefault((p.source, p.target), []).append(p)

    def _enumerate_paths(self):
        q = self.quiver
        paths = [Path(v, v, ()) for v in q.vertices]
        frontier = list(paths)
        while frontier:
            new = []
            for p in frontier:
                for a in q.arrows:
                    if a.source == p.target:
                        new.append(Path(p.source, a.target, p.arrows + (a.name,)))
            paths.extend(new)
            frontier = new
        key = lambda p: (p.length, tuple(q.arrow_index[n] for n in p.arrows), q.vertex_index[p.source])
        return sorted(paths, key=key)

    @property
    def dimension(self):
        return len(self.basis)

    def trivial_path(self, v):
        if v not in self.quiver.vertex_index:
            raise QuiverError(f"unknown vertex {v!r}")
        return Path(v, v, ())

    def path_of_arrows(self, arrow_names):
        """Compose a nonempty arrow-name sequence into a Path."""
        arrs = [self.quiver.arrow_by_name[n] for n in arrow_names]
        for x, y in zip(arrs, arrs[1:]):
            if x.target != y.source:
                raise QuiverError(f"arrows {x.name}, {y.name} do not compose")
        return Path(arrs[0].source, arrs[-1].target, tuple(a.name for a in arrs))

    def compose_paths(self, p, q):
        """p*q = first p then q; None when not composable."""
        if p.target != q.source:
            return None
        return Path(p.source, q.target, p.arrows + q.arrows)

    def paths_between(self, src, tgt):
        """All paths src -> tgt, in basis order."""
        return list(self._between.get((src, tgt), []))

    def element(self, terms):
        return AlgebraElement(self, dict(terms))

    def zero_element(self):
        return AlgebraElement(self, {})

    def unit_at(self, v, coeff=None):
        c = self.field.one if coeff is None else coeff
        return AlgebraElement(self, {self.trivial_path(v): c})

    def path_element(self, p, coeff=None):
        c = self.field.one if coeff is None else coeff
        return AlgebraElement(self, {p: c})

    def hom_proj_basis(self, v, w):
        """Basis of Hom_A(P_v, P_w) = e_w A e_v: the paths from w to v."""
        for x in (v, w):
            if x not in self.quiver.vertex_index:
                raise QuiverError(f"unknown vertex {x!r}")
        return self.paths_between(w, v)

    def __eq__(self, other):
        return (
            isinstance(other, PathAlgebra)
            and self.quiver == other.quiver
            and self.field == other.field
        )

    def __repr__(self):
        return f"PathAlgebra({self.quiver!r}, {self.field!r})"


class AlgebraElement:
    """Scalar-linear combination of paths sharing one (source, target) pair.

    Zero coefficients are never stored; the zero element has no terms and no
    source/target constraint.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        fld = algebra.field
        clean = {}
        st = None
        for p, c in terms.items():
            if fld.is_zero(c):
                continue
            if p not in algebra.basis_index:
                raise QuiverError(f"{p!r} is not a basis path of the algebra")
            if st is None:
                st = (p.source, p.target)
            elif (p.source, p.target) != st:
                raise QuiverError("terms do not share source and target")
            clean[p] = c
        self.algebra = algebra
        self.terms = clean

    def is_zero(self):
        return not self.terms

    @property
    def source(self):
        return next(iter(self.terms)).source if self.terms else None

    @property
    def target(self):
        return next(iter(self.terms)).target if self.terms else None

    def trivial_coefficient(self):
        """Coefficient of the trivial path, or the field zero."""
        for p, c in self.terms.items():
            if p.is_trivial():
                return c
        return self.algebra.field.zero

    def __add__(self, other):
        if other.algebra != self.algebra:
            raise QuiverError("different algebras")
        fld = self.algebra.field
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = fld.add(out.get(p, fld.zero), c)
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        fld = self.algebra.field
        return AlgebraElement(self.algebra, {p: fld.neg(c) for p, c in self.terms.items()})

    def scale(self, scalar):
        fld = self.algebra.field
        return AlgebraElement(self.algebra, {p: fld.mul(scalar, c) for p, c in self.terms.items()})

    def __mul__(self, other):
        """Bilinear extension of path concatenation (self first, then other)."""
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.algebra != self.algebra:
            raise QuiverError("different algebras")
        alg = self.algebra
        fld = alg.field
        out = {}
        for p, cp in self.terms.items():
            for q, cq in other.terms.items():
                pq = alg.compose_paths(p, q)
                if pq is not None:
                    out[pq] = fld.add(out.get(pq, fld.zero), fld.mul(cp, cq))
        return AlgebraElement(alg, out)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and other.algebra == self.algebra
            and other.terms == self.terms
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        fld = self.algebra.field
        bits = []
        for p in sorted(self.terms, key=lambda p: self.algebra.basis_index[p]):
            bits.append(f"{fld.to_str(self.terms[p])}*{p.label()}")
        return " + ".join(bits)


def build_algebra(quiver, field=QQ):
    """Construct the path algebra; raises QuiverError on a cyclic quiver."""
    return PathAlgebra(quiver, field)
