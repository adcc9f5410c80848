"""Finitely supported chain complexes over an exact field, and their maps.

Homological (lower) grading: differentials have degree -1, so d_n maps
degree n to degree n-1.  Finite support means finitely many nonzero degrees;
"unbounded" complexes may be supported anywhere in Z.  A complex flagged
non-negative must vanish in negative degrees.
"""

from __future__ import annotations

from .fields import Field
from .matrices import Matrix, block_diag, column_space_basis, hstack, kernel_basis, rank, solve, vstack


class GradedSpace:
    """A finite map degree -> dimension; absent degrees have dimension zero."""

    __slots__ = ("dims",)

    def __init__(self, dims):
        clean = {}
        for n, d in dims.items():
            if d < 0:
                raise ValueError(f"negative dimension {d} in degree {n}")
            if d > 0:
                clean[int(n)] = int(d)
        self.dims = clean

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def degrees(self):
        return sorted(self.dims)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.dims == other.dims

    def __hash__(self):
        return hash(frozenset(self.dims.items()))

    def __repr__(self):
        return f"GradedSpace({self.dims})"


class ChainComplex:
    """A chain complex: graded space plus degree -1 differentials with d.d = 0."""

    __slots__ = ("field", "space", "diffs", "non_negative")

    def __init__(self, field: Field, dims, differentials=None, non_negative: bool = False):
        self.field = field
        self.space = dims if isinstance(dims, GradedSpace) else GradedSpace(dims)
        if non_negative and any(n < 0 for n in self.space.dims):
            raise ValueError("non-negatively graded complex has a negative degree")
        self.non_negative = non_negative
        diffs = {}
        for n, mat in (differentials or {}).items():
            n = int(n)
            if mat.field != field:
                raise ValueError(f"differential d_{n} over wrong field")
            if mat.shape != (self.space.dim(n - 1), self.space.dim(n)):
                raise ValueError(
                    f"d_{n} has shape {mat.shape}, expected "
                    f"({self.space.dim(n - 1)}, {self.space.dim(n)})"
                )
            if not mat.is_zero():
                diffs[n] = mat
        self.diffs = diffs
        for n, mat in diffs.items():
            up = diffs.get(n + 1)
            if up is not None and not (mat * up).is_zero():
                raise ValueError(f"d_{n} . d_{n + 1} != 0")

    def dim(self, n: int) -> int:
        return self.space.dim(n)

    def degrees(self):
        return self.space.degrees()

    @property
    def total_dim(self) -> int:
        return self.space.total_dim

    def d(self, n: int) -> Matrix:
        mat = self.diffs.get(n)
        if mat is None:
            return Matrix.zero(self.field, self.dim(n - 1), self.dim(n))
        return mat

    def is_zero_object(self) -> bool:
        return not self.space.dims

    def __eq__(self, other):
        return (
            isinstance(other, ChainComplex)
            and self.field == other.field
            and self.space == other.space
            and self.diffs == other.diffs
        )

    def __hash__(self):
        return hash((self.field, self.space, frozenset(self.diffs.items())))

    def __repr__(self):
        return f"ChainComplex(dims={self.space.dims})"


def zero_complex(field: Field, non_negative: bool = False) -> ChainComplex:
    return ChainComplex(field, {}, non_negative=non_negative)


def unit_complex(field: Field, non_negative: bool = False) -> ChainComplex:
    """The monoidal unit: the field in degree 0."""
    return ChainComplex(field, {0: 1}, non_negative=non_negative)


class ChainMap:
    """A degree-0 map of complexes commuting with the differentials."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: ChainComplex, target: ChainComplex, components=None, check: bool = True):
        if source.field != target.field:
            raise ValueError("source/target over different fields")
        self.source = source
        self.target = target
        comps = {}
        for n, mat in (components or {}).items():
            n = int(n)
            if mat.shape != (target.dim(n), source.dim(n)):
                raise ValueError(
                    f"component {n} has shape {mat.shape}, expected "
                    f"({target.dim(n)}, {source.dim(n)})"
                )
            if not mat.is_zero():
                comps[n] = mat
        self.components = comps
        if check:
            bad = self.first_chain_defect()
            if bad is not None:
                raise ValueError(f"not a chain map: fails to commute with d in degree {bad}")

    def first_chain_defect(self):
        degrees = set(self.source.space.dims) | set(self.target.space.dims)
        for n in sorted(degrees | {n + 1 for n in degrees}):
            if not (self.target.d(n) * self.component(n) - self.component(n - 1) * self.source.d(n)).is_zero():
                return n
        return None

    @property
    def field(self) -> Field:
        return self.source.field

    def component(self, n: int) -> Matrix:
        mat = self.components.get(n)
        if mat is None:
            return Matrix.zero(self.field, self.target.dim(n), self.source.dim(n))
        return mat

    @classmethod
    def identity(cls, x: ChainComplex) -> "ChainMap":
        comps = {n: Matrix.identity(x.field, x.dim(n)) for n in x.degrees()}
        return cls(x, x, comps, check=False)

    @classmethod
    def zero(cls, source: ChainComplex, target: ChainComplex) -> "ChainMap":
        return cls(source, target, {}, check=False)

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """Composition self . other (apply other first)."""
        if other.target != self.source:
            raise ValueError("composition mismatch")
        comps = {}
        for n in set(self.components) | set(other.components):
            comps[n] = self.component(n) * other.component(n)
        return ChainMap(other.source, self.target, comps, check=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if self.source != other.source or self.target != other.target:
            raise ValueError("sum of maps with different endpoints")
        comps = {n: self.component(n) + other.component(n) for n in set(self.components) | set(other.components)}
        return ChainMap(self.source, self.target, comps, check=False)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + other.scale(self.field.neg(self.field.one))

    def scale(self, scalar) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: m.scale(scalar) for n, m in self.components.items()}, check=False)

    def is_zero(self) -> bool:
        return not self.components

    def __eq__(self, other):
        return (
            isinstance(other, ChainMap)
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.components.items())))

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


# -- homology and the model classes ------------------------------------------


def homology(x: ChainComplex) -> dict:
    """Degree -> dim H_n, finitely supported (zero dimensions omitted)."""
    result = {}
    for n in x.degrees():
        h = x.dim(n) - rank(x.d(n)) - rank(x.d(n + 1))
        if h:
            result[n] = h
    return result


def euler_characteristic(x: ChainComplex) -> int:
    return sum((-1) ** n * d for n, d in x.space.dims.items())


def is_mono(f: ChainMap) -> bool:
    """Monomorphism: every component has full column rank."""
    return all(rank(f.component(n)) == f.source.dim(n) for n in f.source.degrees())


def is_epi(f: ChainMap) -> bool:
    """Epimorphism: every component has full row rank."""
    return all(rank(f.component(n)) == f.target.dim(n) for n in f.target.degrees())


def is_iso(f: ChainMap) -> bool:
    return f.source.space == f.target.space and is_mono(f) and is_epi(f)


def is_quasi_iso(f: ChainMap) -> bool:
    """Does f induce an isomorphism on homology in every degree?

    Decided purely by ranks: per degree, compare homology dimensions and the
    rank of the induced map, computed from cycle and boundary bases without
    ever choosing a basis of homology.
    """
    degrees = set(f.source.space.dims) | set(f.target.space.dims)
    for n in sorted(degrees):
        zx = kernel_basis(f.source.d(n))
        bx_rank = rank(f.source.d(n + 1))
        hx = zx.cols - bx_rank
        zy = kernel_basis(f.target.d(n))
        by = column_space_basis(f.target.d(n + 1))
        hy = zy.cols - by.cols
        if hx != hy:
            return False
        if hx == 0:
            continue
        # rank of H(f): dim of (f(Z_X) + B_Y) / B_Y
        fz = f.component(n) * zx
        induced_rank = rank(hstack(fz, by)) - by.cols
        if induced_rank != hx:
            return False
    return True


def is_cof(f: ChainMap) -> bool:
    """Membership in the distinguished cofibration class.

    Over a field this class coincides with the monomorphisms, but the two
    predicates are kept under separate names so statements quantifying over
    both classes can be exercised verbatim.
    """
    return is_mono(f)


def is_trivial_cof(f: ChainMap) -> bool:
    return is_mono(f) and is_quasi_iso(f)


# -- direct sums --------------------------------------------------------------


class DirectSum:
    """X (+) Y with its injections and projections."""

    __slots__ = ("object", "in1", "in2", "pr1", "pr2")

    def __init__(self, obj, in1, in2, pr1, pr2):
        self.object = obj
        self.in1 = in1
        self.in2 = in2
        self.pr1 = pr1
        self.pr2 = pr2


def direct_sum(x: ChainComplex, y: ChainComplex) -> DirectSum:
    if x.field != y.field:
        raise ValueError("field mismatch")
    field = x.field
    dims = {}
    for n in set(x.space.dims) | set(y.space.dims):
        dims[n] = x.dim(n) + y.dim(n)
    diffs = {}
    for n in set(x.diffs) | set(y.diffs):
        diffs[n] = block_diag(x.d(n), y.d(n))
    total = ChainComplex(field, dims, diffs, non_negative=x.non_negative and y.non_negative)
    in1c, in2c, pr1c, pr2c = {}, {}, {}, {}
    for n in total.degrees():
        dx, dy = x.dim(n), y.dim(n)
        ix = Matrix(field, dx + dy, dx, {(i, i): field.one for i in range(dx)})
        iy = Matrix(field, dx + dy, dy, {(dx + i, i): field.one for i in range(dy)})
        in1c[n], in2c[n] = ix, iy
        pr1c[n], pr2c[n] = ix.transpose(), iy.transpose()
    return DirectSum(
        total,
        ChainMap(x, total, in1c, check=False),
        ChainMap(y, total, in2c, check=False),
        ChainMap(total, x, pr1c, check=False),
        ChainMap(total, y, pr2c, check=False),
    )


def pair_into_sum(ds: DirectSum, f: ChainMap, g: ChainMap) -> ChainMap:
    """The map (f, g): W -> X (+) Y from f: W -> X and g: W -> Y."""
    if f.source != g.source:
        raise ValueError("pairing maps with different sources")
    return ds.in1 @ f + ds.in2 @ g


def copair_from_sum(ds: DirectSum, f: ChainMap, g: ChainMap) -> ChainMap:
    """The map [f, g]: X (+) Y -> W from f: X -> W and g: Y -> W."""
    if f.target != g.target:
        raise ValueError("copairing maps with different targets")
    return f @ ds.pr1 + g @ ds.pr2


def restrict_differential(basis, ambient: ChainComplex):
    """Differential induced on a degreewise subspace closed under d.

    `basis` maps degree -> matrix whose columns span the subspace.  Returns
    the dict of induced differentials in subspace coordinates, or raises if
    the subspace is not d-closed.
    """
    diffs = {}
    field = ambient.field
    for n, b in basis.items():
        if b.cols == 0:
            continue
        image = ambient.d(n) * b
        below = basis.get(n - 1, Matrix.zero(field, ambient.dim(n - 1), 0))
        if image.is_zero():
            continue
        dn = solve(below, image)
        if dn is None:
            raise ValueError(f"subspace not closed under d in degree {n}")
        if not dn.is_zero():
            diffs[n] = dn
    return diffs
