"""Comonoids in chain complexes: coalgebras, their maps, and cylinders.

A coalgebra is a complex C with a comultiplication C -> C (x) C and a counit
C -> I satisfying coassociativity and the counit laws (up to the canonical
associator and unitors, which are explicit permutation matrices here).

The cylinder machinery lives here too: the interval coalgebra, coproducts of
coalgebras, the tensor of coalgebras, and the induced cylinder on any
coalgebra, with the factorization of the codiagonal verified at construction.
"""

from __future__ import annotations

from .checks import StructureReport, equality_check
from .complexes import ChainComplex, ChainMap, direct_sum, is_mono, is_quasi_iso, unit_complex, zero_complex
from .fields import Field
from .matrices import Matrix
from .tensors import (
    TensorLayout,
    associator,
    left_unitor,
    right_unitor,
    symmetry,
    tensor,
    tensor_map,
)


class Coalgebra:
    """A comonoid: carrier complex, comultiplication and counit."""

    __slots__ = ("carrier", "delta", "counit")

    def __init__(self, carrier: ChainComplex, delta: ChainMap, counit: ChainMap, check: bool = True):
        if delta.source != carrier or delta.target != tensor(carrier, carrier):
            raise ValueError("comultiplication must map the carrier to its tensor square")
        unit = unit_complex(carrier.field)
        if counit.source != carrier or counit.target != unit:
            raise ValueError("counit must map the carrier to the unit complex")
        self.carrier = carrier
        self.delta = delta
        self.counit = counit
        if check:
            report = check_comonoid(self)
            bad = report.first_failure()
            if bad is not None:
                raise ValueError(f"not a comonoid: {bad.describe()}")

    @property
    def field(self) -> Field:
        return self.carrier.field

    @property
    def total_dim(self) -> int:
        return self.carrier.total_dim

    def dim(self, n: int) -> int:
        return self.carrier.dim(n)

    def __eq__(self, other):
        return (
            isinstance(other, Coalgebra)
            and self.carrier == other.carrier
            and self.delta == other.delta
            and self.counit == other.counit
        )

    def __hash__(self):
        return hash((self.carrier, self.delta, self.counit))

    def __repr__(self):
        return f"Coalgebra(dims={self.carrier.space.dims})"


def check_comonoid(c: Coalgebra) -> StructureReport:
    """Coassociativity and both counit laws, axiom by axiom."""
    carrier = c.carrier
    ident = ChainMap.identity(carrier)
    report = StructureReport("comonoid")
    left = left_unitor(carrier) @ tensor_map(c.counit, ident) @ c.delta
    report.checks.append(equality_check("counit-left", left, ident))
    right = right_unitor(carrier) @ tensor_map(ident, c.counit) @ c.delta
    report.checks.append(equality_check("counit-right", right, ident))
    assoc = associator(carrier, carrier, carrier)
    lhs = assoc @ tensor_map(c.delta, ident) @ c.delta
    rhs = tensor_map(ident, c.delta) @ c.delta
    report.checks.append(equality_check("coassociativity", lhs, rhs))
    return report


def check_cocommutative(c: Coalgebra) -> bool:
    """Is the comultiplication fixed by the Koszul-signed symmetry?"""
    return symmetry(c.carrier, c.carrier) @ c.delta == c.delta


class CoalgebraMap:
    """A chain map compatible with comultiplications and counits."""

    __slots__ = ("source", "target", "chain")

    def __init__(self, source: Coalgebra, target: Coalgebra, chain: ChainMap, check: bool = True):
        if chain.source != source.carrier or chain.target != target.carrier:
            raise ValueError("underlying chain map has wrong endpoints")
        self.source = source
        self.target = target
        self.chain = chain
        if check:
            report = check_comonoid_map(self)
            bad = report.first_failure()
            if bad is not None:
                raise ValueError(f"not a map of comonoids: {bad.describe()}")

    @property
    def field(self) -> Field:
        return self.source.field

    @classmethod
    def identity(cls, c: Coalgebra) -> "CoalgebraMap":
        return cls(c, c, ChainMap.identity(c.carrier), check=False)

    def __matmul__(self, other: "CoalgebraMap") -> "CoalgebraMap":
        if other.target != self.source:
            raise ValueError("composition mismatch")
        return CoalgebraMap(other.source, self.target, self.chain @ other.chain, check=False)

    def __eq__(self, other):
        return (
            isinstance(other, CoalgebraMap)
            and self.source == other.source
            and self.target == other.target
            and self.chain == other.chain
        )

    def __hash__(self):
        return hash((self.source, self.target, self.chain))

    def __repr__(self):
        return f"CoalgebraMap({self.source!r} -> {self.target!r})"


def check_comonoid_map(f: CoalgebraMap) -> StructureReport:
    report = StructureReport("comonoid map")
    lhs = f.target.delta @ f.chain
    rhs = tensor_map(f.chain, f.chain) @ f.source.delta
    report.checks.append(equality_check("comultiplication-compatibility", lhs, rhs))
    report.checks.append(
        equality_check("counit-compatibility", f.target.counit @ f.chain, f.source.counit)
    )
    return report


# -- stock coalgebras ---------------------------------------------------------


def zero_coalgebra(fld: Field) -> Coalgebra:
    """The zero comonoid, the initial object."""
    z = zero_complex(fld)
    return Coalgebra(z, ChainMap.zero(z, tensor(z, z)), ChainMap.zero(z, unit_complex(fld)), check=False)


def unit_coalgebra(fld: Field, non_negative: bool = False) -> Coalgebra:
    """The monoidal unit with its unique comonoid structure."""
    unit = unit_complex(fld, non_negative)
    delta = ChainMap(unit, tensor(unit, unit), {0: Matrix.identity(fld, 1)}, check=False)
    counit = ChainMap(unit, unit_complex(fld), {0: Matrix.identity(fld, 1)}, check=False)
    return Coalgebra(unit, delta, counit, check=False)


def grouplike_coalgebra(fld: Field, n: int) -> Coalgebra:
    """n group-like basis vectors in degree 0: Delta(g) = g (x) g, eps(g) = 1."""
    carrier = ChainComplex(fld, {0: n} if n else {})
    sq = tensor(carrier, carrier)
    delta = ChainMap(
        carrier, sq,
        {0: Matrix(fld, n * n, n, {(i * n + i, i): fld.one for i in range(n)})} if n else {},
        check=False,
    )
    counit = ChainMap(
        carrier, unit_complex(fld),
        {0: Matrix(fld, 1, n, {(0, i): fld.one for i in range(n)})} if n else {},
        check=False,
    )
    return Coalgebra(carrier, delta, counit)


def skew_primitive_coalgebra(fld: Field) -> Coalgebra:
    """Basis g, h, x in degree 0 with g, h group-like and
    Delta(x) = g (x) x + x (x) h, eps(x) = 0."""
    carrier = ChainComplex(fld, {0: 3})
    one = fld.one
    # flat index of u (x) v in the 9-dimensional degree-0 square: 3u + v
    entries = {(0, 0): one, (4, 1): one, (2, 2): one, (7, 2): one}
    delta = ChainMap(carrier, tensor(carrier, carrier), {0: Matrix(fld, 9, 3, entries)}, check=False)
    counit = ChainMap(carrier, unit_complex(fld), {0: Matrix(fld, 1, 3, {(0, 0): one, (0, 1): one})}, check=False)
    return Coalgebra(carrier, delta, counit)


# -- coproducts ---------------------------------------------------------------


class CoalgebraCoproduct:
    """C u D in comonoids: computed on underlying complexes."""

    __slots__ = ("object", "in1", "in2", "_sum")

    def __init__(self, c: Coalgebra, d: Coalgebra):
        ds = direct_sum(c.carrier, d.carrier)
        delta = (
            tensor_map(ds.in1, ds.in1) @ c.delta @ ds.pr1
            + tensor_map(ds.in2, ds.in2) @ d.delta @ ds.pr2
        )
        counit = c.counit @ ds.pr1 + d.counit @ ds.pr2
        total = Coalgebra(ds.object, delta, counit, check=False)
        self.object = total
        self.in1 = CoalgebraMap(c, total, ds.in1, check=False)
        self.in2 = CoalgebraMap(d, total, ds.in2, check=False)
        self._sum = ds

    def copair(self, f: CoalgebraMap, g: CoalgebraMap) -> CoalgebraMap:
        """The unique map [f, g] out of the coproduct."""
        if f.target != g.target:
            raise ValueError("copairing maps with different targets")
        chain = f.chain @ self._sum.pr1 + g.chain @ self._sum.pr2
        return CoalgebraMap(self.object, f.target, chain, check=True)


def codiagonal(c: Coalgebra):
    """The fold map C u C -> C together with the coproduct data."""
    cop = CoalgebraCoproduct(c, c)
    return cop, cop.copair(CoalgebraMap.identity(c), CoalgebraMap.identity(c))


# -- cylinders ----------------------------------------------------------------


class CylinderData:
    """A factorization of the codiagonal: C u C >-> Cyl -> C in comonoids.

    Validates at construction: p . i0 = p . i1 = id, the joint inclusion of
    the two ends is a mono, and p is a quasi-isomorphism.
    """

    __slots__ = ("object", "base", "i0", "i1", "p", "ends")

    def __init__(self, obj: Coalgebra, base: Coalgebra, i0: CoalgebraMap, i1: CoalgebraMap, p: CoalgebraMap):
        self.object = obj
        self.base = base
        self.i0 = i0
        self.i1 = i1
        self.p = p
        ident = CoalgebraMap.identity(base)
        if p @ i0 != ident or p @ i1 != ident:
            raise ValueError("cylinder ends are not sections of the projection")
        cop = CoalgebraCoproduct(base, base)
        self.ends = cop.copair(i0, i1)
        if not is_mono(self.ends.chain):
            raise ValueError("joint end inclusion is not a monomorphism")
        if not is_quasi_iso(p.chain):
            raise ValueError("cylinder projection is not a weak equivalence")


def interval_coalgebra(fld: Field = None, non_negative: bool = False) -> CylinderData:
    """The interval: k.e in degree 1, k.a (+) k.b in degree 0, de = b - a.

    Comultiplication: Delta(a) = a (x) a, Delta(b) = b (x) b,
    Delta(e) = a (x) e + e (x) b; counit kills e and sends a, b to 1.
    The ends pick out a and b; the projection sends both a and b to 1.
    """
    fld = fld if fld is not None else Field.rationals()
    one = fld.one
    carrier = ChainComplex(
        fld, {0: 2, 1: 1},
        {1: Matrix(fld, 2, 1, {(0, 0): fld.neg(one), (1, 0): one})},
        non_negative=non_negative,
    )
    sq = tensor(carrier, carrier)
    # degree 0 of the square: a.a, a.b, b.a, b.b; degree 1: a.e, b.e, e.a, e.b
    delta = ChainMap(
        carrier, sq,
        {
            0: Matrix(fld, 4, 2, {(0, 0): one, (3, 1): one}),
            1: Matrix(fld, 4, 1, {(0, 0): one, (3, 0): one}),
        },
        check=False,
    )
    counit = ChainMap(carrier, unit_complex(fld), {0: Matrix(fld, 1, 2, {(0, 0): one, (0, 1): one})}, check=False)
    cyl = Coalgebra(carrier, delta, counit)
    base = unit_coalgebra(fld, non_negative)
    i0 = CoalgebraMap(base, cyl, ChainMap(base.carrier, carrier, {0: Matrix(fld, 2, 1, {(0, 0): one})}), check=True)
    i1 = CoalgebraMap(base, cyl, ChainMap(base.carrier, carrier, {0: Matrix(fld, 2, 1, {(1, 0): one})}), check=True)
    p = CoalgebraMap(cyl, base, ChainMap(carrier, base.carrier, {0: Matrix(fld, 1, 2, {(0, 0): one, (0, 1): one})}), check=True)
    return CylinderData(cyl, base, i0, i1, p)


def tensor_comonoid(c: Coalgebra, d: Coalgebra) -> Coalgebra:
    """C (x) D with the standard comonoid structure.

    Structure constants are computed directly: the middle transposition
    contributes the Koszul sign (-1)^(|c2||d1|) on each term
    (c1 (x) d1) (x) (c2 (x) d2).
    """
    if c.field != d.field:
        raise ValueError("field mismatch")
    fld = c.field
    t = tensor(c.carrier, d.carrier)
    tl = TensorLayout(c.carrier, d.carrier)
    cc = TensorLayout(c.carrier, c.carrier)
    dd = TensorLayout(d.carrier, d.carrier)
    tt = TensorLayout(t, t)
    # structure constants of the two comultiplications, indexed by basis column
    c_cols, d_cols = {}, {}
    for p in c.carrier.degrees():
        for (flat, i), v in c.delta.component(p).entries.items():
            c_cols.setdefault((p, i), []).append((cc.decode(p, flat), v))
    for q in d.carrier.degrees():
        for (flat, j), w in d.delta.component(q).entries.items():
            d_cols.setdefault((q, j), []).append((dd.decode(q, flat), w))
    delta_comps = {}
    for n in t.degrees():
        entries = {}
        for (p, q, i, j, col) in tl.basis(n):
            c_terms = c_cols.get((p, i), ())
            d_terms = d_cols.get((q, j), ())
            for ((p1, p2, a, b), v) in c_terms:
                for ((q1, q2, u, w2), w) in d_terms:
                    sign = fld.one if (p2 * q1) % 2 == 0 else fld.neg(fld.one)
                    row = tt.flat(
                        n, p1 + q1,
                        tl.flat(p1 + q1, p1, a, u),
                        tl.flat(p2 + q2, p2, b, w2),
                    )
                    val = fld.mul(sign, fld.mul(v, w))
                    acc = fld.add(entries.get((row, col), fld.zero), val)
                    if acc == 0:
                        entries.pop((row, col), None)
                    else:
                        entries[(row, col)] = acc
        mat = Matrix(fld, tt.dim(n), t.dim(n), entries)
        if not mat.is_zero():
            delta_comps[n] = mat
    counit_entries = {}
    ec = c.counit.component(0)
    ed = d.counit.component(0)
    if tl.dim(0):
        for (p, q, i, j, col) in tl.basis(0):
            if p == 0 and q == 0:
                v = fld.mul(ec[0, i], ed[0, j])
                if v != 0:
                    counit_entries[(0, col)] = v
    counit = ChainMap(
        t, unit_complex(fld),
        {0: Matrix(fld, 1, tl.dim(0), counit_entries)} if tl.dim(0) else {},
        check=False,
    )
    delta = ChainMap(t, tensor(t, t), delta_comps, check=False)
    return Coalgebra(t, delta, counit, check=True)


def cylinder_comonoid(c: Coalgebra, interval: CylinderData = None) -> CylinderData:
    """The cylinder on a coalgebra: C (x) Cyl(I), ends x -> x (x) a, x (x) b."""
    if interval is None:
        interval = interval_coalgebra(c.field)
    if interval.object.field != c.field:
        raise ValueError("field mismatch")
    obj = tensor_comonoid(c, interval.object)
    fld = c.field
    carrier = c.carrier
    tl = TensorLayout(carrier, interval.object.carrier)
    i0_comps, i1_comps, p_comps = {}, {}, {}
    for n in carrier.degrees():
        if tl.dim(n) == 0:
            continue
        e0, e1 = {}, {}
        for i in range(carrier.dim(n)):
            e0[(tl.flat(n, n, i, 0), i)] = fld.one
            e1[(tl.flat(n, n, i, 1), i)] = fld.one
        i0_comps[n] = Matrix(fld, tl.dim(n), carrier.dim(n), e0)
        i1_comps[n] = Matrix(fld, tl.dim(n), carrier.dim(n), e1)
    for n in sorted(tl.dims):
        entries = {}
        for (p, q, i, j, col) in tl.basis(n):
            if q == 0:
                entries[(i, col)] = fld.one
        p_comps[n] = Matrix(fld, carrier.dim(n), tl.dim(n), entries)
    i0 = CoalgebraMap(c, obj, ChainMap(carrier, obj.carrier, i0_comps), check=True)
    i1 = CoalgebraMap(c, obj, ChainMap(carrier, obj.carrier, i1_comps), check=True)
    p = CoalgebraMap(obj, c, ChainMap(obj.carrier, carrier, p_comps), check=True)
    return CylinderData(obj, c, i0, i1, p)
