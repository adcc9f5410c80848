"""The abelian toolkit for chain complexes: (co)kernels, images, (co)limits.

All constructions return the object together with its structure maps and,
where a universal property is involved, a mediating-map solver.  Bases are
chosen once per construction; universal properties hold on the nose for the
chosen bases.
"""

from __future__ import annotations

from .complexes import (
    ChainComplex,
    ChainMap,
    DirectSum,
    direct_sum,
    pair_into_sum,
    restrict_differential,
)
from .matrices import (
    Matrix,
    column_space_basis,
    hstack,
    kernel_basis,
    right_inverse,
    solve,
    solve_left,
    vstack,
)
from .tensors import tensor, tensor_map


class KernelData:
    __slots__ = ("object", "inclusion")

    def __init__(self, obj, inclusion):
        self.object = obj
        self.inclusion = inclusion


def kernel(f: ChainMap) -> KernelData:
    """ker f with its inclusion, bases chosen by exact elimination."""
    field = f.field
    basis = {}
    for n in f.source.degrees():
        k = kernel_basis(f.component(n))
        if k.cols:
            basis[n] = k
    dims = {n: b.cols for n, b in basis.items()}
    diffs = restrict_differential(
        {n: basis.get(n, Matrix.zero(field, f.source.dim(n), 0)) for n in f.source.degrees()},
        f.source,
    )
    obj = ChainComplex(field, dims, diffs, non_negative=f.source.non_negative)
    incl = ChainMap(obj, f.source, basis, check=False)
    return KernelData(obj, incl)


class ImageFactorization:
    """f = mono . epi through the image, with the mediating solver."""

    __slots__ = ("object", "epi", "mono")

    def __init__(self, obj, epi, mono):
        self.object = obj
        self.epi = epi
        self.mono = mono


def image_factorization(f: ChainMap) -> ImageFactorization:
    """Factor f: X -> Y as X ->> Im(f) >-> Y.

    The image basis per degree is a subset of f's columns, so the mono's
    components literally span the degreewise images inside Y.
    """
    field = f.field
    basis = {}
    for n in f.source.degrees():
        b = column_space_basis(f.component(n))
        if b.cols:
            basis[n] = b
    dims = {n: b.cols for n, b in basis.items()}
    diffs = restrict_differential(
        {n: basis.get(n, Matrix.zero(field, f.target.dim(n), 0)) for n in set(dims) | set(f.source.space.dims)},
        f.target,
    )
    obj = ChainComplex(field, dims, diffs, non_negative=f.target.non_negative and f.source.non_negative)
    mono = ChainMap(obj, f.target, basis, check=False)
    epi_comps = {}
    for n, b in basis.items():
        e = solve(b, f.component(n))
        assert e is not None, "image basis does not span the image"
        epi_comps[n] = e
    epi = ChainMap(f.source, obj, epi_comps, check=False)
    return ImageFactorization(obj, epi, mono)


class CokernelData:
    __slots__ = ("object", "projection")

    def __init__(self, obj, projection):
        self.object = obj
        self.projection = projection


def cokernel(f: ChainMap) -> CokernelData:
    """coker f with its projection Y ->> Y/im(f).

    The projection is the transpose of a kernel basis of f^T: its kernel is
    exactly im(f), with no inner product anywhere (annihilator computation).
    """
    field = f.field
    proj = {}
    for n in f.target.degrees():
        q = kernel_basis(f.component(n).transpose()).transpose()
        proj[n] = q
    dims = {n: q.rows for n, q in proj.items() if q.rows}
    diffs = {}
    for n in sorted(dims):
        qn = proj[n]
        below = proj.get(n - 1)
        if below is None or below.rows == 0:
            continue
        rhs = below * f.target.d(n)
        rinv = right_inverse(qn)
        assert rinv is not None
        dn = rhs * rinv
        assert dn * qn == rhs, "cokernel differential ill-defined"
        if not dn.is_zero():
            diffs[n] = dn
    obj = ChainComplex(field, dims, diffs, non_negative=f.target.non_negative)
    projection = ChainMap(f.target, obj, {n: q for n, q in proj.items() if q.rows}, check=False)
    return CokernelData(obj, projection)


class PullbackData:
    """P with projections to the two legs and the mediating solver."""

    __slots__ = ("object", "pr1", "pr2", "_inclusion")

    def __init__(self, obj, pr1, pr2, inclusion):
        self.object = obj
        self.pr1 = pr1
        self.pr2 = pr2
        self._inclusion = inclusion  # P >-> X (+) Y

    def mediate(self, u: ChainMap, v: ChainMap) -> ChainMap:
        """The unique w: W -> P with pr1.w = u and pr2.w = v."""
        if u.source != v.source:
            raise ValueError("mediating maps must share a source")
        comps = {}
        for n in u.source.degrees():
            stacked = vstack(u.component(n), v.component(n))
            w = solve(self._inclusion.component(n), stacked)
            if w is None:
                raise ValueError("cone does not factor through the pullback")
            comps[n] = w
        med = ChainMap(u.source, self.object, comps, check=True)
        if self.pr1 @ med != u or self.pr2 @ med != v:
            raise ValueError("cone does not factor through the pullback")
        return med


def pullback(f: ChainMap, g: ChainMap) -> PullbackData:
    """The pullback of f: X -> Z <- Y: g."""
    if f.target != g.target:
        raise ValueError("pullback legs must share a target")
    ds = direct_sum(f.source, g.source)
    difference = f @ ds.pr1 - g @ ds.pr2
    ker = kernel(difference)
    pr1 = ds.pr1 @ ker.inclusion
    pr2 = ds.pr2 @ ker.inclusion
    return PullbackData(ker.object, pr1, pr2, ker.inclusion)


class PushoutData:
    """P with injections from the two legs and the mediating solver."""

    __slots__ = ("object", "in1", "in2", "_projection")

    def __init__(self, obj, in1, in2, projection):
        self.object = obj
        self.in1 = in1
        self.in2 = in2
        self._projection = projection  # X (+) Y ->> P

    def mediate(self, u: ChainMap, v: ChainMap) -> ChainMap:
        """The unique w: P -> W with w.in1 = u and w.in2 = v."""
        if u.target != v.target:
            raise ValueError("mediating maps must share a target")
        comps = {}
        for n in self.object.degrees():
            row = hstack(u.component(n), v.component(n))
            w = solve_left(self._projection.component(n), row)
            if w is None:
                raise ValueError("cocone does not factor through the pushout")
            comps[n] = w
        med = ChainMap(self.object, u.target, comps, check=True)
        if med @ self.in1 != u or med @ self.in2 != v:
            raise ValueError("cocone does not factor through the pushout")
        return med


def pushout(f: ChainMap, g: ChainMap) -> PushoutData:
    """The pushout of X <- Z -> Y along f: Z -> X and g: Z -> Y."""
    if f.source != g.source:
        raise ValueError("pushout legs must share a source")
    ds = direct_sum(f.target, g.target)
    diagonal = pair_into_sum(ds, f, g.scale(f.field.neg(f.field.one)))
    coker = cokernel(diagonal)
    in1 = coker.projection @ ds.in1
    in2 = coker.projection @ ds.in2
    return PushoutData(coker.object, in1, in2, coker.projection)


def pushout_product(i: ChainMap, ip: ChainMap) -> ChainMap:
    """The corner map  K(x)Y  u_{K(x)X}  L(x)X  ->  L(x)Y  of i: K -> L, ip: X -> Y."""
    if i.field != ip.field:
        raise ValueError("field mismatch")
    k_y = tensor_map(ChainMap.identity(i.source), ip)   # K(x)X -> K(x)Y
    l_x = tensor_map(i, ChainMap.identity(ip.source))   # K(x)X -> L(x)X
    po = pushout(k_y, l_x)
    into_ly_1 = tensor_map(i, ChainMap.identity(ip.target))   # K(x)Y -> L(x)Y
    into_ly_2 = tensor_map(ChainMap.identity(i.target), ip)   # L(x)X -> L(x)Y
    return po.mediate(into_ly_1, into_ly_2)


class ConeData:
    """The cone on the identity of X: an acyclic complex with explicit data.

    Degree n of the cone is X_{n-1} (+) X_n, with
        d(x, y) = (-dx, x + dy).
    `inclusion` is the split mono X >-> cone (y -> (0, y)), `homotopy` maps
    cone_n -> cone_{n+1} by (x, y) -> (y, 0) and satisfies d h + h d = id.
    """

    __slots__ = ("object", "inclusion", "homotopy", "base")

    def __init__(self, obj, inclusion, homotopy, base):
        self.object = obj
        self.inclusion = inclusion
        self.homotopy = homotopy
        self.base = base

    def homotopy_component(self, n: int) -> Matrix:
        mat = self.homotopy.get(n)
        if mat is None:
            return Matrix.zero(self.object.field, self.object.dim(n + 1), self.object.dim(n))
        return mat


def cone_of_identity(x: ChainComplex) -> ConeData:
    field = x.field
    dims = {}
    degrees = set(x.space.dims)
    for n in degrees | {m + 1 for m in degrees}:
        d = x.dim(n - 1) + x.dim(n)
        if d:
            dims[n] = d
    diffs = {}
    for n in sorted(dims):
        rows = dims.get(n - 1, 0)
        cols = dims[n]
        if rows == 0:
            continue
        a = x.dim(n - 1)                       # cone_n = X_{n-1} (+) X_n
        ra = x.dim(n - 2)                      # cone_{n-1} = X_{n-2} (+) X_{n-1}
        entries = {}
        for (r, c), v in x.d(n - 1).entries.items():
            entries[(r, c)] = field.neg(v)     # -d on the shifted part
        for k in range(a):
            entries[(ra + k, k)] = field.add(entries.get((ra + k, k), field.zero), field.one)
        for (r, c), v in x.d(n).entries.items():
            key = (ra + r, a + c)
            entries[key] = field.add(entries.get(key, field.zero), v)
        mat = Matrix(field, rows, cols, entries)
        if not mat.is_zero():
            diffs[n] = mat
    # the cone is supported one degree above X, never in new negative degrees
    obj = ChainComplex(field, dims, diffs, non_negative=x.non_negative)
    incl_comps = {}
    for n in x.degrees():
        a = x.dim(n - 1)
        incl_comps[n] = Matrix(field, dims[n], x.dim(n), {(a + k, k): field.one for k in range(x.dim(n))})
    inclusion = ChainMap(x, obj, incl_comps, check=False)
    homotopy = {}
    for n in sorted(dims):
        up = dims.get(n + 1, 0)
        if up == 0:
            continue
        b = x.dim(n)                            # second summand of cone_n
        a = x.dim(n - 1)
        entries = {(k, a + k): field.one for k in range(b)}
        mat = Matrix(field, up, dims[n], entries)
        if not mat.is_zero():
            homotopy[n] = mat
    return ConeData(obj, inclusion, homotopy, x)


def extend_along_split_mono(k: ChainMap, t: ChainMap, cone: ConeData) -> ChainMap:
    """Extend t: A -> cone along the mono k: A -> B, using the contracting homotopy.

    With s a degreewise splitting of k (s k = id, not a chain map) and h the
    homotopy with d h + h d = id on the cone, the formula

        t~ = d h t s + h t s d

    is a chain map satisfying t~ k = t.
    """
    field = k.field
    if t.source != k.source:
        raise ValueError("extension data mismatch")
    x = cone.object
    if t.target != x:
        raise ValueError("extension target must be the cone")
    splitting = {}
    for n in k.source.degrees():
        s = solve_left(k.component(n), Matrix.identity(field, k.source.dim(n)))
        if s is None:
            raise ValueError(f"left leg is not a monomorphism in degree {n}")
        splitting[n] = s
    b = k.target
    comps = {}
    for n in b.degrees():
        if x.dim(n) == 0:
            continue
        s_n = splitting.get(n, Matrix.zero(field, k.source.dim(n), b.dim(n)))
        s_prev = splitting.get(n - 1, Matrix.zero(field, k.source.dim(n - 1), b.dim(n - 1)))
        first = x.d(n + 1) * cone.homotopy_component(n) * t.component(n) * s_n
        second = cone.homotopy_component(n - 1) * t.component(n - 1) * s_prev * b.d(n)
        mat = first + second
        if not mat.is_zero():
            comps[n] = mat
    ext = ChainMap(b, x, comps, check=True)
    for n in k.source.degrees():
        assert (ext.component(n) * k.component(n)) == t.component(n), "extension fails on the source"
    return ext
