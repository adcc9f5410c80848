"""Tensor products of complexes: Koszul signs and canonical coherence maps.

Basis convention: a basis element of (X (x) Y)_n is a triple (p, i, j) with
x_i in X_p, y_j in Y_q, p + q = n.  Within a fixed total degree the flat
index orders triples lexicographically by (p, i, j), blocks by ascending p.
All unitors, associators and symmetries below are explicit permutation
matrices (with signs) in that ordering.

Sign rules (|x| = p, |y| = q):
    d(x (x) y) = dx (x) y + (-1)^p x (x) dy
    tau(x (x) y) = (-1)^(p q) y (x) x
"""

from __future__ import annotations

from .complexes import ChainComplex, ChainMap, unit_complex
from .matrices import Matrix


class TensorLayout:
    """Index bookkeeping for X (x) Y: blocks, offsets, flat indices."""

    __slots__ = ("x", "y", "blocks", "dims")

    def __init__(self, x: ChainComplex, y: ChainComplex):
        if x.field != y.field:
            raise ValueError("tensor of complexes over different fields")
        self.x = x
        self.y = y
        self.blocks = {}
        self.dims = {}
        degrees = sorted({p + q for p in x.degrees() for q in y.degrees()})
        for n in degrees:
            offset = 0
            blocks = []
            for p in x.degrees():
                q = n - p
                dx, dy = x.dim(p), y.dim(q)
                if dx and dy:
                    blocks.append((p, q, offset, dx, dy))
                    offset += dx * dy
            if blocks:
                self.blocks[n] = blocks
                self.dims[n] = offset

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def block(self, n: int, p: int):
        """(offset, dimX, dimY) of the degree-p block inside degree n, or None."""
        for (bp, _, off, dx, dy) in self.blocks.get(n, ()):
            if bp == p:
                return (off, dx, dy)
        return None

    def flat(self, n: int, p: int, i: int, j: int) -> int:
        off, _, dy = self.block(n, p)
        return off + i * dy + j

    def decode(self, n: int, flat: int):
        """Inverse of `flat`: the (p, q, i, j) behind a flat degree-n index."""
        for (p, q, off, dx, dy) in self.blocks.get(n, ()):
            if off <= flat < off + dx * dy:
                rel = flat - off
                return (p, q, rel // dy, rel % dy)
        raise IndexError(f"flat index {flat} out of range in degree {n}")

    def basis(self, n: int):
        """Yield (p, q, i, j, flat) over the degree-n basis in flat order."""
        for (p, q, off, dx, dy) in self.blocks.get(n, ()):
            for i in range(dx):
                for j in range(dy):
                    yield (p, q, i, j, off + i * dy + j)


def tensor(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    """The tensor product complex with the Koszul differential."""
    layout = TensorLayout(x, y)
    field = x.field
    diffs = {}
    for n, blocks in layout.blocks.items():
        rows, cols = layout.dim(n - 1), layout.dim(n)
        if rows == 0:
            continue
        entries = {}
        for (p, q, off, dx, dy) in blocks:
            # d_X (x) id
            target = layout.block(n - 1, p - 1)
            if target is not None:
                toff, _, tdy = target
                for (r, i), v in x.d(p).entries.items():
                    for j in range(dy):
                        key = (toff + r * tdy + j, off + i * dy + j)
                        entries[key] = field.add(entries.get(key, field.zero), v)
            # (-1)^p id (x) d_Y
            target = layout.block(n - 1, p)
            if target is not None:
                toff, _, tdy = target
                sign = field.one if p % 2 == 0 else field.neg(field.one)
                for (s, j), w in y.d(q).entries.items():
                    sv = field.mul(sign, w)
                    for i in range(dx):
                        key = (toff + i * tdy + s, off + i * dy + j)
                        entries[key] = field.add(entries.get(key, field.zero), sv)
        mat = Matrix(field, rows, cols, entries)
        if not mat.is_zero():
            diffs[n] = mat
    return ChainComplex(
        field, dict(layout.dims), diffs,
        non_negative=x.non_negative and y.non_negative,
    )


def tensor_map(f: ChainMap, g: ChainMap) -> ChainMap:
    """f (x) g for degree-0 chain maps (no Koszul sign in this case)."""
    src = TensorLayout(f.source, g.source)
    tgt = TensorLayout(f.target, g.target)
    field = f.field
    comps = {}
    for n in src.blocks:
        if tgt.dim(n) == 0:
            continue
        entries = {}
        for (p, q, off, dx, dy) in src.blocks[n]:
            block = tgt.block(n, p)
            if block is None:
                continue
            toff, _, tdy = block
            fcol = {}
            for (r, i), v in f.component(p).entries.items():
                fcol.setdefault(i, []).append((r, v))
            gcol = {}
            for (s, j), w in g.component(q).entries.items():
                gcol.setdefault(j, []).append((s, w))
            for i in range(dx):
                for j in range(dy):
                    col = off + i * dy + j
                    for r, v in fcol.get(i, ()):
                        for s, w in gcol.get(j, ()):
                            entries[(toff + r * tdy + s, col)] = field.mul(v, w)
        mat = Matrix(field, tgt.dim(n), src.dim(n), entries)
        if not mat.is_zero():
            comps[n] = mat
    return ChainMap(tensor(f.source, g.source), tensor(f.target, g.target), comps, check=False)


def symmetry(x: ChainComplex, y: ChainComplex) -> ChainMap:
    """The braiding X (x) Y -> Y (x) X with the Koszul sign (-1)^(pq)."""
    src = TensorLayout(x, y)
    tgt = TensorLayout(y, x)
    field = x.field
    comps = {}
    for n in src.blocks:
        entries = {}
        for (p, q, i, j, flat) in src.basis(n):
            out = tgt.flat(n, q, j, i)
            sign = field.one if (p * q) % 2 == 0 else field.neg(field.one)
            entries[(out, flat)] = sign
        comps[n] = Matrix(field, tgt.dim(n), src.dim(n), entries)
    return ChainMap(tensor(x, y), tensor(y, x), comps, check=False)


def left_unitor(x: ChainComplex) -> ChainMap:
    """I (x) X -> X; the identity matrix in the canonical ordering."""
    unit = unit_complex(x.field, x.non_negative)
    src = tensor(unit, x)
    comps = {n: Matrix.identity(x.field, x.dim(n)) for n in x.degrees()}
    return ChainMap(src, x, comps, check=False)


def right_unitor(x: ChainComplex) -> ChainMap:
    """X (x) I -> X."""
    unit = unit_complex(x.field, x.non_negative)
    src = tensor(x, unit)
    comps = {n: Matrix.identity(x.field, x.dim(n)) for n in x.degrees()}
    return ChainMap(src, x, comps, check=False)


def left_unitor_inv(x: ChainComplex) -> ChainMap:
    unit = unit_complex(x.field, x.non_negative)
    tgt = tensor(unit, x)
    comps = {n: Matrix.identity(x.field, x.dim(n)) for n in x.degrees()}
    return ChainMap(x, tgt, comps, check=False)


def right_unitor_inv(x: ChainComplex) -> ChainMap:
    unit = unit_complex(x.field, x.non_negative)
    tgt = tensor(x, unit)
    comps = {n: Matrix.identity(x.field, x.dim(n)) for n in x.degrees()}
    return ChainMap(x, tgt, comps, check=False)


def associator(x: ChainComplex, y: ChainComplex, z: ChainComplex) -> ChainMap:
    """(X (x) Y) (x) Z -> X (x) (Y (x) Z), a sign-free permutation."""
    xy = tensor(x, y)
    yz = tensor(y, z)
    inner_src = TensorLayout(x, y)
    inner_tgt = TensorLayout(y, z)
    src = TensorLayout(xy, z)
    tgt = TensorLayout(x, yz)
    field = x.field
    comps = {}
    for n in src.blocks:
        entries = {}
        for (s, _, a, k, flat) in src.basis(n):
            p, q, i, j = inner_src.decode(s, a)
            b = inner_tgt.flat(q + (n - s), q, j, k)
            out = tgt.flat(n, p, i, b)
            entries[(out, flat)] = field.one
        comps[n] = Matrix(field, tgt.dim(n), src.dim(n), entries)
    return ChainMap(tensor(xy, z), tensor(x, yz), comps, check=False)


def associator_inv(x: ChainComplex, y: ChainComplex, z: ChainComplex) -> ChainMap:
    fwd = associator(x, y, z)
    comps = {n: m.transpose() for n, m in fwd.components.items()}
    return ChainMap(fwd.target, fwd.source, comps, check=False)
