"""Deterministic random instance generation for the verification harness.

All randomness flows through ``random.Random`` seeded explicitly; per-trial
generators derive their seed from the master seed and trial index, so runs
are reproducible and trials are independent.

Random complexes are built as direct sums of spheres (one basis vector) and
disks (an identity differential) conjugated by random invertible degreewise
matrices.  Over a field every complex decomposes this way, so the generator
covers all isomorphism classes at the configured size.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .complexes import ChainComplex, ChainMap, direct_sum
from .abelian import cone_of_identity
from .fields import Field, RATIONALS
from .lifting import LinearSystem
from .matrices import Matrix


@dataclass(frozen=True)
class GeneratorConfig:
    """Size knobs for random instances; defaults keep exact arithmetic fast."""

    max_dim: int = 3
    min_degree: int = -2
    max_degree: int = 3
    density: float = 0.5
    numerator_bound: int = 3
    denominator_bound: int = 2
    max_blocks: int = 3

    def to_json(self) -> dict:
        return {
            "max_dim": self.max_dim,
            "min_degree": self.min_degree,
            "max_degree": self.max_degree,
            "density": self.density,
            "numerator_bound": self.numerator_bound,
            "denominator_bound": self.denominator_bound,
            "max_blocks": self.max_blocks,
        }


def trial_rng(master_seed: int, trial: int) -> random.Random:
    return random.Random(f"{master_seed}:{trial}")


def random_scalar(fld: Field, rng: random.Random, cfg: GeneratorConfig, nonzero=False):
    if fld.kind == RATIONALS:
        while True:
            v = Fraction(rng.randint(-cfg.numerator_bound, cfg.numerator_bound),
                         rng.randint(1, cfg.denominator_bound))
            if v != 0 or not nonzero:
                return v
    lo = 1 if nonzero else 0
    return rng.randrange(lo, fld.characteristic)


def random_invertible(fld: Field, n: int, rng: random.Random, cfg: GeneratorConfig) -> Matrix:
    """P . L . U with unit-triangular L, U and a permutation P."""
    if n == 0:
        return Matrix.zero(fld, 0, 0)
    lower = {(i, i): fld.one for i in range(n)}
    upper = {(i, i): fld.one for i in range(n)}
    for i in range(n):
        for j in range(i):
            if rng.random() < cfg.density:
                lower[(i, j)] = random_scalar(fld, rng, cfg)
            if rng.random() < cfg.density:
                upper[(j, i)] = random_scalar(fld, rng, cfg)
    perm = list(range(n))
    rng.shuffle(perm)
    p = Matrix(fld, n, n, {(perm[i], i): fld.one for i in range(n)})
    return p * Matrix(fld, n, n, lower) * Matrix(fld, n, n, upper)


def random_complex(fld: Field, rng: random.Random, cfg: GeneratorConfig,
                   non_negative: bool = False) -> ChainComplex:
    lo = max(cfg.min_degree, 0) if non_negative else cfg.min_degree
    hi = cfg.max_degree
    dims = {n: 0 for n in range(lo, hi + 1)}
    disk_blocks = []  # (degree n, index in X_n, index in X_{n-1})
    for _ in range(rng.randint(0, cfg.max_blocks)):
        n = rng.randint(lo, hi)
        if rng.random() < 0.5 and n - 1 >= lo:
            disk_blocks.append((n, dims[n], dims[n - 1]))
            dims[n] += 1
            dims[n - 1] += 1
        else:
            dims[n] += 1
    dims = {n: d for n, d in dims.items() if 0 < d <= cfg.max_dim}
    disk_blocks = [(n, i, j) for (n, i, j) in disk_blocks if n in dims and (n - 1) in dims
                   and i < dims[n] and j < dims[n - 1]]
    diffs = {}
    for n, i, j in disk_blocks:
        diffs.setdefault(n, {})[(j, i)] = fld.one
    diff_mats = {n: Matrix(fld, dims.get(n - 1, 0), dims.get(n, 0), e) for n, e in diffs.items()}
    plain = ChainComplex(fld, dims, diff_mats, non_negative=non_negative)
    # conjugate by a random degreewise isomorphism
    g = {n: random_invertible(fld, plain.dim(n), rng, cfg) for n in plain.degrees()}
    from .matrices import inverse

    twisted = {}
    for n in plain.diffs:
        mat = g[n - 1] * plain.d(n) * inverse(g[n])
        if not mat.is_zero():
            twisted[n] = mat
    return ChainComplex(fld, dims, twisted, non_negative=non_negative)


def random_combination(particular, basis, rng: random.Random, cfg: GeneratorConfig):
    """particular + random small-scalar combination of basis maps (any map type
    supporting + and scale); returns None on an empty affine space."""
    acc = particular
    for b in basis:
        c = random_scalar(b.field if hasattr(b, "field") else acc.field, rng, cfg)
        if c != 0:
            acc = acc + b.scale(c)
    return acc


def random_chain_map(x: ChainComplex, y: ChainComplex, rng: random.Random,
                     cfg: GeneratorConfig) -> ChainMap:
    system = LinearSystem(x.field)
    system.add_unknown("f", x, y)
    system.add_chain_constraints("f")
    _, basis = system.solution_space()
    f = ChainMap.zero(x, y)
    return random_combination(f, [maps["f"] for maps in basis], rng, cfg)


def random_mono(fld: Field, rng: random.Random, cfg: GeneratorConfig,
                source: ChainComplex = None, non_negative: bool = False):
    """A random monomorphism: X >-> X (+) W conjugated by an isomorphism."""
    x = source if source is not None else random_complex(fld, rng, cfg, non_negative)
    w = random_complex(fld, rng, cfg, non_negative)
    return _twisted_inclusion(x, w, rng, cfg)


def random_trivial_mono(fld: Field, rng: random.Random, cfg: GeneratorConfig,
                        source: ChainComplex = None, non_negative: bool = False):
    """A random mono that is also a quasi-iso: X >-> X (+) cone(id_Z), twisted."""
    x = source if source is not None else random_complex(fld, rng, cfg, non_negative)
    z = random_complex(fld, rng, cfg, non_negative)
    return _twisted_inclusion(x, cone_of_identity(z).object, rng, cfg)


def _twisted_inclusion(x: ChainComplex, w: ChainComplex, rng, cfg) -> ChainMap:
    from .matrices import inverse

    ds = direct_sum(x, w)
    total = ds.object
    g = {n: random_invertible(x.field, total.dim(n), rng, cfg) for n in total.degrees()}
    twisted_diffs = {}
    for n in total.diffs:
        mat = g[n - 1] * total.d(n) * inverse(g[n])
        if not mat.is_zero():
            twisted_diffs[n] = mat
    target = ChainComplex(x.field, dict(total.space.dims), twisted_diffs,
                          non_negative=total.non_negative)
    comps = {}
    for n in x.degrees():
        comps[n] = g[n] * ds.in1.component(n)
    return ChainMap(x, target, comps, check=True)


# -- coalgebras -----------------------------------------------------------------


def transport_coalgebra(c, iso_components):
    """Transport the comonoid structure along a degreewise isomorphism.

    Produces an isomorphic coalgebra on a carrier with differential
    g d g^{-1}, comultiplication (g (x) g) Delta g^{-1}, counit eps g^{-1}.
    """
    from .coalgebras import Coalgebra
    from .matrices import inverse
    from .tensors import tensor_map

    carrier = c.carrier
    fld = c.field
    g = {n: iso_components.get(n, Matrix.identity(fld, carrier.dim(n))) for n in carrier.degrees()}
    ginv = {n: inverse(m) for n, m in g.items()}
    new_diffs = {}
    for n in carrier.diffs:
        mat = g[n - 1] * carrier.d(n) * ginv[n]
        if not mat.is_zero():
            new_diffs[n] = mat
    new_carrier = ChainComplex(fld, dict(carrier.space.dims), new_diffs,
                               non_negative=carrier.non_negative)
    fwd = ChainMap(carrier, new_carrier, g, check=True)
    bwd = ChainMap(new_carrier, carrier, ginv, check=False)
    delta = tensor_map(fwd, fwd) @ c.delta @ bwd
    counit = c.counit @ bwd
    return Coalgebra(new_carrier, delta, counit, check=False)


def random_coalgebra(fld: Field, rng: random.Random, cfg: GeneratorConfig,
                     max_total_dim: int = 6):
    """A random coalgebra: sums/tensors of stock pieces, twisted by an iso."""
    from .coalgebras import (
        CoalgebraCoproduct,
        grouplike_coalgebra,
        interval_coalgebra,
        skew_primitive_coalgebra,
        tensor_comonoid,
        unit_coalgebra,
    )

    def pick_piece():
        roll = rng.random()
        if roll < 0.35:
            return interval_coalgebra(fld).object
        if roll < 0.6:
            return grouplike_coalgebra(fld, rng.randint(1, 2))
        if roll < 0.8:
            return skew_primitive_coalgebra(fld)
        return unit_coalgebra(fld)

    current = pick_piece()
    for _ in range(rng.randint(0, 2)):
        piece = pick_piece()
        if rng.random() < 0.5 and current.total_dim * piece.total_dim <= max_total_dim:
            current = tensor_comonoid(current, piece)
        elif current.total_dim + piece.total_dim <= max_total_dim:
            current = CoalgebraCoproduct(current, piece).object
    g = {n: random_invertible(fld, current.dim(n), rng, cfg)
         for n in current.carrier.degrees()}
    return transport_coalgebra(current, g)


def random_subcoalgebra(c, rng: random.Random, cfg: GeneratorConfig, max_generators: int = 2):
    """A random subcoalgebra: generated by random ambient vectors."""
    from .subcoalgebras import subcoalgebra_generated_by

    vectors = {}
    degrees = c.carrier.degrees()
    for _ in range(rng.randint(0, max_generators)):
        if not degrees:
            break
        n = rng.choice(degrees)
        col = {}
        for i in range(c.dim(n)):
            v = random_scalar(c.field, rng, cfg)
            if v != 0:
                col[(i, 0)] = v
        if col:
            mat = Matrix(c.field, c.dim(n), 1, col)
            prev = vectors.get(n)
            from .matrices import hstack

            vectors[n] = mat if prev is None else hstack(prev, mat)
    return subcoalgebra_generated_by(c, vectors)


# -- comodules -------------------------------------------------------------------


def random_comodule(c, rng: random.Random, cfg: GeneratorConfig,
                    non_negative: bool = False):
    """A random comodule over c: a sub of a biproduct of cofrees, twisted."""
    from .comodules import biproduct, cofree_comodule, zero_comodule

    pieces = []
    for _ in range(rng.randint(1, 2)):
        x = random_complex(c.field, rng, cfg, non_negative)
        if not x.is_zero_object():
            pieces.append(cofree_comodule(x, c))
    if not pieces:
        return zero_comodule(c)
    total = pieces[0]
    for piece in pieces[1:]:
        total = biproduct(total, piece).object
    if rng.random() < 0.5 and total.total_dim:
        sub = random_subcomodule(total, rng, cfg)
        if sub.total_dim:
            total = sub
    return transport_comodule(total, rng, cfg)


def random_subcomodule_inclusion(m, rng: random.Random, cfg: GeneratorConfig):
    """(sub, inclusion) for the subcomodule generated by random vectors.

    Closure runs under d and the carrier-side legs of the coaction: for
    rho(v) in block M_p (x) C_q, the M_p components of the block matrix must
    lie in the subcomodule.
    """
    from .comodules import restrict_comodule
    from .matrices import reduced_basis, subspace_sum
    from .tensors import TensorLayout

    fld = m.field
    carrier = m.carrier
    layout = TensorLayout(carrier, m.over.carrier)
    span = {}
    for _ in range(rng.randint(1, 2)):
        degrees = carrier.degrees()
        if not degrees:
            break
        n = rng.choice(degrees)
        col = {}
        for i in range(carrier.dim(n)):
            v = random_scalar(fld, rng, cfg)
            if v != 0:
                col[(i, 0)] = v
        if col:
            mat = Matrix(fld, carrier.dim(n), 1, col)
            prev = span.get(n)
            span[n] = reduced_basis(mat) if prev is None else subspace_sum(prev, mat)
    while True:
        before = {n: b.cols for n, b in span.items()}
        for n in sorted(span):
            img = carrier.d(n) * span[n]
            if not img.is_zero():
                prev = span.get(n - 1, Matrix.zero(fld, carrier.dim(n - 1), 0))
                span[n - 1] = subspace_sum(prev, img)
        for n in sorted(span):
            w = m.rho.component(n) * span[n]
            if w.is_zero():
                continue
            for (p, q, off, dx, dy) in layout.blocks.get(n, ()):
                left = {}
                for (flat, col_idx), v in w.entries.items():
                    if off <= flat < off + dx * dy:
                        rel = flat - off
                        left[(rel // dy, col_idx * dy + rel % dy)] = v
                if left:
                    lmat = Matrix(fld, dx, span[n].cols * dy, left)
                    prev = span.get(p, Matrix.zero(fld, dx, 0))
                    span[p] = subspace_sum(prev, lmat)
        span = {n: b for n, b in span.items() if b.cols}
        if {n: b.cols for n, b in span.items()} == before:
            break
    return restrict_comodule(m, span)


def random_subcomodule(m, rng: random.Random, cfg: GeneratorConfig):
    return random_subcomodule_inclusion(m, rng, cfg)[0]


def transport_comodule(m, rng: random.Random, cfg: GeneratorConfig):
    """An isomorphic copy of m along a random degreewise isomorphism."""
    from .comodules import Comodule
    from .matrices import inverse
    from .tensors import tensor_map

    fld = m.field
    carrier = m.carrier
    g = {n: random_invertible(fld, carrier.dim(n), rng, cfg) for n in carrier.degrees()}
    ginv = {n: inverse(mat) for n, mat in g.items()}
    new_diffs = {}
    for n in carrier.diffs:
        mat = g[n - 1] * carrier.d(n) * ginv[n]
        if not mat.is_zero():
            new_diffs[n] = mat
    new_carrier = ChainComplex(fld, dict(carrier.space.dims), new_diffs,
                               non_negative=carrier.non_negative)
    fwd = ChainMap(carrier, new_carrier, g, check=True)
    bwd = ChainMap(new_carrier, carrier, ginv, check=False)
    rho = tensor_map(fwd, ChainMap.identity(m.over.carrier)) @ m.rho @ bwd
    return Comodule(m.over, new_carrier, rho, check=False)


def random_comodule_map(m, n, rng: random.Random, cfg: GeneratorConfig):
    """A random comodule map m -> n, sampled from the full linear space."""
    from .comodules import ComoduleMap

    system = LinearSystem(m.field)
    system.add_unknown("f", m.carrier, n.carrier)
    system.add_chain_constraints("f")
    system.add_coaction_constraints("f", m.rho, n.rho, m.over.carrier)
    _, basis = system.solution_space()
    chain = ChainMap.zero(m.carrier, n.carrier)
    chain = random_combination(chain, [maps["f"] for maps in basis], rng, cfg)
    return ComoduleMap(m, n, chain, check=False)


def random_comodule_mono(c, rng: random.Random, cfg: GeneratorConfig):
    """A random mono of comodules: a subcomodule inclusion (zero source allowed)."""
    from .comodules import ComoduleMap, zero_comodule

    m = random_comodule(c, rng, cfg)
    if m.total_dim == 0:
        return ComoduleMap.zero(zero_comodule(c), m)
    _, incl = random_subcomodule_inclusion(m, rng, cfg)
    return incl

