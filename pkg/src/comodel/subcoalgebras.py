"""The subcoalgebra lattice: images, intersections, unions, generation.

A subcoalgebra is stored as per-degree spanning matrices in the ambient
basis, kept in reduced column-echelon form so equal subspaces have identical
representations.  Construction derives the induced comonoid structure on an
abstract carrier and fails loudly if the subspace is not closed under the
differential or the comultiplication.

The finite lift-extension loop lives here too: it grows a partial lift over
an increasing chain of subcoalgebras, gluing oracle-provided sub-lifts along
unions, one generated subcoalgebra per step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .coalgebras import Coalgebra, CoalgebraMap
from .complexes import ChainComplex, ChainMap, restrict_differential, unit_complex
from .abelian import image_factorization
from .lifting import LiftingProblem, LinearSystem
from .matrices import (
    Matrix,
    hstack,
    inverse,
    reduced_basis,
    solve,
    solve_left,
    subspace_contains,
    subspace_intersection,
    subspace_sum,
)
from .tensors import TensorLayout, tensor_map


class ClosureError(ValueError):
    """The given subspace is not closed under d or the comultiplication."""


class Subcoalgebra:
    """A subspace of a coalgebra that is itself a coalgebra.

    `basis` maps degree -> canonical spanning matrix (ambient coordinates);
    `coalgebra` is the induced comonoid on the abstract carrier and
    `inclusion` the comonoid map into the ambient.
    """

    __slots__ = ("ambient", "basis", "coalgebra", "inclusion")

    def __init__(self, ambient: Coalgebra, basis):
        self.ambient = ambient
        fld = ambient.field
        canon = {}
        for n, mat in basis.items():
            if mat.rows != ambient.dim(n):
                raise ValueError(f"basis in degree {n} has wrong ambient dimension")
            red = reduced_basis(mat)
            if red.cols:
                canon[int(n)] = red
        self.basis = canon
        carrier = ambient.carrier
        full = {n: canon.get(n, Matrix.zero(fld, carrier.dim(n), 0)) for n in carrier.degrees()}
        try:
            diffs = restrict_differential(full, carrier)
        except ValueError as exc:
            raise ClosureError(str(exc)) from exc
        sub_complex = ChainComplex(
            fld, {n: b.cols for n, b in canon.items()}, diffs,
            non_negative=carrier.non_negative,
        )
        incl = ChainMap(sub_complex, carrier, canon, check=False)
        squared = tensor_map(incl, incl)
        delta_comps = {}
        ambient_delta_incl = ambient.delta @ incl
        for n in sub_complex.degrees():
            rhs = ambient_delta_incl.component(n)
            sol = solve(squared.component(n), rhs)
            if sol is None:
                raise ClosureError(f"comultiplication does not restrict in degree {n}")
            if not sol.is_zero():
                delta_comps[n] = sol
        delta = ChainMap(sub_complex, squared.source, delta_comps, check=False)
        counit = ChainMap(
            sub_complex, unit_complex(fld),
            {n: (ambient.counit @ incl).component(n) for n in sub_complex.degrees()},
            check=False,
        )
        self.coalgebra = Coalgebra(sub_complex, delta, counit, check=True)
        self.inclusion = CoalgebraMap(self.coalgebra, ambient, incl, check=True)

    @property
    def field(self):
        return self.ambient.field

    def dim(self, n: int) -> int:
        b = self.basis.get(n)
        return b.cols if b is not None else 0

    @property
    def total_dim(self) -> int:
        return sum(b.cols for b in self.basis.values())

    def degrees(self):
        return sorted(self.basis)

    def basis_matrix(self, n: int) -> Matrix:
        b = self.basis.get(n)
        return b if b is not None else Matrix.zero(self.field, self.ambient.dim(n), 0)

    def contains(self, other: "Subcoalgebra") -> bool:
        if self.ambient != other.ambient:
            raise ValueError("subcoalgebras of different ambients")
        return all(subspace_contains(self.basis_matrix(n), b) for n, b in other.basis.items())

    def contains_vector(self, n: int, column: Matrix) -> bool:
        return subspace_contains(self.basis_matrix(n), column)

    def is_whole(self) -> bool:
        return all(self.dim(n) == self.ambient.dim(n) for n in self.ambient.carrier.degrees())

    def __eq__(self, other):
        return (
            isinstance(other, Subcoalgebra)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, frozenset(self.basis.items())))

    def __repr__(self):
        return f"Subcoalgebra(dims={{{', '.join(f'{n}: {b.cols}' for n, b in sorted(self.basis.items()))}}})"


def full_subcoalgebra(c: Coalgebra) -> Subcoalgebra:
    fld = c.field
    return Subcoalgebra(c, {n: Matrix.identity(fld, c.dim(n)) for n in c.carrier.degrees()})


def inclusion_between(smaller: Subcoalgebra, larger: Subcoalgebra) -> CoalgebraMap:
    """The comonoid map smaller -> larger when the subspaces are nested."""
    if smaller.ambient != larger.ambient:
        raise ValueError("subcoalgebras of different ambients")
    comps = {}
    for n in smaller.degrees():
        sol = solve(larger.basis_matrix(n), smaller.basis_matrix(n))
        if sol is None:
            raise ValueError("first subcoalgebra is not contained in the second")
        comps[n] = sol
    chain = ChainMap(smaller.coalgebra.carrier, larger.coalgebra.carrier, comps, check=True)
    return CoalgebraMap(smaller.coalgebra, larger.coalgebra, chain, check=True)


# -- image --------------------------------------------------------------------


def image_subcoalgebra(f: CoalgebraMap):
    """The image of a comonoid map, as (epi onto the image, subcoalgebra).

    Over a field the chain-level image is automatically closed under the
    comultiplication; a closure failure here is an internal error.
    """
    fact = image_factorization(f.chain)
    basis = {n: fact.mono.component(n) for n in fact.object.degrees()}
    try:
        sub = Subcoalgebra(f.target, basis)
    except ClosureError as exc:
        raise RuntimeError(f"image of a comonoid map failed to close: {exc}") from exc
    epi_comps = {}
    for n in f.source.carrier.degrees():
        sol = solve(sub.inclusion.chain.component(n), f.chain.component(n))
        assert sol is not None
        if not sol.is_zero():
            epi_comps[n] = sol
    epi_chain = ChainMap(f.source.carrier, sub.coalgebra.carrier, epi_comps, check=True)
    epi = CoalgebraMap(f.source, sub.coalgebra, epi_chain, check=True)
    assert sub.inclusion @ epi == f
    return epi, sub


# -- lattice operations ---------------------------------------------------------


def intersect_subcoalgebras(a: Subcoalgebra, b: Subcoalgebra) -> Subcoalgebra:
    """Degreewise subspace intersection; a comonoid again."""
    if a.ambient != b.ambient:
        raise ValueError("subcoalgebras of different ambients")
    basis = {}
    for n in set(a.basis) & set(b.basis):
        cap = subspace_intersection(a.basis_matrix(n), b.basis_matrix(n))
        if cap.cols:
            basis[n] = cap
    return Subcoalgebra(a.ambient, basis)


def union_subcoalgebras(a: Subcoalgebra, b: Subcoalgebra) -> Subcoalgebra:
    """Degreewise subspace sum; the pushout of a <- a&b -> b in comonoids."""
    if a.ambient != b.ambient:
        raise ValueError("subcoalgebras of different ambients")
    basis = {}
    for n in set(a.basis) | set(b.basis):
        basis[n] = subspace_sum(a.basis_matrix(n), b.basis_matrix(n))
    return Subcoalgebra(a.ambient, basis)


def glue_on_union(a: Subcoalgebra, b: Subcoalgebra, union: Subcoalgebra,
                  u: CoalgebraMap, v: CoalgebraMap) -> CoalgebraMap:
    """The mediating map out of the union-as-pushout.

    u: a -> W and v: b -> W must agree on the intersection; the result w
    satisfies w . (a -> union) = u and w . (b -> union) = v.
    """
    if u.target != v.target:
        raise ValueError("cocone maps must share a target")
    fld = union.field
    comps = {}
    for n in union.degrees():
        pa = solve(union.basis_matrix(n), a.basis_matrix(n))
        pb = solve(union.basis_matrix(n), b.basis_matrix(n))
        m = hstack(pa, pb)
        rhs = hstack(u.chain.component(n), v.chain.component(n))
        w = solve_left(m, rhs)
        if w is None:
            raise ValueError("cocone maps do not agree on the intersection")
        if not w.is_zero():
            comps[n] = w
    chain = ChainMap(union.coalgebra.carrier, u.target.carrier, comps, check=True)
    med = CoalgebraMap(union.coalgebra, u.target, chain, check=True)
    assert med @ inclusion_between(a, union) == u
    assert med @ inclusion_between(b, union) == v
    return med


# -- generation -----------------------------------------------------------------


def _normalize_generators(c: Coalgebra, vectors) -> dict:
    fld = c.field
    if isinstance(vectors, dict):
        return {int(n): m for n, m in vectors.items()}
    by_degree = {}
    for (n, values) in vectors:
        col = Matrix.column(fld, [v if not isinstance(v, int) else fld.of_int(v) for v in values])
        if col.rows != c.dim(n):
            raise ValueError(f"generator in degree {n} has wrong length")
        prev = by_degree.get(n)
        by_degree[n] = col if prev is None else hstack(prev, col)
    return by_degree


def subcoalgebra_generated_by(c: Coalgebra, vectors) -> Subcoalgebra:
    """The smallest subcoalgebra containing the given vectors.

    Iterates closure under the differential and under both tensor legs of the
    comultiplication (d first, then the legs, degrees ascending) until the
    dimensions stop growing.  For a vector v with Delta(v) in block
    C_p (x) C_q, the left legs are the columns and the right legs the rows of
    the block matrix; any subcoalgebra containing v must contain both, and the
    fixed point satisfies Delta(S) in (S (x) C) & (C (x) S) = S (x) S.
    """
    fld = c.field
    carrier = c.carrier
    layout = TensorLayout(carrier, carrier)
    span = {}
    for n, mat in _normalize_generators(c, vectors).items():
        if mat.rows != c.dim(n):
            raise ValueError(f"generators in degree {n} have wrong ambient dimension")
        red = reduced_basis(mat)
        if red.cols:
            span[n] = red
    while True:
        before = {n: b.cols for n, b in span.items()}
        # d-closure
        for n in sorted(span):
            img = carrier.d(n) * span[n]
            if img.is_zero():
                continue
            prev = span.get(n - 1, Matrix.zero(fld, carrier.dim(n - 1), 0))
            span[n - 1] = subspace_sum(prev, img)
        # comultiplication-leg closure
        for n in sorted(span):
            w = c.delta.component(n) * span[n]
            if w.is_zero():
                continue
            for (p, q, off, dx, dy) in layout.blocks.get(n, ()):
                left = {}
                right = {}
                for (flat, col), v in w.entries.items():
                    if off <= flat < off + dx * dy:
                        rel = flat - off
                        i, j = rel // dy, rel % dy
                        left[(i, col * dy + j)] = v
                        right[(j, col * dx + i)] = v
                if left:
                    lmat = Matrix(fld, dx, span[n].cols * dy, left)
                    prev = span.get(p, Matrix.zero(fld, dx, 0))
                    span[p] = subspace_sum(prev, lmat)
                if right:
                    rmat = Matrix(fld, dy, span[n].cols * dx, right)
                    prev = span.get(q, Matrix.zero(fld, dy, 0))
                    span[q] = subspace_sum(prev, rmat)
        span = {n: b for n, b in span.items() if b.cols}
        after = {n: b.cols for n, b in span.items()}
        if after == before:
            break
    return Subcoalgebra(c, span)


def decompose_into_subcoalgebras(c: Coalgebra):
    """One generated subcoalgebra per ambient basis vector; they cover c."""
    fld = c.field
    pieces = []
    for n in c.carrier.degrees():
        for i in range(c.dim(n)):
            col = Matrix(fld, c.dim(n), 1, {(i, 0): fld.one})
            pieces.append(subcoalgebra_generated_by(c, {n: col}))
    if pieces:
        total = pieces[0]
        for piece in pieces[1:]:
            total = union_subcoalgebras(total, piece)
        assert total.is_whole(), "generated subcoalgebras fail to cover the ambient"
    else:
        assert c.carrier.is_zero_object()
    return pieces


# -- the tensor-intersection identity --------------------------------------------


def verify_tensor_intersection(a_incl: ChainMap, b_incl: ChainMap) -> bool:
    """Check A (x) B = (A (x) Y) & (X (x) B) inside X (x) Y, degreewise.

    a_incl: A >-> X and b_incl: B >-> Y must be monomorphisms; both sides are
    computed as subspaces of the tensor product and compared exactly.
    """
    from .complexes import is_mono
    from .tensors import tensor

    if not is_mono(a_incl) or not is_mono(b_incl):
        raise ValueError("tensor-intersection check needs monomorphisms")
    x, y = a_incl.target, b_incl.target
    both = tensor_map(a_incl, b_incl)
    left = tensor_map(a_incl, ChainMap.identity(y))
    right = tensor_map(ChainMap.identity(x), b_incl)
    total = tensor(x, y)
    for n in total.degrees():
        lhs = reduced_basis(both.component(n))
        cap = subspace_intersection(
            reduced_basis(left.component(n)),
            reduced_basis(right.component(n)),
        )
        if lhs != cap:
            return False
    return True


# -- lift extension over subcoalgebras --------------------------------------------


@dataclass
class LiftExtensionResult:
    """Outcome of the finite lift-extension loop."""

    lift: Optional[CoalgebraMap]
    iterations: int
    stuck_generator: Optional[tuple] = None
    stuck_subproblem: Optional[LiftingProblem] = None
    stuck_outcome: Optional[str] = None

    @property
    def success(self) -> bool:
        return self.lift is not None


def coalgebra_lift_candidate(problem: LiftingProblem):
    """Chain-level candidate filler for a square of comonoid maps.

    Solves the linear system (chain map + both triangles) and then verifies
    the quadratic comonoid-map condition on the candidate.  Outcomes:
    ("ok", CoalgebraMap), ("not-coalgebraic", ChainMap), ("unsolvable", None).
    """
    b_coalg = problem.left.target
    x_coalg = problem.right.source
    system = LinearSystem(b_coalg.field)
    system.add_unknown("l", b_coalg.carrier, x_coalg.carrier)
    system.add_chain_constraints("l")
    system.add_precompose_constraint("l", problem.left.chain, problem.top.chain)
    system.add_postcompose_constraint("l", problem.right.chain, problem.bottom.chain)
    sol = system.solve_maps()
    if sol is None:
        return ("unsolvable", None)
    candidate = sol["l"]
    try:
        return ("ok", CoalgebraMap(b_coalg, x_coalg, candidate, check=True))
    except ValueError:
        return ("not-coalgebraic", candidate)


def linear_coalgebra_oracle(problem: LiftingProblem):
    status, filler = coalgebra_lift_candidate(problem)
    return filler if status == "ok" else None


def extend_lift_over_subcoalgebras(
    problem: LiftingProblem,
    fibration_oracle: Callable[[LiftingProblem], Optional[CoalgebraMap]],
) -> LiftExtensionResult:
    """Grow a lift over generated subcoalgebras until it is total (or stuck).

    The square's left leg must be a mono of comonoids i: C -> D.  Starting
    from the image of i with the transported top map, each step picks the
    first ambient basis vector of D outside the current subcoalgebra E, forms
    the subcoalgebra B it generates, asks the oracle for a filler of the
    (E & B -> B) sub-square, and glues along the union.  Dimensions grow
    strictly, so at most dim(D) steps occur.
    """
    from .complexes import is_mono

    i = problem.left
    if not is_mono(i.chain):
        raise ValueError("left leg must be a monomorphism of comonoids")
    d_coalg = i.target
    e_epi, current = image_subcoalgebra(i)
    # the epi onto the image is an iso here; transport the top map along it
    inv_comps = {}
    for n in current.coalgebra.carrier.degrees():
        inv_comps[n] = inverse(e_epi.chain.component(n))
    e_inv = CoalgebraMap(
        current.coalgebra, i.source,
        ChainMap(current.coalgebra.carrier, i.source.carrier, inv_comps, check=True),
        check=True,
    )
    partial = problem.top @ e_inv
    iterations = 0
    while True:
        if current.is_whole():
            incl_inv = {}
            for n in current.coalgebra.carrier.degrees():
                incl_inv[n] = inverse(current.inclusion.chain.component(n))
            coords = CoalgebraMap(
                d_coalg, current.coalgebra,
                ChainMap(d_coalg.carrier, current.coalgebra.carrier, incl_inv, check=True),
                check=True,
            )
            total = partial @ coords
            if not problem.filler_is_valid(total):
                raise RuntimeError("assembled lift fails the lifting triangles")
            return LiftExtensionResult(lift=total, iterations=iterations)
        generator = None
        for n in d_coalg.carrier.degrees():
            for idx in range(d_coalg.dim(n)):
                col = Matrix(d_coalg.field, d_coalg.dim(n), 1, {(idx, 0): d_coalg.field.one})
                if not current.contains_vector(n, col):
                    generator = (n, idx, col)
                    break
            if generator is not None:
                break
        assert generator is not None
        n, idx, col = generator
        grown = subcoalgebra_generated_by(d_coalg, {n: col})
        overlap = intersect_subcoalgebras(current, grown)
        into_grown = inclusion_between(overlap, grown)
        into_current = inclusion_between(overlap, current)
        sub_problem = LiftingProblem(
            left=into_grown,
            right=problem.right,
            top=partial @ into_current,
            bottom=problem.bottom @ grown.inclusion,
        )
        filler = fibration_oracle(sub_problem)
        iterations += 1
        if filler is None:
            return LiftExtensionResult(
                lift=None,
                iterations=iterations,
                stuck_generator=(n, idx),
                stuck_subproblem=sub_problem,
                stuck_outcome="oracle could not solve the generated sub-square",
            )
        if not sub_problem.filler_is_valid(filler):
            raise ValueError("oracle returned an invalid filler")
        union = union_subcoalgebras(current, grown)
        partial = glue_on_union(current, grown, union, partial, filler)
        current = union
