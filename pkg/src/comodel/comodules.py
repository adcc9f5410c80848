"""Right comodules over a coalgebra: cofree adjunction, factorization, lifting.

The weak factorization system is fully constructive here: every comodule map
f: M -> N factors as a mono j into N (+) (X (x) C) followed by the projection
p1, where X is the cone on the identity of the underlying complex of M.  The
cone's explicit contracting homotopy then produces diagonal fillers for any
square whose right leg is such a p1, and the retract argument exhibits any
map with that lifting property as a domain retract of a p1.

Model classes delegate to the underlying chain map: a comodule map is a weak
equivalence (resp. cofibration) iff its underlying map is a quasi-iso (resp.
mono).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .abelian import ConeData, cone_of_identity, extend_along_split_mono
from .checks import StructureReport, equality_check
from .coalgebras import Coalgebra
from .complexes import ChainComplex, ChainMap, direct_sum, is_mono, is_quasi_iso, zero_complex
from .lifting import LiftingProblem, LinearSystem
from .randomgen import GeneratorConfig, random_combination, trial_rng
from .tensors import associator_inv, right_unitor, tensor, tensor_map


class Comodule:
    """A right comodule: carrier M with coaction M -> M (x) C."""

    __slots__ = ("over", "carrier", "rho")

    def __init__(self, over: Coalgebra, carrier: ChainComplex, rho: ChainMap, check: bool = True):
        if carrier.field != over.field:
            raise ValueError("comodule over a coalgebra of a different field")
        if rho.source != carrier or rho.target != tensor(carrier, over.carrier):
            raise ValueError("coaction must map the carrier to carrier (x) coalgebra")
        self.over = over
        self.carrier = carrier
        self.rho = rho
        if check:
            report = check_comodule(self)
            bad = report.first_failure()
            if bad is not None:
                raise ValueError(f"not a comodule: {bad.describe()}")

    @property
    def field(self):
        return self.carrier.field

    def dim(self, n: int) -> int:
        return self.carrier.dim(n)

    @property
    def total_dim(self) -> int:
        return self.carrier.total_dim

    def __eq__(self, other):
        return (
            isinstance(other, Comodule)
            and self.over == other.over
            and self.carrier == other.carrier
            and self.rho == other.rho
        )

    def __hash__(self):
        return hash((self.over, self.carrier, self.rho))

    def __repr__(self):
        return f"Comodule(dims={self.carrier.space.dims})"


def check_comodule(m: Comodule) -> StructureReport:
    """Coassociativity and counit law for the coaction."""
    carrier, c = m.carrier, m.over.carrier
    ident = ChainMap.identity(carrier)
    report = StructureReport("comodule")
    lhs = associator_inv(carrier, c, c) @ tensor_map(ident, m.over.delta) @ m.rho
    rhs = tensor_map(m.rho, ChainMap.identity(c)) @ m.rho
    report.checks.append(equality_check("coaction-coassociativity", lhs, rhs))
    counit_side = right_unitor(carrier) @ tensor_map(ident, m.over.counit) @ m.rho
    report.checks.append(equality_check("coaction-counit", counit_side, ident))
    return report


class ComoduleMap:
    """A chain map commuting with the coactions (over a fixed coalgebra)."""

    __slots__ = ("source", "target", "chain")

    def __init__(self, source: Comodule, target: Comodule, chain: ChainMap, check: bool = True):
        if source.over != target.over:
            raise ValueError("comodule maps must live over one coalgebra")
        if chain.source != source.carrier or chain.target != target.carrier:
            raise ValueError("underlying chain map has wrong endpoints")
        self.source = source
        self.target = target
        self.chain = chain
        if check:
            report = check_comodule_map(self)
            bad = report.first_failure()
            if bad is not None:
                raise ValueError(f"not a comodule map: {bad.describe()}")

    @property
    def field(self):
        return self.source.field

    @property
    def over(self) -> Coalgebra:
        return self.source.over

    @classmethod
    def identity(cls, m: Comodule) -> "ComoduleMap":
        return cls(m, m, ChainMap.identity(m.carrier), check=False)

    @classmethod
    def zero(cls, source: Comodule, target: Comodule) -> "ComoduleMap":
        return cls(source, target, ChainMap.zero(source.carrier, target.carrier), check=False)

    def __matmul__(self, other: "ComoduleMap") -> "ComoduleMap":
        if other.target != self.source:
            raise ValueError("composition mismatch")
        return ComoduleMap(other.source, self.target, self.chain @ other.chain, check=False)

    def __add__(self, other: "ComoduleMap") -> "ComoduleMap":
        if self.source != other.source or self.target != other.target:
            raise ValueError("sum of maps with different endpoints")
        return ComoduleMap(self.source, self.target, self.chain + other.chain, check=False)

    def scale(self, scalar) -> "ComoduleMap":
        return ComoduleMap(self.source, self.target, self.chain.scale(scalar), check=False)

    def __eq__(self, other):
        return (
            isinstance(other, ComoduleMap)
            and self.source == other.source
            and self.target == other.target
            and self.chain == other.chain
        )

    def __hash__(self):
        return hash((self.source, self.target, self.chain))

    def __repr__(self):
        return f"ComoduleMap({self.source!r} -> {self.target!r})"


def check_comodule_map(f: ComoduleMap) -> StructureReport:
    report = StructureReport("comodule map")
    lhs = f.target.rho @ f.chain
    rhs = tensor_map(f.chain, ChainMap.identity(f.over.carrier)) @ f.source.rho
    report.checks.append(equality_check("coaction-compatibility", lhs, rhs))
    return report


# -- model classes (delegating to the underlying chain map) --------------------


def is_weak_equivalence(f: ComoduleMap) -> bool:
    return is_quasi_iso(f.chain)


def is_cofibration(f: ComoduleMap) -> bool:
    return is_mono(f.chain)


def is_trivial_cofibration(f: ComoduleMap) -> bool:
    return is_mono(f.chain) and is_quasi_iso(f.chain)


# -- stock comodules ------------------------------------------------------------


def zero_comodule(c: Coalgebra) -> Comodule:
    z = zero_complex(c.field)
    return Comodule(c, z, ChainMap.zero(z, tensor(z, c.carrier)), check=False)


def comodule_over_self(c: Coalgebra) -> Comodule:
    """C as a right comodule over itself, with the comultiplication as coaction."""
    return Comodule(c, c.carrier, c.delta, check=False)


def cofree_comodule(x: ChainComplex, c: Coalgebra) -> Comodule:
    """X (x) C with coaction id_X (x) Delta (rebracketed)."""
    if x.field != c.field:
        raise ValueError("field mismatch")
    carrier = tensor(x, c.carrier)
    rho = associator_inv(x, c.carrier, c.carrier) @ tensor_map(ChainMap.identity(x), c.delta)
    return Comodule(c, carrier, rho, check=False)


def counit_of_adjunction(x: ChainComplex, c: Coalgebra) -> ChainMap:
    """The chain map X (x) C -> X given by id (x) counit, then the unitor."""
    return right_unitor(x) @ tensor_map(ChainMap.identity(x), c.counit)


def adjoint_transpose(m: Comodule, i: ChainMap) -> ComoduleMap:
    """The comodule map M -> X (x) C corresponding to i: U(M) -> X."""
    if i.source != m.carrier:
        raise ValueError("transpose input must start at the comodule carrier")
    cofree = cofree_comodule(i.target, m.over)
    chain = tensor_map(i, ChainMap.identity(m.over.carrier)) @ m.rho
    return ComoduleMap(m, cofree, chain, check=False)


def transpose_inverse(f: ComoduleMap, x: ChainComplex) -> ChainMap:
    """Recover i: U(M) -> X from a comodule map M -> X (x) C."""
    return counit_of_adjunction(x, f.over) @ f.chain


class ComoduleBiproduct:
    """N (+) P with blockwise coaction; product and coproduct in one."""

    __slots__ = ("object", "in1", "in2", "pr1", "pr2")

    def __init__(self, n: Comodule, p: Comodule):
        if n.over != p.over:
            raise ValueError("biproduct of comodules over different coalgebras")
        c = n.over
        ds = direct_sum(n.carrier, p.carrier)
        idc = ChainMap.identity(c.carrier)
        rho = (
            tensor_map(ds.in1, idc) @ n.rho @ ds.pr1
            + tensor_map(ds.in2, idc) @ p.rho @ ds.pr2
        )
        total = Comodule(c, ds.object, rho, check=False)
        self.object = total
        self.in1 = ComoduleMap(n, total, ds.in1, check=False)
        self.in2 = ComoduleMap(p, total, ds.in2, check=False)
        self.pr1 = ComoduleMap(total, n, ds.pr1, check=False)
        self.pr2 = ComoduleMap(total, p, ds.pr2, check=False)

    def pair(self, f: ComoduleMap, g: ComoduleMap) -> ComoduleMap:
        return self.in1 @ f + self.in2 @ g

    def copair(self, f: ComoduleMap, g: ComoduleMap) -> ComoduleMap:
        return f @ self.pr1 + g @ self.pr2


def biproduct(n: Comodule, p: Comodule) -> ComoduleBiproduct:
    return ComoduleBiproduct(n, p)


def restrict_comodule(m: Comodule, basis):
    """The subcomodule spanned by per-degree basis matrices, with inclusion.

    Raises ValueError if the subspace is not closed under d or the coaction.
    """
    from .complexes import restrict_differential
    from .matrices import Matrix, reduced_basis, solve

    fld = m.field
    canon = {}
    for n, mat in basis.items():
        red = reduced_basis(mat)
        if red.cols:
            canon[int(n)] = red
    full = {n: canon.get(n, Matrix.zero(fld, m.carrier.dim(n), 0)) for n in m.carrier.degrees()}
    diffs = restrict_differential(full, m.carrier)
    sub_carrier = ChainComplex(fld, {n: b.cols for n, b in canon.items()}, diffs,
                               non_negative=m.carrier.non_negative)
    incl = ChainMap(sub_carrier, m.carrier, canon, check=False)
    tensored = tensor_map(incl, ChainMap.identity(m.over.carrier))
    rho_incl = m.rho @ incl
    rho_comps = {}
    for n in sub_carrier.degrees():
        sol = solve(tensored.component(n), rho_incl.component(n))
        if sol is None:
            raise ValueError(f"coaction does not restrict in degree {n}")
        if not sol.is_zero():
            rho_comps[n] = sol
    rho = ChainMap(sub_carrier, tensored.source, rho_comps, check=False)
    sub = Comodule(m.over, sub_carrier, rho, check=True)
    return sub, ComoduleMap(sub, m, incl, check=True)


# -- the factorization -----------------------------------------------------------


@dataclass
class FactorizationResult:
    """f = p1 . j with j a cofibration and p1 a trivial fibration.

    middle = N (+) (X (x) C) where X is the cone on id of U(M); `cone` keeps
    the contracting homotopy that makes the lifting solver constructive.
    """

    middle: Comodule
    j: ComoduleMap
    p1: ComoduleMap
    cone: ConeData
    parts: ComoduleBiproduct
    transposed_inclusion: ComoduleMap

    def verify_contract(self, f: ComoduleMap) -> bool:
        return (
            self.p1 @ self.j == f
            and is_mono(self.j.chain)
            and is_quasi_iso(self.p1.chain)
        )


def factorize_comodule_map(f: ComoduleMap) -> FactorizationResult:
    """Factor f through N (+) (cone(id U(M)) (x) C)."""
    m, n = f.source, f.target
    cone = cone_of_identity(m.carrier)
    istar = adjoint_transpose(m, cone.inclusion)
    parts = biproduct(n, istar.target)
    j = parts.pair(f, istar)
    p1 = parts.pr1
    return FactorizationResult(
        middle=parts.object, j=j, p1=p1, cone=cone, parts=parts,
        transposed_inclusion=istar,
    )


def solve_comodule_lifting(problem: LiftingProblem, factorization: FactorizationResult) -> ComoduleMap:
    """Diagonal filler for a square with a comodule mono on the left and a
    factorization's p1 on the right.

    Reduces to extending a chain map into the contractible cone along the
    mono, via the explicit homotopy, then reassembles through the adjunction.
    Raises ValueError on malformed input; the extension itself always exists.
    """
    if problem.right != factorization.p1:
        raise ValueError("right leg must be the projection of the given factorization")
    k = problem.left
    if not isinstance(k, ComoduleMap) or not is_mono(k.chain):
        raise ValueError("left leg must be a monomorphism of comodules")
    top, bottom = problem.top, problem.bottom
    t2 = factorization.parts.pr2 @ top
    x = factorization.cone.object
    t0 = transpose_inverse(t2, x)
    extended = extend_along_split_mono(k.chain, t0, factorization.cone)
    l2 = adjoint_transpose(k.target, extended)
    assert l2 @ k == t2, "adjunction naturality failed"
    filler = factorization.parts.pair(bottom, l2)
    if not problem.filler_is_valid(filler):
        raise RuntimeError("constructed filler fails the lifting triangles")
    return filler


# -- sampled right lifting property ------------------------------------------------


def solve_filler_linear(problem: LiftingProblem) -> Optional[ComoduleMap]:
    """General diagonal-filler search by one sparse linear solve.

    Unknown l: B -> X subject to chain-map, coaction-compatibility and both
    triangle constraints; all linear.  Returns a filler or None.
    """
    b = problem.left.target
    x = problem.right.source
    system = LinearSystem(b.field)
    system.add_unknown("l", b.carrier, x.carrier)
    system.add_chain_constraints("l")
    system.add_coaction_constraints("l", b.rho, x.rho, b.over.carrier)
    system.add_precompose_constraint("l", problem.left.chain, problem.top.chain)
    system.add_postcompose_constraint("l", problem.right.chain, problem.bottom.chain)
    sol = system.solve_maps()
    if sol is None:
        return None
    filler = ComoduleMap(b, x, sol["l"], check=False)
    assert problem.filler_is_valid(filler)
    return filler


def sample_commuting_squares(i: ComoduleMap, p: ComoduleMap, rng, cfg: GeneratorConfig, count: int):
    """Random commuting squares (top, bottom) with left leg i and right leg p.

    The space of such squares is linear; we take a basis and sample random
    combinations.
    """
    a, b = i.source, i.target
    x, y = p.source, p.target
    system = LinearSystem(i.field)
    system.add_unknown("top", a.carrier, x.carrier)
    system.add_unknown("bottom", b.carrier, y.carrier)
    system.add_chain_constraints("top")
    system.add_chain_constraints("bottom")
    system.add_coaction_constraints("top", a.rho, x.rho, a.over.carrier)
    system.add_coaction_constraints("bottom", b.rho, y.rho, b.over.carrier)
    system.add_square_coupling("top", p.chain, "bottom", i.chain)
    _, basis = system.solution_space()
    squares = []
    for _ in range(count):
        top = ChainMap.zero(a.carrier, x.carrier)
        bottom = ChainMap.zero(b.carrier, y.carrier)
        for maps in basis:
            coeff = _small_scalar(i.field, rng, cfg)
            if coeff != 0:
                top = top + maps["top"].scale(coeff)
                bottom = bottom + maps["bottom"].scale(coeff)
        squares.append(
            LiftingProblem(
                left=i, right=p,
                top=ComoduleMap(a, x, top, check=False),
                bottom=ComoduleMap(b, y, bottom, check=False),
            )
        )
    return squares


def _small_scalar(fld, rng, cfg):
    from .randomgen import random_scalar

    return random_scalar(fld, rng, cfg)


@dataclass
class RlpReport:
    """Per-square outcomes of sampled right-lifting-property probes."""

    seed: int
    entries: list

    @property
    def all_found(self) -> bool:
        return all(e["found"] for e in self.entries)

    def to_json(self) -> dict:
        return {"seed": self.seed, "all_found": self.all_found, "entries": self.entries}


def has_rlp(p: ComoduleMap, sample, seed: int = 0, squares_per_mono: int = 2,
            cfg: GeneratorConfig = None) -> RlpReport:
    """Probe p's right lifting property against sampled squares.

    `sample` is a list of comodule monos; for each, random commuting squares
    are generated (seeded) and a filler is sought by the linear solver.
    """
    cfg = cfg or GeneratorConfig()
    entries = []
    for idx, mono in enumerate(sample):
        rng = trial_rng(seed, idx)
        squares = sample_commuting_squares(mono, p, rng, cfg, squares_per_mono)
        for sq_idx, square in enumerate(squares):
            filler = solve_filler_linear(square)
            entries.append({"mono": idx, "square": sq_idx, "found": filler is not None})
    return RlpReport(seed=seed, entries=entries)


# -- the retract argument ----------------------------------------------------------


@dataclass
class RetractWitness:
    """f exhibited as a domain retract of the projection p1 of its factorization.

    section r: middle -> M satisfies r . j = id_M and f . r = p1; together
    with p1 . j = f these are exactly the retract-diagram identities.
    """

    factorization: FactorizationResult
    section: Optional[ComoduleMap]

    @property
    def success(self) -> bool:
        return self.section is not None

    def verify(self, f: ComoduleMap) -> bool:
        if self.section is None:
            return False
        r, j, p1 = self.section, self.factorization.j, self.factorization.p1
        return r @ j == ComoduleMap.identity(f.source) and f @ r == p1 and p1 @ j == f


def retract_argument(f: ComoduleMap) -> RetractWitness:
    """Solve the (j vs f) square; an unsolvable square means f was not a
    trivial fibration."""
    fact = factorize_comodule_map(f)
    problem = LiftingProblem(
        left=fact.j, right=f,
        top=ComoduleMap.identity(f.source),
        bottom=fact.p1,
    )
    section = solve_filler_linear(problem)
    return RetractWitness(factorization=fact, section=section)
