import random

import pytest

from comodel.coalgebras import (
    CoalgebraMap,
    check_comonoid,
    grouplike_coalgebra,
    interval_coalgebra,
    skew_primitive_coalgebra,
    tensor_comonoid,
    unit_coalgebra,
)
from comodel.complexes import ChainMap, is_epi, is_mono
from comodel.fields import GF2, GF5, QQ
from comodel.lifting import LiftingProblem
from comodel.matrices import Matrix, subspace_equal
from comodel.subcoalgebras import (
    ClosureError,
    Subcoalgebra,
    decompose_into_subcoalgebras,
    extend_lift_over_subcoalgebras,
    full_subcoalgebra,
    glue_on_union,
    image_subcoalgebra,
    inclusion_between,
    intersect_subcoalgebras,
    linear_coalgebra_oracle,
    coalgebra_lift_candidate,
    subcoalgebra_generated_by,
    union_subcoalgebras,
    verify_tensor_intersection,
)


def span_a(cyl):
    return Subcoalgebra(cyl.object, {0: Matrix(QQ, 2, 1, {(0, 0): QQ.one})})


def span_b(cyl):
    return Subcoalgebra(cyl.object, {0: Matrix(QQ, 2, 1, {(1, 0): QQ.one})})


def test_subcoalgebra_construction_and_closure():
    cyl = interval_coalgebra(QQ)
    sa = span_a(cyl)
    assert sa.total_dim == 1
    assert check_comonoid(sa.coalgebra).passed
    # span(e) is not d-closed
    with pytest.raises(ClosureError):
        Subcoalgebra(cyl.object, {1: Matrix(QQ, 1, 1, {(0, 0): QQ.one})})
    # span(a, e) is d-closed but not Delta-closed
    with pytest.raises(ClosureError):
        Subcoalgebra(
            cyl.object,
            {0: Matrix(QQ, 2, 2, {(0, 0): QQ.one, (1, 1): QQ.one}).select_columns([0]),
             1: Matrix(QQ, 1, 1, {(0, 0): QQ.one})},
        )


def test_span_a_e_fails_for_the_right_reason():
    # d(e) = b - a needs b, so {a, e} is not even d-closed; {a, b-a... } etc.
    cyl = interval_coalgebra(QQ)
    with pytest.raises(ClosureError):
        Subcoalgebra(
            cyl.object,
            {0: Matrix(QQ, 2, 1, {(0, 0): QQ.one}), 1: Matrix(QQ, 1, 1, {(0, 0): QQ.one})},
        )


def test_full_subcoalgebra():
    cyl = interval_coalgebra(QQ)
    full = full_subcoalgebra(cyl.object)
    assert full.is_whole()
    assert full.coalgebra.carrier.space.dims == cyl.object.carrier.space.dims


def test_image_of_mono_is_source():
    cyl = interval_coalgebra(QQ)
    e, sub = image_subcoalgebra(cyl.i0)
    assert sub.total_dim == 1
    assert is_epi(e.chain) and is_mono(e.chain)
    assert sub.inclusion @ e == cyl.i0


def test_image_of_projection_is_unit():
    cyl = interval_coalgebra(QQ)
    e, sub = image_subcoalgebra(cyl.p)
    assert sub.is_whole()  # image of an epi is the whole unit coalgebra
    assert sub.ambient == cyl.base


def test_image_of_collapse():
    # interval -> interval sending e -> 0, a, b -> a is a coalgebra map with
    # image the span of a
    cyl = interval_coalgebra(QQ)
    carrier = cyl.object.carrier
    chain = ChainMap(carrier, carrier, {0: Matrix.from_rows(QQ, [[1, 1], [0, 0]])})
    f = CoalgebraMap(cyl.object, cyl.object, chain, check=True)
    e, sub = image_subcoalgebra(f)
    assert sub.basis[0] == Matrix.from_rows(QQ, [[1], [0]])
    assert list(sub.basis) == [0]
    assert check_comonoid(sub.coalgebra).passed


def test_intersection_examples():
    cyl = interval_coalgebra(QQ)
    sa, sb = span_a(cyl), span_b(cyl)
    assert intersect_subcoalgebras(sa, sa) == sa
    cap = intersect_subcoalgebras(sa, sb)
    assert cap.total_dim == 0
    assert cap.coalgebra.carrier.is_zero_object()


def test_union_examples():
    cyl = interval_coalgebra(QQ)
    sa, sb = span_a(cyl), span_b(cyl)
    assert union_subcoalgebras(sa, sa) == sa
    cup = union_subcoalgebras(sa, sb)
    assert cup.total_dim == 2
    assert cup.dim(0) == 2 and cup.dim(1) == 0
    assert check_comonoid(cup.coalgebra).passed


def test_lattice_dimension_formula():
    rng = random.Random(71)
    amb = tensor_comonoid(interval_coalgebra(QQ).object, grouplike_coalgebra(QQ, 2))
    for _ in range(15):
        d = _random_subcoalgebra(amb, rng)
        e = _random_subcoalgebra(amb, rng)
        cap = intersect_subcoalgebras(d, e)
        cup = union_subcoalgebras(d, e)
        assert cup.contains(d) and cup.contains(e)
        assert d.contains(cap) and e.contains(cap)
        for n in set(d.basis) | set(e.basis):
            assert cup.dim(n) == d.dim(n) + e.dim(n) - cap.dim(n)


def _random_subcoalgebra(amb, rng):
    vectors = {}
    for n in amb.carrier.degrees():
        cols = {}
        for j in range(rng.randint(0, 2)):
            for i in range(amb.dim(n)):
                v = rng.randint(-2, 2)
                if v:
                    cols[(i, j)] = QQ.of_int(v)
        if cols:
            vectors[n] = Matrix(QQ, amb.dim(n), max(j for (_, j) in cols) + 1, cols)
    return subcoalgebra_generated_by(amb, vectors)


def test_generated_by_examples():
    cyl = interval_coalgebra(QQ)
    amb = cyl.object
    one = QQ.one
    gen_a = subcoalgebra_generated_by(amb, {0: Matrix(QQ, 2, 1, {(0, 0): one})})
    assert gen_a == span_a(cyl)
    gen_e = subcoalgebra_generated_by(amb, {1: Matrix(QQ, 1, 1, {(0, 0): one})})
    assert gen_e.is_whole()
    gen_nothing = subcoalgebra_generated_by(amb, {})
    assert gen_nothing.total_dim == 0


def test_generated_by_monotone_idempotent():
    amb = skew_primitive_coalgebra(QQ)
    one = QQ.one
    g1 = subcoalgebra_generated_by(amb, {0: Matrix(QQ, 3, 1, {(0, 0): one})})
    g2 = subcoalgebra_generated_by(amb, {0: Matrix(QQ, 3, 2, {(0, 0): one, (2, 1): one})})
    assert g2.contains(g1)
    # generators are contained
    assert g1.contains_vector(0, Matrix(QQ, 3, 1, {(0, 0): one}))
    # idempotent: regenerating from the basis returns the same subcoalgebra
    regen = subcoalgebra_generated_by(amb, dict(g2.basis))
    assert regen == g2
    # x generates everything: Delta(x) = g.x + x.h pulls in g and h
    gx = subcoalgebra_generated_by(amb, {0: Matrix(QQ, 3, 1, {(2, 0): one})})
    assert gx.is_whole()


def test_decompose_examples():
    unit = unit_coalgebra(QQ)
    pieces = decompose_into_subcoalgebras(unit)
    assert len(pieces) == 1 and pieces[0].is_whole()
    cyl = interval_coalgebra(QQ)
    pieces = decompose_into_subcoalgebras(cyl.object)
    assert len(pieces) == 3
    total = pieces[0]
    for piece in pieces[1:]:
        assert check_comonoid(piece.coalgebra).passed
        total = union_subcoalgebras(total, piece)
    assert total.is_whole()


def test_inclusion_between():
    cyl = interval_coalgebra(QQ)
    sa = span_a(cyl)
    full = full_subcoalgebra(cyl.object)
    inc = inclusion_between(sa, full)
    assert is_mono(inc.chain)
    with pytest.raises(ValueError):
        inclusion_between(full, sa)


def test_glue_on_union():
    cyl = interval_coalgebra(QQ)
    sa, sb = span_a(cyl), span_b(cyl)
    cup = union_subcoalgebras(sa, sb)
    glued = glue_on_union(sa, sb, cup, sa.inclusion, sb.inclusion)
    assert glued == cup.inclusion


def test_tensor_intersection_trivial_cases():
    from comodel.complexes import zero_complex

    x = interval_coalgebra(QQ).object.carrier
    idx = ChainMap.identity(x)
    assert verify_tensor_intersection(idx, idx)
    zero_incl = ChainMap.zero(zero_complex(QQ), x)
    assert verify_tensor_intersection(zero_incl, idx)


def test_tensor_intersection_random():
    from comodel.randomgen import GeneratorConfig, random_mono

    cfg = GeneratorConfig(max_dim=2, min_degree=-1, max_degree=2)
    rng = random.Random(77)
    for fld in (GF5, QQ):
        for _ in range(25):
            a = random_mono(fld, rng, cfg)
            b = random_mono(fld, rng, cfg)
            assert verify_tensor_intersection(a, b)


def test_lift_extension_identity_left_leg():
    cyl = interval_coalgebra(QQ)
    amb = cyl.object
    ident = CoalgebraMap.identity(amb)
    problem = LiftingProblem(left=ident, right=cyl.p, top=ident, bottom=cyl.p)
    result = extend_lift_over_subcoalgebras(problem, linear_coalgebra_oracle)
    assert result.success
    assert result.lift == ident


def test_lift_extension_unit_into_interval():
    # left leg i0: I -> interval, right leg an iso (identity), bottom arbitrary
    cyl = interval_coalgebra(QQ)
    problem = LiftingProblem(
        left=cyl.i0,
        right=CoalgebraMap.identity(cyl.base),
        top=CoalgebraMap.identity(cyl.base),
        bottom=cyl.p,
    )
    result = extend_lift_over_subcoalgebras(problem, linear_coalgebra_oracle)
    assert result.success
    assert result.iterations <= cyl.object.total_dim
    assert result.lift @ cyl.i0 == CoalgebraMap.identity(cyl.base)


def test_lift_extension_failing_oracle():
    cyl = interval_coalgebra(QQ)
    problem = LiftingProblem(
        left=cyl.i0,
        right=CoalgebraMap.identity(cyl.base),
        top=CoalgebraMap.identity(cyl.base),
        bottom=cyl.p,
    )
    result = extend_lift_over_subcoalgebras(problem, lambda sq: None)
    assert not result.success
    assert result.stuck_generator is not None
    assert result.stuck_subproblem is not None


def test_lift_extension_unsolvable_square():
    # right leg span(a) >-> interval cannot lift the identity of the interval
    cyl = interval_coalgebra(QQ)
    sa = span_a(cyl)
    from comodel.coalgebras import zero_coalgebra

    zero = zero_coalgebra(QQ)
    zero_map = CoalgebraMap(zero, sa.coalgebra, ChainMap.zero(zero.carrier, sa.coalgebra.carrier), check=False)
    problem = LiftingProblem(
        left=CoalgebraMap(zero, cyl.object, ChainMap.zero(zero.carrier, cyl.object.carrier), check=False),
        right=sa.inclusion,
        top=zero_map,
        bottom=CoalgebraMap.identity(cyl.object),
    )
    result = extend_lift_over_subcoalgebras(problem, linear_coalgebra_oracle)
    assert not result.success
    # span(a) itself lifts; the first stuck generator is b
    assert result.stuck_generator == (0, 1)


def test_candidate_outcomes():
    cyl = interval_coalgebra(QQ)
    ident = CoalgebraMap.identity(cyl.object)
    problem = LiftingProblem(left=ident, right=ident, top=ident, bottom=ident)
    status, filler = coalgebra_lift_candidate(problem)
    assert status == "ok"
    assert filler == ident
