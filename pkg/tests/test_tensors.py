import random

import pytest

from comodel.complexes import ChainMap, homology, is_iso, is_mono, unit_complex
from comodel.fields import GF5, QQ
from comodel.matrices import Matrix
from comodel.randomgen import GeneratorConfig, random_complex, random_mono
from comodel.tensors import (
    TensorLayout,
    associator,
    associator_inv,
    left_unitor,
    left_unitor_inv,
    right_unitor,
    right_unitor_inv,
    symmetry,
    tensor,
    tensor_map,
)

from helpers import interval_complex

CFG = GeneratorConfig(max_dim=2, min_degree=-1, max_degree=2)


def test_tensor_dims_interval():
    x = interval_complex()
    xx = tensor(x, x)
    assert xx.space.dims == {0: 4, 1: 4, 2: 1}


def test_koszul_differential_on_e_tensor_e():
    # basis in degree 1 of Cyl (x) Cyl: (0,a,e), (0,b,e), (1,e,a), (1,e,b)
    # d(e (x) e) = de (x) e - e (x) de = (b - a) (x) e - e (x) (b - a)
    x = interval_complex()
    xx = tensor(x, x)
    d2 = xx.d(2)
    col = [d2[i, 0] for i in range(4)]
    assert col == [-1, 1, 1, -1]


def test_tensor_dd_zero_random():
    rng = random.Random(3)
    for fld in (QQ, GF5):
        for _ in range(15):
            x = random_complex(fld, rng, CFG)
            y = random_complex(fld, rng, CFG)
            xy = tensor(x, y)  # constructor enforces d.d = 0
            assert sum(xy.space.dims.values()) == sum(
                x.dim(p) * y.dim(q) for p in x.degrees() for q in y.degrees()
            )


def test_unitors_are_identity_matrices():
    x = interval_complex()
    lu = left_unitor(x)
    ru = right_unitor(x)
    for n in x.degrees():
        assert lu.component(n) == Matrix.identity(QQ, x.dim(n))
        assert ru.component(n) == Matrix.identity(QQ, x.dim(n))
    assert lu.first_chain_defect() is None
    assert ru.first_chain_defect() is None
    assert lu @ left_unitor_inv(x) == ChainMap.identity(x)
    assert right_unitor_inv(x) @ ru == ChainMap.identity(tensor(x, unit_complex(QQ)))


def test_symmetry_involution_and_chain():
    rng = random.Random(9)
    for _ in range(10):
        x = random_complex(QQ, rng, CFG)
        y = random_complex(QQ, rng, CFG)
        s = symmetry(x, y)
        s_back = symmetry(y, x)
        assert s.first_chain_defect() is None
        assert s_back @ s == ChainMap.identity(tensor(x, y))


def test_associator_is_chain_iso():
    rng = random.Random(17)
    for _ in range(6):
        x = random_complex(QQ, rng, CFG)
        y = random_complex(QQ, rng, CFG)
        z = random_complex(QQ, rng, CFG)
        a = associator(x, y, z)
        assert a.first_chain_defect() is None
        assert is_iso(a)
        assert associator_inv(x, y, z) @ a == ChainMap.identity(tensor(tensor(x, y), z))


def test_tensor_map_functorial():
    rng = random.Random(21)
    from comodel.randomgen import random_chain_map

    for _ in range(8):
        x, y, z = (random_complex(QQ, rng, CFG) for _ in range(3))
        f = random_chain_map(x, y, rng, CFG)
        g = random_chain_map(y, z, rng, CFG)
        w = random_complex(QQ, rng, CFG)
        idw = ChainMap.identity(w)
        lhs = tensor_map(g @ f, idw)
        rhs = tensor_map(g, idw) @ tensor_map(f, idw)
        assert lhs == rhs
        assert tensor_map(f, idw).first_chain_defect() is None


def test_tensor_exactness_mono():
    rng = random.Random(33)
    for _ in range(10):
        m = random_mono(QQ, rng, CFG)
        w = random_complex(QQ, rng, CFG)
        assert is_mono(tensor_map(m, ChainMap.identity(w)))
        assert is_mono(tensor_map(ChainMap.identity(w), m))


def test_tensor_field_mismatch():
    x = interval_complex(QQ)
    y = interval_complex(GF5)
    with pytest.raises(ValueError):
        tensor(x, y)


def test_kunneth_interval_tensor():
    # interval is homotopy equivalent to the unit, so H(Cyl (x) Cyl) = H(Cyl)
    x = interval_complex()
    assert homology(tensor(x, x)) == {0: 1}


def test_layout_decode_round_trip():
    x = interval_complex()
    layout = TensorLayout(x, x)
    for n in (0, 1, 2):
        for (p, q, i, j, flat) in layout.basis(n):
            assert layout.decode(n, flat) == (p, q, i, j)
            assert layout.flat(n, p, i, j) == flat
