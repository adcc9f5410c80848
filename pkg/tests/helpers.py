"""Shared constructions for the test suite."""

import random
from fractions import Fraction

from comodel.complexes import ChainComplex, ChainMap, unit_complex
from comodel.fields import QQ
from comodel.matrices import Matrix


def interval_complex(field=QQ, non_negative=False):
    """k.a (+) k.b in degree 0, k.e in degree 1, with de = b - a."""
    d1 = Matrix.from_rows(field, [[-1], [1]])
    return ChainComplex(field, {0: 2, 1: 1}, {1: d1}, non_negative=non_negative)


def interval_projection(field=QQ):
    """p: interval -> I with a, b -> 1 and e -> 0."""
    x = interval_complex(field)
    unit = unit_complex(field)
    return ChainMap(x, unit, {0: Matrix.from_rows(field, [[1, 1]])})


def interval_end(field=QQ, end=0):
    """i_0 (end=0) or i_1 (end=1): I -> interval."""
    x = interval_complex(field)
    unit = unit_complex(field)
    col = [[1], [0]] if end == 0 else [[0], [1]]
    return ChainMap(unit, x, {0: Matrix.from_rows(field, col)})


def random_scalar(field, rng):
    if field.kind == "rationals":
        return Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return rng.randrange(field.characteristic)
