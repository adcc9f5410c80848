"""Exact-arithmetic chain complexes, dg coalgebras, comodules, and the
executable verification harness for their homotopical structure."""

from .fields import Field
from .complexes import ChainComplex, ChainMap, GradedSpace

__all__ = ["Field", "ChainComplex", "ChainMap", "GradedSpace"]
__version__ = "0.1.0"
