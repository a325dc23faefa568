"""Finite set-theoretic solutions of the braid equation and their algebraic structures."""

from .errors import YBXError
from .finset import EndoMap, Group, OpTable
from .solution import Solution, classify_solution, verify_braid
from .shelf import classify_shelf, derived_solution
from .brace import SkewBrace

__version__ = "0.1.0"

__all__ = [
    "YBXError",
    "EndoMap",
    "Group",
    "OpTable",
    "Solution",
    "classify_solution",
    "verify_braid",
    "classify_shelf",
    "derived_solution",
    "SkewBrace",
]
