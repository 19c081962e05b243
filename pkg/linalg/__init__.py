"""
fdhom Exact Linear Algebra

Prime fields and rationals, RREF-based rank, kernel and solve, and RREF
subspaces. Every other package does its linear algebra through here.
"""

__version__ = "0.1.0"

from linalg.field import Field
from linalg.matrix import (
    Subspace,
    kernel,
    quotient_basis,
    rank,
    rref,
    solve_right,
)

__all__ = [
    'Field',
    'Subspace',
    'kernel',
    'quotient_basis',
    'rank',
    'rref',
    'solve_right',
]
