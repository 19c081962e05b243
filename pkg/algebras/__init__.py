"""
fdhom Bound Quiver Algebras

Path algebras with admissible relations, completed to a rewriting system with
a path normal-form basis, plus opposites, tensor and enveloping algebras.
"""

__version__ = "0.1.0"

from algebras.algebra import (
    Algebra,
    Relation,
    build_algebra,
    enveloping,
    is_associative,
    opposite,
    point_algebra,
    tensor_algebra,
    to_opposite,
)
from algebras.quiver import Quiver

__all__ = [
    'Algebra',
    'Quiver',
    'Relation',
    'build_algebra',
    'enveloping',
    'is_associative',
    'opposite',
    'point_algebra',
    'tensor_algebra',
    'to_opposite',
]
