"""
Hochschild cohomology as Ext over the enveloping algebra.

HH^n(Λ) = Ext^n_{Λ^e}(Λ, Λ), computed on the minimal resolution of the
regular bimodule. The center is computed independently as a check on HH^0.
"""

import logging
from typing import Dict, List

from algebras.algebra import Algebra
from homology.ext import ExtGroup, ext
from homology.resolution import MinimalResolution, minimal_resolution
from linalg import matrix as mx
from linalg.matrix import Subspace
from reps.rep import Rep
from reps.tensor import regular_bimodule

logger = logging.getLogger(__name__)


def bimodule(a: Algebra) -> Rep:
    return regular_bimodule(a)


def bimodule_resolution(a: Algebra) -> MinimalResolution:
    """The minimal resolution of Λ over Λ^e."""
    return minimal_resolution(regular_bimodule(a))


def hh(a: Algebra, n: int) -> ExtGroup:
    """
    HH^n(a).

    Raises:
        ValueError: If n is negative
    """
    if n < 0:
        raise ValueError(f"Hochschild degree must be nonnegative, got {n}")
    b = regular_bimodule(a)
    return ext(b, b, n)


def hh_dims(a: Algebra, upto: int) -> List[int]:
    dims = [hh(a, n).dim for n in range(upto + 1)]
    logger.debug(f"HH^0..{upto}({a.name}) dims {dims}")
    return dims


def center(a: Algebra) -> Subspace:
    """
    Z(a) in the path basis, solving x·g = g·x for idempotents and arrows g.

    The idempotents and arrows generate a, so they are enough.
    """
    field = a.field
    generators = [a.idempotent(v) for v in range(a.vertex_count)]
    generators += [a.arrow_element(k) for k in range(a.arrow_count)]
    dod: Dict[int, Dict[int, object]] = {}
    for g_pos, g in enumerate(generators):
        for j in range(a.dim):
            diff: Dict[int, object] = {}
            for k, c in a.product(j, g).items():
                diff[k] = diff.get(k, field.zero) + c
            for k, c in a.product(g, j).items():
                diff[k] = diff.get(k, field.zero) - c
            for k, c in diff.items():
                if c:
                    dod.setdefault(g_pos * a.dim + k, {})[j] = c
    return mx.kernel_sparse(dod, len(generators) * a.dim, a.dim, field)


def center_dim(a: Algebra) -> int:
    return center(a).dim
