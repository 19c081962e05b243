"""
Ext maps induced by the bimodules of an equivalence.

N ⊗_Λ - takes Ext_Λ to Ext_Σ and M ⊗_Σ - takes Ext_Σ back to Ext_Λ. On
Hochschild cohomology the two-sided functors N ⊗_Λ - ⊗_Λ M and
M ⊗_Σ - ⊗_Σ N take HH(Λ) to Ext over Σ^e and HH(Σ) to Ext over Λ^e. Each of
these is exact and takes projectives to projectives because M and N are
projective on both sides.
"""

import logging

from algebras.algebra import Algebra
from common.errors import AlgebraMismatch
from homology.ext import ExtClass
from homology.resolution import Functor
from homology.transfer import FunctorTransfer, left_tensor
from reps.rep import Hom, Rep
from reps.tensor import hom_tensor_functor, tensor_functor_on_hom, tensor_over
from semtl.data import SemtlData

logger = logging.getLogger(__name__)

DIRECTIONS = ('N', 'M')


def _check_direction(direction: str):
    if direction not in DIRECTIONS:
        raise ValueError(f"Unknown direction '{direction}', expected 'N' or 'M'")


def source_algebra(data: SemtlData, direction: str) -> Algebra:
    """Λ for N ⊗ -, Σ for M ⊗ -."""
    _check_direction(direction)
    return data.lambda_ if direction == 'N' else data.sigma


def ext_transfer(data: SemtlData, direction: str = 'N') -> FunctorTransfer:
    """N ⊗_Λ - (direction 'N') or M ⊗_Σ - (direction 'M')."""
    _check_direction(direction)
    cache = data.cache('ext_transfer')
    if direction not in cache:
        if direction == 'N':
            functor = left_tensor(data.n, data.lambda_)
        else:
            functor = left_tensor(data.m, data.sigma)
        cache[direction] = FunctorTransfer(functor, name=f"{direction}⊗-")
    return cache[direction]


def transfer_ext(data: SemtlData, direction: str, x: ExtClass) -> ExtClass:
    """
    The image of x under N ⊗_Λ - or M ⊗_Σ -, on the minimal resolution of
    the image of its source.

    Raises:
        AlgebraMismatch: If x is not over the source algebra of the direction
    """
    a = source_algebra(data, direction)
    if x.group.source.algebra is not a:
        raise AlgebraMismatch(f"{x.group.source.label} is over {x.group.source.algebra.name}, not {a.name}")
    return ext_transfer(data, direction).apply(x)


def transfer_hom(data: SemtlData, direction: str, f: Hom) -> Hom:
    """The functor on degree-0 data: N ⊗ f or M ⊗ f."""
    transfer = ext_transfer(data, direction)
    return transfer.on_homs(f)


def two_sided(left: Rep, right: Rep, middle: Algebra) -> Functor:
    """X ↦ (left ⊗_B X) ⊗_B right on B^e-modules."""
    def on_objects(x: Rep) -> Rep:
        return tensor_over(tensor_over(left, x, middle), right, middle)

    def on_homs(f: Hom) -> Hom:
        return hom_tensor_functor(tensor_functor_on_hom(left, f, middle), right, middle)

    return on_objects, on_homs


def hh_transfer(data: SemtlData, direction: str = 'N') -> FunctorTransfer:
    """
    N ⊗_Λ - ⊗_Λ M on Λ^e-modules (direction 'N') or M ⊗_Σ - ⊗_Σ N on
    Σ^e-modules (direction 'M').
    """
    _check_direction(direction)
    cache = data.cache('hh_transfer')
    if direction not in cache:
        if direction == 'N':
            functor = two_sided(data.n, data.m, data.lambda_)
        else:
            functor = two_sided(data.m, data.n, data.sigma)
        other = 'M' if direction == 'N' else 'N'
        cache[direction] = FunctorTransfer(functor, name=f"{direction}⊗-⊗{other}")
    return cache[direction]
