"""
fdhom Quiver Representations

Modules over bound quiver algebras as representations: homomorphisms, Hom
spaces, kernels and covers, duality, isomorphism testing, summand splitting
and tensor products of bimodules.
"""

__version__ = "0.1.0"

from reps.iso import is_isomorphic, split_off_summand, strip_projectives
from reps.morphisms import (
    HomSpace,
    cokernel,
    dual,
    hom_basis,
    hom_space,
    image,
    is_projective,
    kernel,
    projective_cover,
    restrict,
)
from reps.rep import (
    Hom,
    Rep,
    free_module,
    projective,
    regular_module,
    rep_from_rows,
    semisimple_top,
    simple,
)
from reps.tensor import regular_bimodule, tensor_functor_on_hom, tensor_over, twisted_bimodule

__all__ = [
    'Hom',
    'HomSpace',
    'Rep',
    'cokernel',
    'dual',
    'free_module',
    'hom_basis',
    'hom_space',
    'image',
    'is_isomorphic',
    'is_projective',
    'kernel',
    'projective',
    'projective_cover',
    'regular_bimodule',
    'regular_module',
    'rep_from_rows',
    'restrict',
    'semisimple_top',
    'simple',
    'split_off_summand',
    'strip_projectives',
    'tensor_functor_on_hom',
    'tensor_over',
    'twisted_bimodule',
]
