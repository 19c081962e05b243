"""
The characteristic map φ_x: HH^*(Λ) -> Ext^*_Λ(x, x).

Applying - ⊗_Λ x to the minimal resolution P_• of Λ over Λ^e gives a
projective resolution of Λ ⊗_Λ x ≅ x (the terms Λe_i ⊗_k e_jΛ ⊗_Λ x are
projective, and the sequence splits over Λ on the right). A cocycle
z: P_n -> Λ becomes μ∘(z ⊗ x): P_n ⊗ x -> x, and its class is transported to
the minimal resolution of x by a comparison map.
"""

import logging

from algebras.algebra import Algebra
from common.errors import AlgebraMismatch
from homology.ext import ExtClass, LinearMap, ext, ext_group, map_on_basis, transport
from homology.resolution import ImageResolution, minimal_resolution
from hochschild.hh import bimodule_resolution, hh
from reps.rep import Rep
from reps.tensor import hom_tensor_functor, left_unit, tensor_over

logger = logging.getLogger(__name__)


def induced_resolution(a: Algebra, x: Rep) -> ImageResolution:
    """P_• ⊗_Λ x, resolving x through the unit isomorphism."""
    if x.algebra is not a:
        raise AlgebraMismatch(f"{x.label} is over {x.algebra.name}, not {a.name}")
    cache = x.cache('phi')
    if 'resolution' not in cache:
        functor = (lambda m: tensor_over(m, x, a), lambda f: hom_tensor_functor(f, x, a))
        cache['resolution'] = ImageResolution(bimodule_resolution(a), functor, left_unit(x, a),
                                              name=f"-⊗{x.label}")
    return cache['resolution']


def phi(a: Algebra, x: Rep, h: ExtClass) -> ExtClass:
    """
    φ_x(h) for h ∈ HH^n(a), as a class on the minimal resolution of x.

    Raises:
        AlgebraMismatch: If x is not over a
    """
    res = induced_resolution(a, x)
    h = transport(h, res.base)
    n = h.degree
    z = h.cocycle()
    cocycle = res.target_iso.compose(hom_tensor_functor(z, x, a).compose(res.term_iso(n)))
    image = ext_group(res, x, n).class_of(cocycle)
    return transport(image, minimal_resolution(x))


def phi_map(a: Algebra, x: Rep, n: int) -> LinearMap:
    """Matrix of φ_x: HH^n(a) -> Ext^n(x, x) on representative bases."""
    return map_on_basis(hh(a, n), ext(x, x, n), lambda h: phi(a, x, h), name=f"phi_{x.label}^{n}")
