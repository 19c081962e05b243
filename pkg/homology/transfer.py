"""
Ext maps induced by exact functors that preserve projectives.

For F such as N ⊗_Λ - with N projective on both sides, F(P_•) resolves
F(A), so a cocycle z: P_n -> B gives F(z): F(P_n) -> F(B) and
F: Ext^n(A, B) -> Ext^n(F A, F B) is computed without choosing sequences.
"""

import logging
from typing import Dict, Optional

from algebras.algebra import Algebra
from homology.ext import ExtClass, ExtGroup, LinearMap, ext, ext_group, map_on_basis, transport
from homology.resolution import Functor, ImageResolution, Resolution, minimal_resolution
from reps.rep import Rep
from reps.tensor import hom_tensor_functor, tensor_functor_on_hom, tensor_over

logger = logging.getLogger(__name__)


def left_tensor(k: Rep, middle: Optional[Algebra] = None) -> Functor:
    """k ⊗_B -."""
    return (lambda m: tensor_over(k, m, middle), lambda f: tensor_functor_on_hom(k, f, middle))


def right_tensor(k: Rep, middle: Optional[Algebra] = None) -> Functor:
    """- ⊗_B k."""
    return (lambda m: tensor_over(m, k, middle), lambda f: hom_tensor_functor(f, k, middle))


class FunctorTransfer:
    """The maps Ext^n(A, B) -> Ext^n(F A, F B) of an exact functor F."""

    def __init__(self, functor: Functor, name: str = 'F'):
        self.functor = functor
        self.on_objects, self.on_homs = functor
        self.name = name
        self._resolutions: Dict[int, tuple] = {}

    def image_resolution(self, res: Resolution) -> ImageResolution:
        key = id(res)
        if key not in self._resolutions:
            self._resolutions[key] = (res, ImageResolution(res, self.functor, name=self.name))
        return self._resolutions[key][1]

    def apply(self, x: ExtClass) -> ExtClass:
        """F[z], on the minimal resolution of F(source)."""
        res = self.image_resolution(x.group.resolution)
        n = x.degree
        cocycle = self.on_homs(x.cocycle()).compose(res.term_iso(n))
        image = ext_group(res, self.on_objects(x.group.target), n).class_of(cocycle)
        return transport(image, minimal_resolution(res.module))

    def target_group(self, group: ExtGroup) -> ExtGroup:
        return ext(self.on_objects(group.source), self.on_objects(group.target), group.degree)

    def map(self, group: ExtGroup) -> LinearMap:
        """Matrix of F on the representative bases of group and its image group."""
        return map_on_basis(group, self.target_group(group), self.apply,
                            name=f"{self.name} on Ext^{group.degree}")

    def __repr__(self):
        return f"<FunctorTransfer {self.name}>"
