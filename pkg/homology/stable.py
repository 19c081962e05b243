"""
Stable Hom spaces and the map from stable Hom of a syzygy to Ext.

P(x, y) ⊆ Hom(x, y), the maps factoring through a projective, is the image
of Hom(x, P) under composition with the projective cover P -> y: anything
factoring through some projective also factors through the cover.
"""

import logging
from typing import List, Optional

from common.errors import HypothesisFailed
from homology.ext import ExtGroup, LinearMap, ext, ext_group
from homology.resolution import Resolution, minimal_resolution
from linalg.matrix import Subspace
from reps.morphisms import HomSpace, hom_space, projective_cover
from reps.rep import Hom, Rep, hom_from_flat, regular_module

logger = logging.getLogger(__name__)


class StableHomSpace:
    """
    Hom(x, y) / P(x, y).

    Attributes:
        hom: The full Hom space
        proj_subspace: P(x, y) in the flat coordinates of Hom.flatten
        coset_reps: Homs whose classes form a basis of the quotient
    """

    def __init__(self, hom: HomSpace, proj_subspace: Subspace):
        self.hom = hom
        self.proj_subspace = proj_subspace
        reduced = [proj_subspace.reduce(h.flatten()) for h in hom.basis]
        self._reps = Subspace.span(hom.source.field, proj_subspace.ambient_dim, reduced)
        self.coset_reps: List[Hom] = [hom_from_flat(hom.source, hom.target, v) for v in self._reps.vectors()]

    @property
    def hom_basis(self) -> List[Hom]:
        return self.hom.basis

    @property
    def dim(self) -> int:
        return self._reps.dim

    def coordinates(self, f: Hom) -> List:
        """Coordinates of the stable class of f in the coset basis."""
        return self._reps.coordinates(self.proj_subspace.reduce(f.flatten()))

    def factors_through_projective(self, f: Hom) -> bool:
        return self.proj_subspace.contains(f.flatten())

    def __repr__(self):
        return f"<StableHomSpace {self.hom.source.label} -> {self.hom.target.label} dim={self.dim}>"


def stable_hom(x: Rep, y: Rep) -> StableHomSpace:
    cache = x.cache('stable_hom')
    key = id(y)
    if key not in cache:
        hom = hom_space(x, y)
        p, epi = projective_cover(y)
        through = [epi.compose(h).flatten() for h in hom_space(x, p).basis]
        proj = Subspace.span(x.field, hom.subspace.ambient_dim, through)
        cache[key] = (y, StableHomSpace(hom, proj))
    return cache[key][1]


class StableToExt:
    """The map stHom(K_n, a) -> Ext^n(c, a), g ↦ [g∘π_n]."""

    def __init__(self, source: StableHomSpace, target: ExtGroup, resolution: Resolution, degree: int):
        self.source = source
        self.target = target
        self.resolution = resolution
        self.degree = degree
        cover = resolution.cover(degree)
        images = [target.coordinates(target.class_of(g.compose(cover)).vector) for g in source.coset_reps]
        self.linear_map = LinearMap.from_images(images, target.dim, target.field, f"stHom->Ext^{degree}")

    def apply(self, g: Hom):
        return self.target.class_of(g.compose(self.resolution.cover(self.degree)))

    def is_bijective(self) -> bool:
        return self.linear_map.is_bijective()

    def __repr__(self):
        return f"<StableToExt n={self.degree} {self.linear_map}>"


def sthom_to_ext(c: Rep, a: Rep, n: int, resolution: Optional[Resolution] = None) -> StableToExt:
    """
    stHom(Ω^n c, a) -> Ext^n(c, a) through the n-th cover of the resolution.

    Raises:
        ValueError: If n < 1
        HypothesisFailed: If Ext^n(c, Λ) is nonzero
    """
    if n < 1:
        raise ValueError(f"Degree must be positive, got {n}")
    regular = regular_module(c.algebra)
    obstruction = ext(c, regular, n).dim
    if obstruction:
        raise HypothesisFailed(f"Ext^{n}({c.label}, {c.algebra.name}) has dimension {obstruction}")
    res = minimal_resolution(c) if resolution is None else resolution
    k = res.syzygy(n)
    return StableToExt(stable_hom(k, a), ext_group(res, a, n), res, n)
