"""
Ext groups as cohomology of Hom(P_•, Y), and Yoneda products.

A cochain in degree n is a homomorphism P_n -> Y. Since P_n = ⊕ Λe_{v_k} is
free, it is stored as the concatenation of the generator images, one vector
in Y_{v_k} per generator. Classes are kept as cocycles reduced modulo the
coboundaries, so two classes are equal iff their reduced cocycles are.
"""

import logging
from typing import Dict, List, Optional, Sequence

from sympy.polys.matrices import DomainMatrix

from common.errors import ComposabilityMismatch, DimensionMismatch
from homology.resolution import ChainLift, Resolution, comparison, minimal_resolution
from linalg import matrix as mx
from linalg.matrix import Subspace
from reps.rep import Hom, Rep, hom_from_generators

logger = logging.getLogger(__name__)


# =============================================================================
# Cochains
# =============================================================================

def cochain_offsets(p: Rep, target: Rep) -> List[int]:
    offsets, total = [], 0
    for v in p.generators:
        offsets.append(total)
        total += target.dims[v]
    offsets.append(total)
    return offsets


def cochain_to_hom(p: Rep, target: Rep, vec: Sequence) -> Hom:
    offsets = cochain_offsets(p, target)
    images = [list(vec[offsets[k]:offsets[k + 1]]) for k in range(len(p.generators))]
    return hom_from_generators(p, target, images)


def hom_to_cochain(f: Hom) -> List:
    out = []
    for image in f.generator_images():
        out.extend(image)
    return out


def coboundary_matrix(res: Resolution, target: Rep, n: int) -> DomainMatrix:
    """
    δ^n: C^n -> C^{n+1}, φ ↦ φ∘d_{n+1}.

    Block (l, k) is Σ coeff·Y(p) over the terms coeff·p of d_{n+1}(gen_l)
    lying in summand k.
    """
    field = target.field
    p, q = res.term(n), res.term(n + 1)
    d = res.differential(n + 1)
    cols, rows = cochain_offsets(p, target), cochain_offsets(q, target)
    dod: Dict[int, Dict[int, object]] = {}
    images = d.generator_images()
    for l, w in enumerate(q.generators):
        image = images[l]
        for pos, coeff in enumerate(image):
            if not coeff:
                continue
            k, path = p.free_layout[w][pos]
            action = mx.to_dod(target.basis_matrix(path))
            for i, row in action.items():
                out = dod.setdefault(rows[l] + i, {})
                for j, value in row.items():
                    key = cols[k] + j
                    out[key] = out.get(key, field.zero) + coeff * value
    return mx.from_dod(dod, rows[-1], cols[-1], field)


# =============================================================================
# Groups and classes
# =============================================================================

class ExtGroup:
    """
    Ext^n(module, target) computed on a given resolution.

    Attributes:
        cocycles: ker δ^n in C^n
        coboundaries: im δ^{n-1} (zero for n = 0)
        representatives: RREF basis of cocycles reduced modulo coboundaries
    """

    def __init__(self, resolution: Resolution, target: Rep, degree: int):
        if degree < 0:
            raise ValueError(f"Ext degree must be nonnegative, got {degree}")
        self.resolution = resolution
        self.target = target
        self.degree = degree
        self.field = target.field
        self.term = resolution.term(degree)
        resolution.module.check_algebra(target)

        ambient = cochain_offsets(self.term, target)[-1]
        self.cocycles = mx.kernel(coboundary_matrix(resolution, target, degree))
        if degree == 0:
            self.coboundaries = Subspace.zero(self.field, ambient)
        else:
            self.coboundaries = Subspace.column_space(coboundary_matrix(resolution, target, degree - 1))
        self.representatives = Subspace.span(
            self.field, ambient, [self.coboundaries.reduce(z) for z in self.cocycles.vectors()]
        )

    @property
    def source(self) -> Rep:
        return self.resolution.module

    @property
    def dim(self) -> int:
        return self.representatives.dim

    def basis(self) -> List['ExtClass']:
        return [ExtClass(self, row) for row in self.representatives.vectors()]

    def zero(self) -> 'ExtClass':
        return ExtClass(self, [self.field.zero] * self.representatives.ambient_dim)

    def is_cocycle(self, vec: Sequence) -> bool:
        return self.cocycles.contains(list(vec))

    def normal_form(self, vec: Sequence) -> List:
        return self.coboundaries.reduce(list(vec))

    def coordinates(self, vec: Sequence) -> List:
        """
        Raises:
            ValueError: If vec is not a cocycle
        """
        if not self.is_cocycle(vec):
            raise ValueError(f"Not a cocycle in degree {self.degree}")
        return self.representatives.coordinates(self.normal_form(vec))

    def class_of(self, cocycle: Hom) -> 'ExtClass':
        return ExtClass(self, hom_to_cochain(cocycle))

    def combination(self, coeffs: Sequence) -> 'ExtClass':
        vec = [self.field.zero] * self.representatives.ambient_dim
        for c, row in zip(coeffs, self.representatives.rows):
            if c:
                for j, value in row.items():
                    vec[j] += c * value
        return ExtClass(self, vec)

    def __repr__(self):
        return (f"<ExtGroup Ext^{self.degree}({self.source.label}, {self.target.label}) "
                f"dim={self.dim}>")


def ext_group(res: Resolution, target: Rep, n: int) -> ExtGroup:
    """Memoized Ext^n on a resolution."""
    cache = res.cache('ext')
    key = (id(target), n)
    if key not in cache:
        cache[key] = (target, ExtGroup(res, target, n))
    return cache[key][1]


def ext(x: Rep, y: Rep, n: int) -> ExtGroup:
    """Ext^n(x, y) on the minimal resolution of x."""
    return ext_group(minimal_resolution(x), y, n)


class ExtClass:
    """A class [z] of Ext^n, held as a cocycle reduced modulo coboundaries."""

    def __init__(self, group: ExtGroup, cochain: Sequence):
        self.group = group
        self.vector = group.normal_form(cochain)
        self._lifts: Dict[int, tuple] = {}

    @property
    def degree(self) -> int:
        return self.group.degree

    def coordinates(self) -> List:
        return self.group.coordinates(self.vector)

    def cocycle(self) -> Hom:
        return cochain_to_hom(self.group.term, self.group.target, self.vector)

    def is_zero(self) -> bool:
        return not any(self.vector)

    def _check_same(self, other: 'ExtClass'):
        if other.group is not self.group:
            raise ComposabilityMismatch("Classes live in different Ext groups")

    def __add__(self, other: 'ExtClass') -> 'ExtClass':
        self._check_same(other)
        return ExtClass(self.group, [a + b for a, b in zip(self.vector, other.vector)])

    def __sub__(self, other: 'ExtClass') -> 'ExtClass':
        self._check_same(other)
        return ExtClass(self.group, [a - b for a, b in zip(self.vector, other.vector)])

    def scale(self, c) -> 'ExtClass':
        return ExtClass(self.group, [c * a for a in self.vector])

    def lift(self, target: Resolution) -> ChainLift:
        """The cocycle lifted to a chain map into a resolution of the target."""
        key = id(target)
        if key not in self._lifts:
            if target.module is not self.group.target:
                raise ComposabilityMismatch(
                    f"Cannot lift into a resolution of {target.module.label}; "
                    f"class has target {self.group.target.label}"
                )
            self._lifts[key] = (target, ChainLift(self.group.resolution, self.degree, self.cocycle(), target))
        return self._lifts[key][1]

    def __eq__(self, other):
        return isinstance(other, ExtClass) and other.group is self.group and other.vector == self.vector

    def __repr__(self):
        return f"<ExtClass deg {self.degree} coords={[self.group.field.to_str(c) for c in self.coordinates()]}>"


# =============================================================================
# Products and functoriality
# =============================================================================

def yoneda(x: ExtClass, y: ExtClass) -> ExtClass:
    """
    x·y for x ∈ Ext^m(B, C) and y ∈ Ext^n(A, B), in Ext^{m+n}(A, C).

    y's cocycle is lifted to a chain map into the resolution x lives on and
    composed with x's cocycle.

    Raises:
        ComposabilityMismatch: If y's target is not the module x resolves
    """
    if y.group.target is not x.group.source:
        raise ComposabilityMismatch(
            f"Cannot compose: {y.group.target.label} is not {x.group.source.label}"
        )
    chain = y.lift(x.group.resolution)
    g = chain.map(x.degree)
    product = x.cocycle().compose(g)
    group = ext_group(y.group.resolution, x.group.target, x.degree + y.degree)
    return group.class_of(product)


def transport(x: ExtClass, res: Resolution) -> ExtClass:
    """The same class computed on another resolution of the same module."""
    if res is x.group.resolution:
        return x
    chain = comparison(res, x.group.resolution)
    cocycle = x.cocycle().compose(chain.map(x.degree))
    return ext_group(res, x.group.target, x.degree).class_of(cocycle)


def pushforward(x: ExtClass, f: Hom) -> ExtClass:
    """f_*[z] = [f∘z] for f: target -> W."""
    if f.source is not x.group.target:
        raise ComposabilityMismatch(f"{f} does not start at {x.group.target.label}")
    group = ext_group(x.group.resolution, f.target, x.degree)
    return group.class_of(f.compose(x.cocycle()))


def pullback(x: ExtClass, f: Hom, res: Optional[Resolution] = None) -> ExtClass:
    """f^*[z] for f: U' -> U, computed on res (default: minimal resolution of U')."""
    if f.target is not x.group.source:
        raise ComposabilityMismatch(f"{f} does not end at {x.group.source.label}")
    res = minimal_resolution(f.source) if res is None else res
    chain = comparison(res, x.group.resolution, along=f)
    cocycle = x.cocycle().compose(chain.map(x.degree))
    return ext_group(res, x.group.target, x.degree).class_of(cocycle)


# =============================================================================
# Linear maps between Ext groups
# =============================================================================

class LinearMap:
    """A linear map between finite-dimensional spaces, on their chosen bases."""

    def __init__(self, source_dim: int, target_dim: int, matrix: DomainMatrix, name: str = ''):
        self.source_dim = source_dim
        self.target_dim = target_dim
        self.matrix = matrix
        self.name = name

    @classmethod
    def from_images(cls, images: List[List], target_dim: int, field, name: str = '') -> 'LinearMap':
        """Columns are the coordinates of the images of the source basis."""
        return cls(len(images), target_dim, mx.from_columns(images, target_dim, field), name)

    @property
    def rank(self) -> int:
        return mx.rank(self.matrix)

    def is_injective(self) -> bool:
        return self.rank == self.source_dim

    def is_surjective(self) -> bool:
        return self.rank == self.target_dim

    def is_bijective(self) -> bool:
        return self.source_dim == self.target_dim and self.is_injective()

    def image(self) -> Subspace:
        return Subspace.column_space(self.matrix)

    def compose(self, inner: 'LinearMap') -> 'LinearMap':
        """self ∘ inner."""
        if inner.target_dim != self.source_dim:
            raise DimensionMismatch(f"Cannot compose {self.name} after {inner.name}")
        return LinearMap(inner.source_dim, self.target_dim, mx.matmul(self.matrix, inner.matrix),
                         name=f"{self.name}∘{inner.name}")

    def inverse(self) -> 'LinearMap':
        """
        Raises:
            ValueError: If the map is not bijective
        """
        if not self.is_bijective():
            raise ValueError(f"{self.name} is not invertible")
        return LinearMap(self.target_dim, self.source_dim, mx.inverse(self.matrix), name=f"{self.name}^-1")

    def equals(self, other: 'LinearMap') -> bool:
        return mx.equal(self.matrix, other.matrix)

    def __repr__(self):
        return f"<LinearMap {self.name} {self.source_dim} -> {self.target_dim} rank={self.rank}>"


def map_on_basis(source: ExtGroup, target: ExtGroup, apply, name: str = '') -> LinearMap:
    """Matrix of a class-level map on the representative bases."""
    images = [target.coordinates(apply(cls).vector) for cls in source.basis()]
    return LinearMap.from_images(images, target.dim, target.field, name)
