"""
Projective resolutions.

A resolution of K_0 is stored through its syzygies: at each step a cover
π_i: P_i -> K_i and the inclusion ι_{i+1}: K_{i+1} -> P_i of its kernel, so
the differential is d_{i+1} = ι_{i+1}∘π_{i+1}. Every term P_i is a free
module with recorded generators, which is what cochain computations need.

The shifted resolution P_{•+i} resolves K_i, and for a minimal resolution it
is the minimal resolution of Ω^i. Shifts are memoized so that
shifted(i).shifted(j) is the same object as shifted(i + j).
"""

import logging
from typing import Callable, Dict, List, Optional, Tuple, Union

from common import get_settings
from linalg import matrix as mx
from reps.iso import Stripped
from reps.morphisms import as_free, direct_sum, kernel, projective_cover, radical_subspaces
from reps.rep import Hom, Rep, hom_from_generators, zero_rep

logger = logging.getLogger(__name__)


class ExceedsBound:
    """A dimension that could not be certified within `bound` steps."""

    def __init__(self, bound: int):
        self.bound = bound

    def __eq__(self, other):
        return isinstance(other, ExceedsBound) and other.bound == self.bound

    def __hash__(self):
        return hash(('ExceedsBound', self.bound))

    def __repr__(self):
        return f"ExceedsBound({self.bound})"


Dimension = Union[int, ExceedsBound]


class Resolution:
    """Common interface; subclasses provide term, cover and inclusion."""

    minimal = False

    def __init__(self, module: Rep):
        self.module = module
        self._shifts: Dict[int, 'Resolution'] = {0: self}
        self._caches: Dict[str, dict] = {}

    def term(self, i: int) -> Rep:
        raise NotImplementedError

    def cover(self, i: int) -> Hom:
        """π_i: P_i -> K_i (π_0 is the augmentation)."""
        raise NotImplementedError

    def inclusion(self, i: int) -> Hom:
        """ι_i: K_i -> P_{i-1} for i >= 1."""
        raise NotImplementedError

    def syzygy(self, i: int) -> Rep:
        return self.module if i == 0 else self.inclusion(i).source

    @property
    def augmentation(self) -> Hom:
        return self.cover(0)

    def differential(self, i: int) -> Hom:
        """d_i: P_i -> P_{i-1} for i >= 1."""
        if i < 1:
            raise IndexError(f"Differential index must be positive, got {i}")
        cache = self.cache('differential')
        if i not in cache:
            cache[i] = self.inclusion(i).compose(self.cover(i))
        return cache[i]

    def cache(self, kind: str) -> dict:
        return self._caches.setdefault(kind, {})

    def shifted(self, i: int) -> 'Resolution':
        if i < 0:
            raise IndexError(f"Cannot shift by {i}")
        if i not in self._shifts:
            self._shifts[i] = ShiftedResolution(self, i)
        return self._shifts[i]

    def projective_dimension(self, bound: int) -> Dimension:
        """Least i with K_{i+1} = 0, if it is at most bound."""
        for i in range(bound + 1):
            if self.syzygy(i + 1).is_zero():
                return i
        return ExceedsBound(bound)

    # -------------------------------------------------------------------------
    # Checks
    # -------------------------------------------------------------------------

    def is_complex(self, upto: int) -> bool:
        for i in range(2, upto + 1):
            if not self.differential(i - 1).compose(self.differential(i)).is_zero():
                return False
        return True

    def is_exact(self, upto: int) -> bool:
        """Rank equalities dim ker d_i = rank d_{i+1} and surjectivity of π_0."""
        if not self.cover(0).is_surjective():
            return False
        for i in range(0, upto):
            upper = self.differential(i + 1).ranks()
            if i == 0:
                lower = self.cover(0).ranks()
            else:
                lower = self.differential(i).ranks()
            dims = self.term(i).dims
            if any(d - r != u for d, r, u in zip(dims, lower, upper)):
                return False
        return True

    def is_minimal_upto(self, upto: int) -> bool:
        """im d_i ⊆ rad P_{i-1} for 1 <= i <= upto."""
        for i in range(1, upto + 1):
            rad = radical_subspaces(self.term(i - 1))
            d = self.differential(i)
            for v, m in enumerate(d.maps):
                for j in range(m.shape[1]):
                    if not rad[v].contains(mx.column(m, j)):
                        return False
        return True

    def __repr__(self):
        return f"<{type(self).__name__} of {self.module.label}>"


# =============================================================================
# Minimal resolutions
# =============================================================================

class MinimalResolution(Resolution):
    """Built lazily from projective covers; frozen once a syzygy vanishes."""

    minimal = True

    def __init__(self, module: Rep):
        super().__init__(module)
        self._covers: List[Hom] = []
        self._inclusions: List[Optional[Hom]] = [None]
        self.pd: Optional[int] = None

    def _extend(self, i: int):
        while len(self._covers) <= i:
            k = len(self._covers)
            current = self.module if k == 0 else self._inclusions[k].source
            if current.is_zero():
                p = zero_rep(current.algebra)
                self._covers.append(Hom.zero(p, current))
                self._inclusions.append(Hom.zero(current, p))
                continue
            p, epi = projective_cover(current)
            p.name = f"P{k}[{self.module.label}]"
            self._covers.append(epi)
            syz, inc = kernel(epi, name=f"Ω^{k + 1}({self.module.label})")
            self._inclusions.append(inc)
            if syz.is_zero() and self.pd is None:
                self.pd = k
            logger.debug(f"Resolution of {self.module.label}: P{k} dims {p.dims}, Ω^{k + 1} dims {syz.dims}")

    def term(self, i: int) -> Rep:
        self._extend(i)
        return self._covers[i].source

    def cover(self, i: int) -> Hom:
        self._extend(i)
        return self._covers[i]

    def inclusion(self, i: int) -> Hom:
        if i < 1:
            raise IndexError(f"Inclusion index must be positive, got {i}")
        self._extend(i - 1)
        return self._inclusions[i]

    def length(self) -> int:
        """Number of terms computed so far."""
        return len(self._covers)


class ShiftedResolution(Resolution):
    """P_{•+offset} as a resolution of K_offset."""

    def __init__(self, base: Resolution, offset: int):
        super().__init__(base.syzygy(offset))
        self.base = base
        self.offset = offset
        self.minimal = base.minimal

    def term(self, i: int) -> Rep:
        return self.base.term(self.offset + i)

    def cover(self, i: int) -> Hom:
        return self.base.cover(self.offset + i)

    def inclusion(self, i: int) -> Hom:
        if i < 1:
            raise IndexError(f"Inclusion index must be positive, got {i}")
        return self.base.inclusion(self.offset + i)

    def differential(self, i: int) -> Hom:
        return self.base.differential(self.offset + i)

    def shifted(self, i: int) -> Resolution:
        return self.base.shifted(self.offset + i)


def minimal_resolution(x: Rep) -> MinimalResolution:
    """The memoized minimal resolution of x."""
    cache = x.cache('resolution')
    if 'minimal' not in cache:
        cache['minimal'] = MinimalResolution(x)
    return cache['minimal']


def min_resolution(x: Rep, n: int) -> MinimalResolution:
    """Minimal resolution with terms P_0..P_n computed."""
    if n < 0:
        raise ValueError(f"Resolution length must be nonnegative, got {n}")
    res = minimal_resolution(x)
    res.term(n)
    return res


def syzygy(x: Rep, i: int) -> Rep:
    """Ω^i(x) from the minimal resolution."""
    if i < 0:
        raise ValueError(f"Syzygy index must be nonnegative, got {i}")
    return minimal_resolution(x).syzygy(i)


def projective_dimension(x: Rep, bound: Optional[int] = None) -> Dimension:
    bound = get_settings().pd_cap if bound is None else bound
    if x.is_zero():
        return 0
    return minimal_resolution(x).projective_dimension(bound)


# =============================================================================
# Resolutions built from others
# =============================================================================

Functor = Tuple[Callable[[Rep], Rep], Callable[[Hom], Hom]]


class ImageResolution(Resolution):
    """
    F(P_•) for an exact functor F that preserves projectives.

    The terms are free modules isomorphic to F(P_i); the syzygies are F(K_i),
    except K_0 which may be replaced through an isomorphism F(K_0) -> target.
    """

    def __init__(self, base: Resolution, functor: Functor, target_iso: Optional[Hom] = None, name: str = 'F'):
        self.base = base
        self.on_objects, self.on_homs = functor
        self.name = name
        self.image_module = self.on_objects(base.module)
        self.target_iso = target_iso
        super().__init__(target_iso.target if target_iso is not None else self.image_module)
        self._frees: Dict[int, Tuple[Rep, Hom]] = {}

    def _free(self, i: int) -> Tuple[Rep, Hom]:
        """(free module, iso onto F(P_i))."""
        if i not in self._frees:
            image = self.on_objects(self.base.term(i))
            free, iso = as_free(image)
            free.name = f"{self.name}P{i}"
            self._frees[i] = (free, iso)
        return self._frees[i]

    def image_syzygy(self, i: int) -> Rep:
        return self.on_objects(self.base.syzygy(i))

    def term(self, i: int) -> Rep:
        return self._free(i)[0]

    def cover(self, i: int) -> Hom:
        cache = self.cache('cover')
        if i not in cache:
            _, iso = self._free(i)
            result = self.on_homs(self.base.cover(i)).compose(iso)
            if i == 0 and self.target_iso is not None:
                result = self.target_iso.compose(result)
            cache[i] = result
        return cache[i]

    def inclusion(self, i: int) -> Hom:
        if i < 1:
            raise IndexError(f"Inclusion index must be positive, got {i}")
        cache = self.cache('inclusion')
        if i not in cache:
            _, iso = self._free(i - 1)
            inverse = _inverse_onto(iso)
            cache[i] = inverse.compose(self.on_homs(self.base.inclusion(i)))
        return cache[i]

    def term_iso(self, i: int) -> Hom:
        """The isomorphism term(i) -> F(P_i)."""
        return self._free(i)[1]


def _inverse_onto(iso: Hom) -> Hom:
    cache = iso.source.cache('inverse')
    key = id(iso)
    if key not in cache:
        cache[key] = (iso, iso.inverse())
    return cache[key][1]


class SplicedResolution(Resolution):
    """
    A resolution of base.module whose level-th syzygy is a prescribed module Y.

    Y must decompose as Q ⊕ Y' with Q free and Y' ≅ K_level of the minimal
    resolution. The minimal terms are kept below level - 1, P_{level-1} is
    replaced by P_{level-1} ⊕ Q, and from level on the minimal resolution of
    Y is used.
    """

    def __init__(self, base: MinimalResolution, level: int, stripped: Stripped, witness: Hom):
        if level < 1:
            raise ValueError(f"Splicing needs level >= 1, got {level}")
        super().__init__(base.module)
        self.base = base
        self.level = level
        self.stripped = stripped
        self.witness = witness
        self.tail = minimal_resolution(stripped.whole)
        self._joint: Optional[Tuple[Rep, List[Hom], List[Hom]]] = None

    def _joint_term(self) -> Tuple[Rep, List[Hom], List[Hom]]:
        if self._joint is None:
            p = self.base.term(self.level - 1)
            self._joint = direct_sum([p, self.stripped.projective_part],
                                     name=f"P{self.level - 1}⊕Q[{self.module.label}]")
        return self._joint

    def term(self, i: int) -> Rep:
        if i < self.level - 1:
            return self.base.term(i)
        if i == self.level - 1:
            return self._joint_term()[0]
        return self.tail.term(i - self.level)

    def cover(self, i: int) -> Hom:
        if i < self.level - 1:
            return self.base.cover(i)
        if i == self.level - 1:
            cache = self.cache('cover')
            if i not in cache:
                _, _, projections = self._joint_term()
                cache[i] = self.base.cover(i).compose(projections[0])
            return cache[i]
        return self.tail.cover(i - self.level)

    def inclusion(self, i: int) -> Hom:
        if i < 1:
            raise IndexError(f"Inclusion index must be positive, got {i}")
        if i < self.level:
            return self.base.inclusion(i)
        if i == self.level:
            cache = self.cache('inclusion')
            if i not in cache:
                _, inclusions, _ = self._joint_term()
                s = self.stripped
                into_p = self.base.inclusion(self.level).compose(self.witness.compose(s.projection))
                cache[i] = inclusions[0].compose(into_p) + inclusions[1].compose(s.projective_projection)
            return cache[i]
        return self.tail.inclusion(i - self.level)

    def syzygy(self, i: int) -> Rep:
        if i == self.level:
            return self.stripped.whole
        return super().syzygy(i)

    def shifted(self, i: int) -> Resolution:
        if i == self.level:
            return self.tail
        if i > self.level:
            return self.tail.shifted(i - self.level)
        return super().shifted(i)


# =============================================================================
# Chain maps
# =============================================================================

def lift_through(need: Hom, epi: Hom, free: Rep) -> Hom:
    """
    A map free -> epi.source with epi∘result = need, from generator images.

    Raises:
        ValueError: If some generator image is not in the image of epi
    """
    field = free.field
    by_vertex: Dict[int, List[int]] = {}
    for k, v in enumerate(free.generators):
        by_vertex.setdefault(v, []).append(k)
    images: List[Optional[List]] = [None] * len(free.generators)
    wanted = need.generator_images()
    for v, ks in by_vertex.items():
        b = mx.from_columns([wanted[k] for k in ks], need.target.dims[v], field)
        solution = mx.solve_right(epi.maps[v], b)
        if solution is None:
            raise ValueError(f"Map out of {free.label} does not lift through {epi.source.label}")
        particular = solution[0]
        for col, k in enumerate(ks):
            images[k] = mx.column(particular, col)
    return hom_from_generators(free, epi.source, images)


class ChainLift:
    """
    Lifts g_k: P^src_{offset+k} -> P^tgt_k of a map P^src_offset -> K^tgt_0,
    extended on demand.
    """

    def __init__(self, source: Resolution, offset: int, start: Hom, target: Resolution):
        self.source = source
        self.offset = offset
        self.start = start
        self.target = target
        self.maps: List[Hom] = []

    def map(self, k: int) -> Hom:
        while len(self.maps) <= k:
            j = len(self.maps)
            if j == 0:
                need, epi = self.start, self.target.cover(0)
            else:
                need = self.maps[j - 1].compose(self.source.differential(self.offset + j))
                epi = self.target.differential(j)
            self.maps.append(lift_through(need, epi, self.source.term(self.offset + j)))
        return self.maps[k]


def comparison(source: Resolution, target: Resolution, along: Optional[Hom] = None) -> ChainLift:
    """
    Chain map source -> target over a module map source.module -> target.module
    (the identity when they are the same module).
    """
    if along is None:
        if source.module is not target.module:
            raise ValueError("Resolutions of different modules need an explicit module map")
        key = id(target)
        cache = source.cache('comparison')
        if key not in cache:
            cache[key] = (target, ChainLift(source, 0, source.cover(0), target))
        return cache[key][1]
    return ChainLift(source, 0, along.compose(source.cover(0)), target)
