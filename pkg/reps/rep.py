"""
Representations of bound quivers and their homomorphisms.

A Rep is a left module over its algebra: the path a_k ... a_1 acts as the
matrix product X(a_k)···X(a_1). Free modules ⊕ Λe_{v_k} remember their
generator vertices so that homomorphisms out of them can be given by the
images of the generators.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from algebras.algebra import Algebra
from algebras.rewriting import Path
from common.errors import AlgebraMismatch, DimensionMismatch, UnknownVertex
from linalg import matrix as mx

logger = logging.getLogger(__name__)


class Rep:
    """
    A finite-dimensional representation.

    Args:
        algebra: The algebra acted on
        dims: Dimension at each vertex
        maps: Matrix for each arrow, shaped dims[target] x dims[source]
        name: Optional display name
        check: Verify shapes and that every relation acts as zero

    Raises:
        DimensionMismatch: If a matrix has the wrong shape
        ValueError: If a relation does not act as zero
    """

    def __init__(
        self,
        algebra: Algebra,
        dims: Sequence[int],
        maps: Sequence[DomainMatrix],
        name: Optional[str] = None,
        check: bool = True
    ):
        self.algebra = algebra
        self.field = algebra.field
        self.dims: List[int] = list(dims)
        self.maps: List[DomainMatrix] = list(maps)
        self.name = name
        # free modules: generator vertices and, per vertex, the (summand, path) of each basis vector
        self.generators: Optional[List[int]] = None
        self.free_layout: Optional[List[List[Tuple[int, int]]]] = None
        self._paths: Dict[Path, DomainMatrix] = {}
        self._caches: Dict[str, dict] = {}

        if len(self.dims) != algebra.vertex_count:
            raise DimensionMismatch(
                f"Got {len(self.dims)} dimensions for {algebra.vertex_count} vertices"
            )
        if len(self.maps) != algebra.arrow_count:
            raise DimensionMismatch(f"Got {len(self.maps)} maps for {algebra.arrow_count} arrows")
        if check:
            for arrow in algebra.quiver.arrows:
                expected = (self.dims[arrow.target], self.dims[arrow.source])
                if self.maps[arrow.index].shape != expected:
                    raise DimensionMismatch(
                        f"Map for arrow {arrow.name} has shape {self.maps[arrow.index].shape}, "
                        f"expected {expected}"
                    )
            for relation in algebra.relations:
                if not mx.is_zero_matrix(self.evaluate(relation.to_poly(algebra.quiver))):
                    raise ValueError(f"Representation {self.label} does not satisfy a relation of {algebra.name}")

    @property
    def label(self) -> str:
        return self.name or f"rep{tuple(self.dims)}"

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def cache(self, kind: str) -> dict:
        """Per-instance memo table (Reps are immutable)."""
        return self._caches.setdefault(kind, {})

    def path_matrix(self, path: Path) -> DomainMatrix:
        """Matrix of the path (source, arrows) acting on this representation."""
        if path not in self._paths:
            source, word = path
            if not word:
                result = mx.identity(self.dims[source], self.field)
            else:
                result = self.path_matrix((source, word[:-1]))
                result = mx.matmul(self.maps[word[-1]], result)
            self._paths[path] = result
        return self._paths[path]

    def basis_matrix(self, i: int) -> DomainMatrix:
        return self.path_matrix(self.algebra.basis[i])

    def evaluate(self, poly: Dict[Path, object]) -> DomainMatrix:
        """Action of a parallel path polynomial."""
        result = None
        for path, coeff in poly.items():
            term = mx.scale(self.path_matrix(path), coeff)
            result = term if result is None else mx.add(result, term)
        return result

    def check_algebra(self, other: 'Rep'):
        if self.algebra is not other.algebra:
            raise AlgebraMismatch(
                f"{self.label} is over {self.algebra.name} but {other.label} is over {other.algebra.name}"
            )

    # free modules

    def generator_position(self, k: int) -> Tuple[int, int]:
        """(vertex, index) of the k-th generator of a free module."""
        v = self.generators[k]
        return v, self.free_layout[v].index((k, self.algebra.idempotent(v)))

    def __repr__(self):
        return f"<Rep {self.label} over {self.algebra.name} dims={self.dims}>"


class Hom:
    """
    A homomorphism of representations, one matrix per vertex.

    Raises:
        DimensionMismatch: If a vertex map has the wrong shape
        ValueError: If check is set and some arrow square does not commute
    """

    def __init__(self, source: Rep, target: Rep, maps: Sequence[DomainMatrix], check: bool = False):
        source.check_algebra(target)
        self.source = source
        self.target = target
        self.maps = list(maps)
        for v, m in enumerate(self.maps):
            if m.shape != (target.dims[v], source.dims[v]):
                raise DimensionMismatch(
                    f"Vertex map {v} has shape {m.shape}, expected {(target.dims[v], source.dims[v])}"
                )
        if check and not self.is_homomorphism():
            raise ValueError(f"Maps do not intertwine {source.label} and {target.label}")

    @classmethod
    def identity(cls, x: Rep) -> 'Hom':
        return cls(x, x, [mx.identity(d, x.field) for d in x.dims])

    @classmethod
    def zero(cls, x: Rep, y: Rep) -> 'Hom':
        return cls(x, y, [mx.zeros(y.dims[v], x.dims[v], x.field) for v in range(len(x.dims))])

    @property
    def field(self):
        return self.source.field

    def is_homomorphism(self) -> bool:
        for arrow in self.source.algebra.quiver.arrows:
            lhs = mx.matmul(self.maps[arrow.target], self.source.maps[arrow.index])
            rhs = mx.matmul(self.target.maps[arrow.index], self.maps[arrow.source])
            if not mx.equal(lhs, rhs):
                return False
        return True

    def compose(self, inner: 'Hom') -> 'Hom':
        """self ∘ inner."""
        if inner.target is not self.source:
            raise DimensionMismatch("Homomorphisms do not compose")
        return Hom(inner.source, self.target,
                   [mx.matmul(a, b) for a, b in zip(self.maps, inner.maps)])

    def __add__(self, other: 'Hom') -> 'Hom':
        return Hom(self.source, self.target, [mx.add(a, b) for a, b in zip(self.maps, other.maps)])

    def __sub__(self, other: 'Hom') -> 'Hom':
        return Hom(self.source, self.target, [mx.sub(a, b) for a, b in zip(self.maps, other.maps)])

    def scale(self, c) -> 'Hom':
        return Hom(self.source, self.target, [mx.scale(m, c) for m in self.maps])

    def __neg__(self) -> 'Hom':
        return self.scale(-self.field.one)

    def is_zero(self) -> bool:
        return all(mx.is_zero_matrix(m) for m in self.maps)

    def ranks(self) -> List[int]:
        return [mx.rank(m) for m in self.maps]

    def is_injective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.source.dims))

    def is_surjective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.target.dims))

    def is_isomorphism(self) -> bool:
        return self.source.dims == self.target.dims and all(mx.is_invertible(m) for m in self.maps)

    def inverse(self) -> 'Hom':
        return Hom(self.target, self.source, [mx.inverse(m) for m in self.maps])

    def flatten(self) -> List:
        """Vertex maps concatenated, each read row by row."""
        out = []
        for m in self.maps:
            for row in mx.to_rows(m):
                out.extend(row)
        return out

    def apply(self, vertex: int, vec: List) -> List:
        return mx.mat_vec(self.maps[vertex], vec)

    def generator_images(self) -> List[List]:
        """Images of the generators of a free source."""
        images = []
        for k in range(len(self.source.generators)):
            v, pos = self.source.generator_position(k)
            images.append(mx.column(self.maps[v], pos))
        return images

    def __eq__(self, other):
        return (isinstance(other, Hom) and self.source is other.source
                and self.target is other.target
                and all(mx.equal(a, b) for a, b in zip(self.maps, other.maps)))

    def __repr__(self):
        return f"<Hom {self.source.label} -> {self.target.label}>"


def hom_from_flat(source: Rep, target: Rep, flat: Sequence) -> Hom:
    """Inverse of Hom.flatten."""
    maps, pos = [], 0
    for v in range(len(source.dims)):
        rows, cols = target.dims[v], source.dims[v]
        data = [list(flat[pos + r * cols: pos + (r + 1) * cols]) for r in range(rows)]
        maps.append(mx.from_rows(data, source.field, cols=cols) if rows else mx.zeros(0, cols, source.field))
        pos += rows * cols
    return Hom(source, target, maps)


def rep_from_rows(a: Algebra, dims: Sequence[int], rows_by_arrow: Dict[str, Sequence[Sequence]],
                  name: Optional[str] = None) -> Rep:
    """
    A representation from named arrow matrices; omitted arrows act as zero.

    Raises:
        ValueError: For an unknown arrow name or a relation that does not act as zero
        DimensionMismatch: If a matrix has the wrong shape
    """
    field = a.field
    given = {a.quiver.arrow(arrow).index: rows for arrow, rows in rows_by_arrow.items()}
    maps = []
    for arrow in a.quiver.arrows:
        shape = (dims[arrow.target], dims[arrow.source])
        rows = given.get(arrow.index)
        if rows is None or not shape[0]:
            maps.append(mx.zeros(*shape, field))
        else:
            maps.append(mx.from_rows(rows, field, cols=shape[1]))
    return Rep(a, dims, maps, name=name)


# =============================================================================
# Free and projective modules
# =============================================================================

def free_module(a: Algebra, generators: Sequence[int], name: Optional[str] = None) -> Rep:
    """
    ⊕_k Λe_{v_k}, with basis at vertex w the paths v_k -> w of each summand.

    Raises:
        UnknownVertex: If a generator vertex is out of range
    """
    generators = list(generators)
    for v in generators:
        if not 0 <= v < a.vertex_count:
            raise UnknownVertex(f"Unknown vertex {v} for {a.name}")
    layout: List[List[Tuple[int, int]]] = [[] for _ in range(a.vertex_count)]
    for k, v in enumerate(generators):
        for w in range(a.vertex_count):
            for i in a.paths_between(v, w):
                layout[w].append((k, i))
    positions = [{entry: r for r, entry in enumerate(layout[w])} for w in range(a.vertex_count)]

    maps = []
    for arrow in a.quiver.arrows:
        dod: Dict[int, Dict[int, object]] = {}
        arrow_i = a.arrow_element(arrow.index)
        for col, (k, i) in enumerate(layout[arrow.source]):
            for j, c in a.product(arrow_i, i).items():
                dod.setdefault(positions[arrow.target][(k, j)], {})[col] = c
        maps.append(mx.from_dod(dod, len(layout[arrow.target]), len(layout[arrow.source]), a.field))

    rep = Rep(a, [len(layout[w]) for w in range(a.vertex_count)], maps, name=name, check=False)
    rep.generators = generators
    rep.free_layout = layout
    return rep


def projective(a: Algebra, vertex, name: Optional[str] = None) -> Rep:
    """The indecomposable projective Λe_vertex."""
    v = a.quiver.vertex(vertex)
    cache = _algebra_cache(a, 'projective')
    if v not in cache:
        cache[v] = free_module(a, [v], name=name or f"P({a.quiver.vertices[v]})")
    return cache[v]


def regular_module(a: Algebra) -> Rep:
    """Λ as a left module, ⊕_v Λe_v."""
    cache = _algebra_cache(a, 'regular')
    if 'rep' not in cache:
        cache['rep'] = free_module(a, range(a.vertex_count), name=a.name)
    return cache['rep']


def zero_rep(a: Algebra) -> Rep:
    rep = Rep(a, [0] * a.vertex_count,
              [mx.zeros(0, 0, a.field) for _ in range(a.arrow_count)], name='0', check=False)
    rep.generators = []
    rep.free_layout = [[] for _ in range(a.vertex_count)]
    return rep


def hom_from_generators(free: Rep, target: Rep, images: Sequence[Sequence]) -> Hom:
    """
    The homomorphism out of a free module sending generator k to images[k].

    Column (k, p) of the vertex-w map is target(p)·images[k].
    """
    free.check_algebra(target)
    a = free.algebra
    if len(images) != len(free.generators):
        raise DimensionMismatch(f"Got {len(images)} images for {len(free.generators)} generators")
    maps = []
    for w in range(a.vertex_count):
        columns = []
        for k, i in free.free_layout[w]:
            columns.append(mx.mat_vec(target.basis_matrix(i), list(images[k])))
        maps.append(mx.from_columns(columns, target.dims[w], a.field))
    return Hom(free, target, maps)


def simple(a: Algebra, vertex, name: Optional[str] = None) -> Rep:
    """The simple module at a vertex."""
    v = a.quiver.vertex(vertex)
    dims = [1 if w == v else 0 for w in range(a.vertex_count)]
    maps = [mx.zeros(dims[arr.target], dims[arr.source], a.field) for arr in a.quiver.arrows]
    return Rep(a, dims, maps, name=name or f"S({a.quiver.vertices[v]})", check=False)


def semisimple_top(a: Algebra) -> Rep:
    """Λ/rad Λ: one copy of each simple."""
    cache = _algebra_cache(a, 'top')
    if 'rep' not in cache:
        dims = [1] * a.vertex_count
        maps = [mx.zeros(1, 1, a.field) for _ in a.quiver.arrows]
        cache['rep'] = Rep(a, dims, maps, name=f"top({a.name})", check=False)
    return cache['rep']


def _algebra_cache(a: Algebra, kind: str) -> dict:
    caches = a.__dict__.setdefault('_rep_caches', {})
    return caches.setdefault(kind, {})
