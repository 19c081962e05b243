"""
Bimodules and tensor products over an algebra.

A B-module on the right is a left module over B^op, so a C-B-bimodule is a
representation of C ⊗ B^op. The tensor product x ⊗_B y is the quotient of
⊕_j x e_j ⊗_k e_j y by the relations (m·b) ⊗ n = m ⊗ (b·n), one family per
arrow b of B. Basis vectors of x e_j ⊗ e_j y are indexed x-outer, y-inner.
"""

import logging
import random
from typing import Dict, List, Optional, Sequence, Tuple

from algebras.algebra import Algebra, enveloping, opposite, point_algebra, tensor_algebra
from common.errors import AlgebraMismatch
from linalg import matrix as mx
from linalg.matrix import Subspace
from reps.morphisms import cokernel
from reps.rep import Hom, Rep, free_module, hom_from_generators

logger = logging.getLogger(__name__)


class Block:
    """The summand x_(c,j) ⊗ y_(j,d) inside an unreduced tensor space."""

    __slots__ = ('middle', 'offset', 'left_dim', 'right_dim')

    def __init__(self, middle: int, offset: int, left_dim: int, right_dim: int):
        self.middle = middle
        self.offset = offset
        self.left_dim = left_dim
        self.right_dim = right_dim

    @property
    def size(self) -> int:
        return self.left_dim * self.right_dim

    def __repr__(self):
        return f"<Block j={self.middle} at {self.offset} {self.left_dim}x{self.right_dim}>"


class TensorData:
    """
    How x ⊗_B y was built: the middle algebra, the outer factors and, for each
    result vertex, the unreduced blocks with the quotient maps.
    """

    def __init__(self, x: Rep, y: Rep, middle: Algebra, left: Optional[Algebra], right: Optional[Algebra]):
        self.x = x
        self.y = y
        self.middle = middle
        self.left = left
        self.right = right
        self.blocks: List[List[Block]] = []
        self.relations: List[Subspace] = []
        self.projectors: List = []
        self.sections: List = []

    @property
    def right_count(self) -> int:
        return self.right.vertex_count if self.right is not None else 1

    def vertex(self, c: Optional[int], d: Optional[int]) -> int:
        """Result vertex of the outer pair (c, d); None stands for a missing factor."""
        return (c or 0) * self.right_count + (d or 0)

    def outer_pairs(self) -> List[Tuple[Optional[int], Optional[int]]]:
        cs = range(self.left.vertex_count) if self.left is not None else [None]
        ds = range(self.right.vertex_count) if self.right is not None else [None]
        return [(c, d) for c in cs for d in ds]

    def x_vertex(self, c: Optional[int], j: int) -> int:
        return self.x.algebra.vertex_of(c, j) if self.left is not None else j

    def y_vertex(self, j: int, d: Optional[int]) -> int:
        return self.y.algebra.vertex_of(j, d) if self.right is not None else j

    def x_middle_arrow(self, c: Optional[int], b: int) -> int:
        return self.x.algebra.right_arrow(c, b) if self.left is not None else b

    def y_middle_arrow(self, b: int, d: Optional[int]) -> int:
        return self.y.algebra.left_arrow(b, d) if self.right is not None else b

    def block(self, v: int, j: int) -> Block:
        for block in self.blocks[v]:
            if block.middle == j:
                return block
        raise KeyError(j)

    def unreduced_dim(self, v: int) -> int:
        return sum(b.size for b in self.blocks[v])

    def __repr__(self):
        return f"<TensorData {self.x.label} ⊗_{self.middle.name} {self.y.label}>"


# =============================================================================
# Tensor products
# =============================================================================

def _middle_structure(x: Rep, y: Rep, middle: Optional[Algebra]) -> Tuple[Algebra, Optional[Algebra], Optional[Algebra]]:
    """(B, C, D) with x over C ⊗ B^op (or B^op) and y over B ⊗ D (or B)."""
    if middle is not None:
        candidates = [middle]
    else:
        candidates = []
        if y.algebra.tensor_factors is not None:
            candidates.append(y.algebra.tensor_factors[0])
        candidates.append(y.algebra)

    for b in candidates:
        b_op = opposite(b)
        if y.algebra is b:
            d = None
        elif y.algebra.tensor_factors is not None and y.algebra.tensor_factors[0] is b:
            d = y.algebra.tensor_factors[1]
        else:
            continue
        if x.algebra is b_op:
            return b, None, d
        if x.algebra.tensor_factors is not None and x.algebra.tensor_factors[1] is b_op:
            return b, x.algebra.tensor_factors[0], d
    raise AlgebraMismatch(
        f"No common middle algebra for {x.label} over {x.algebra.name} and {y.label} over {y.algebra.name}"
    )


def _result_algebra(field, left: Optional[Algebra], right: Optional[Algebra]) -> Algebra:
    if left is not None and right is not None:
        return tensor_algebra(left, right)
    if left is not None:
        return left
    if right is not None:
        return right
    return point_algebra(field)


def tensor_over(x: Rep, y: Rep, middle: Optional[Algebra] = None, name: Optional[str] = None) -> Rep:
    """
    x ⊗_B y with its outer actions.

    Args:
        x: Module over C ⊗ B^op, or over B^op
        y: Module over B ⊗ D, or over B
        middle: B, inferred from y when omitted
        name: Optional display name

    Returns:
        A module over C ⊗ D, C, D or the point algebra

    Raises:
        AlgebraMismatch: If the middle structures do not match
    """
    b, left, right = _middle_structure(x, y, middle)
    cache = x.cache('tensor')
    key = (id(y), id(b))
    if key in cache:
        return cache[key][1]

    field = x.field
    data = TensorData(x, y, b, left, right)
    result_alg = _result_algebra(field, left, right)
    pairs = data.outer_pairs()

    for c, d in pairs:
        blocks, offset = [], 0
        for j in range(b.vertex_count):
            block = Block(j, offset, x.dims[data.x_vertex(c, j)], y.dims[data.y_vertex(j, d)])
            blocks.append(block)
            offset += block.size
        data.blocks.append(blocks)

        relations = []
        for arrow in b.quiver.arrows:
            s, t = arrow.source, arrow.target
            xb = mx.to_dod(mx.transpose(x.maps[data.x_middle_arrow(c, arrow.index)]))
            yb = mx.to_dod(mx.transpose(y.maps[data.y_middle_arrow(arrow.index, d)]))
            bs, bt = blocks[s], blocks[t]
            for r in range(bt.left_dim):
                for q in range(bs.right_dim):
                    vec: Dict[int, object] = {}
                    # (m·b) ⊗ n in summand s
                    for i, value in xb.get(r, {}).items():
                        idx = bs.offset + i * bs.right_dim + q
                        vec[idx] = vec.get(idx, field.zero) + value
                    # minus m ⊗ (b·n) in summand t
                    for k, value in yb.get(q, {}).items():
                        idx = bt.offset + r * bt.right_dim + k
                        vec[idx] = vec.get(idx, field.zero) - value
                    relations.append(vec)
        sub = Subspace.span_sparse(field, offset, relations)
        data.relations.append(sub)
        data.projectors.append(sub.projector())
        data.sections.append(sub.section())

    dims = [p.shape[0] for p in data.projectors]
    maps = []
    for arrow in result_alg.quiver.arrows:
        maps.append(_outer_action(data, result_alg, arrow.index))
    result = Rep(result_alg, dims, maps, name=name or f"{x.label}⊗{y.label}", check=False)
    result.cache('origin')['tensor'] = data
    cache[key] = (y, result)
    logger.debug(f"Tensor {result.label}: dims {dims} over {result_alg.name}")
    return result


def _outer_action(data: TensorData, result_alg: Algebra, k: int):
    """Matrix of result arrow k on the reduced spaces."""
    x, y, field = data.x, data.y, data.x.field
    if data.left is not None and data.right is not None:
        kind, first, second = result_alg.arrow_origin(k)
    elif data.left is not None:
        kind, first, second = 'left', k, None
    else:
        kind, first, second = 'right', None, k

    if kind == 'left':
        arrow = data.left.quiver.arrows[first]
        src, tgt = data.vertex(arrow.source, second), data.vertex(arrow.target, second)
        pieces = []
        for j in range(data.middle.vertex_count):
            xa = x.maps[x.algebra.left_arrow(first, j)]
            pieces.append(mx.kron(xa, mx.identity(data.blocks[src][j].right_dim, field), field))
    else:
        arrow = data.right.quiver.arrows[second]
        src, tgt = data.vertex(first, arrow.source), data.vertex(first, arrow.target)
        pieces = []
        for j in range(data.middle.vertex_count):
            yd = y.maps[y.algebra.right_arrow(j, second)]
            pieces.append(mx.kron(mx.identity(data.blocks[src][j].left_dim, field), yd, field))
    unreduced = mx.block_diagonal(pieces, field)
    return mx.compose(data.projectors[tgt], unreduced, data.sections[src])


def tensor_data(w: Rep) -> TensorData:
    """
    Raises:
        ValueError: If w was not produced by tensor_over
    """
    data = w.cache('origin').get('tensor')
    if data is None:
        raise ValueError(f"{w.label} is not a tensor product")
    return data


def tensor_over_homs(f: Hom, g: Hom, middle: Optional[Algebra] = None) -> Hom:
    """f ⊗_B g : x ⊗ y -> x' ⊗ y'."""
    source = tensor_over(f.source, g.source, middle)
    target = tensor_over(f.target, g.target, middle)
    sd, td = tensor_data(source), tensor_data(target)
    field = f.field
    maps = []
    for v, (c, d) in enumerate(sd.outer_pairs()):
        pieces = {}
        for j in range(sd.middle.vertex_count):
            pieces[(j, j)] = mx.kron(f.maps[sd.x_vertex(c, j)], g.maps[sd.y_vertex(j, d)], field)
        unreduced = mx.block_matrix(
            pieces,
            [blk.size for blk in td.blocks[v]],
            [blk.size for blk in sd.blocks[v]],
            field,
        )
        maps.append(mx.compose(td.projectors[v], unreduced, sd.sections[v]))
    return Hom(source, target, maps)


def tensor_functor_on_hom(n: Rep, f: Hom, middle: Optional[Algebra] = None) -> Hom:
    """n ⊗_B f."""
    return tensor_over_homs(Hom.identity(n), f, middle)


def hom_tensor_functor(f: Hom, m: Rep, middle: Optional[Algebra] = None) -> Hom:
    """f ⊗_B m."""
    return tensor_over_homs(f, Hom.identity(m), middle)


# =============================================================================
# Regular and twisted bimodules
# =============================================================================

def regular_bimodule(a: Algebra, arrow_scalars: Optional[Dict[int, object]] = None) -> Rep:
    """
    a as a module over a ⊗ a^op.

    Vertex i×j carries the paths j -> i. The arrow a×j multiplies on the
    left, i×b^op multiplies on the right by b, rescaled by arrow_scalars[b]
    when given (the bimodule twisted on the right by that automorphism).

    Raises:
        ValueError: If the scalars do not define an automorphism
    """
    cache_key = None if arrow_scalars is None else tuple(sorted(arrow_scalars.items()))
    caches = a.__dict__.setdefault('_rep_caches', {}).setdefault('bimodule', {})
    if cache_key in caches:
        return caches[cache_key]
    env = enveloping(a)
    field = a.field
    n = a.vertex_count
    layout = {(i, j): a.paths_between(j, i) for i in range(n) for j in range(n)}
    positions = {key: {p: r for r, p in enumerate(paths)} for key, paths in layout.items()}

    maps = []
    for k in range(env.arrow_count):
        kind, first, second = env.arrow_origin(k)
        if kind == 'left':
            arrow = a.quiver.arrows[first]
            j = second
            src, tgt = (arrow.source, j), (arrow.target, j)
            element = a.arrow_element(first)
            products = [a.product(element, p) for p in layout[src]]
        else:
            arrow = a.quiver.arrows[second]
            i = first
            # b^op runs target(b) -> source(b) in a^op
            src, tgt = (i, arrow.target), (i, arrow.source)
            element = a.arrow_element(second)
            scalar = field.one if arrow_scalars is None else field(arrow_scalars.get(second, 1))
            products = [{q: scalar * c for q, c in a.product(p, element).items()} for p in layout[src]]
        dod: Dict[int, Dict[int, object]] = {}
        for col, prod in enumerate(products):
            for q, c in prod.items():
                dod.setdefault(positions[tgt][q], {})[col] = c
        maps.append(mx.from_dod(dod, len(layout[tgt]), len(layout[src]), field))

    dims = [len(layout[env.vertex_pair(v)]) for v in range(env.vertex_count)]
    name = a.name if arrow_scalars is None else f"{a.name}_σ"
    result = Rep(env, dims, maps, name=name, check=arrow_scalars is not None)
    result.cache('origin')['bimodule'] = (a, layout)
    caches[cache_key] = result
    return result


def twisted_bimodule(a: Algebra, arrow_scalars: Dict[int, object]) -> Rep:
    """The bimodule a_σ for the automorphism σ scaling each arrow."""
    for arrow, value in arrow_scalars.items():
        if not a.field(value):
            raise ValueError(f"Scalar for arrow {a.quiver.arrows[arrow].name} must be nonzero")
    return regular_bimodule(a, arrow_scalars)


def _bimodule_paths(a: Algebra, i: int, j: int) -> List[int]:
    return a.paths_between(j, i)


# =============================================================================
# Unit and associativity isomorphisms
# =============================================================================

def left_unit(y: Rep, middle: Optional[Algebra] = None) -> Hom:
    """μ: B ⊗_B y -> y, p ⊗ n ↦ p·n."""
    b = middle
    if b is None:
        b = y.algebra.tensor_factors[0] if y.algebra.tensor_factors is not None else y.algebra
    w = tensor_over(regular_bimodule(b), y, b)
    data = tensor_data(w)
    field = y.field
    maps = []
    for v, (i, d) in enumerate(data.outer_pairs()):
        columns = []
        for blk in data.blocks[v]:
            j = blk.middle
            for p in _bimodule_paths(b, i, j):
                _, word = b.basis[p]
                path = (data.y_vertex(j, d), tuple(data.y_middle_arrow(arr, d) for arr in word))
                action = y.path_matrix(path)
                for q in range(blk.right_dim):
                    columns.append(mx.column(action, q))
        unreduced = mx.from_columns(columns, y.dims[v], field)
        maps.append(mx.matmul(unreduced, data.sections[v]))
    return Hom(w, y, maps)


def right_unit(x: Rep, middle: Optional[Algebra] = None) -> Hom:
    """x ⊗_B B -> x, m ⊗ p ↦ m·p."""
    b = middle
    if b is None:
        factors = x.algebra.tensor_factors
        b = opposite(factors[1] if factors is not None else x.algebra)
    w = tensor_over(x, regular_bimodule(b), b)
    data = tensor_data(w)
    field = x.field
    maps = []
    for v, (c, j) in enumerate(data.outer_pairs()):
        columns = []
        for blk in data.blocks[v]:
            i = blk.middle
            paths = _bimodule_paths(b, i, j)
            for r in range(blk.left_dim):
                for p in paths:
                    _, word = b.basis[p]
                    path = (data.x_vertex(c, i), tuple(data.x_middle_arrow(c, arr) for arr in reversed(word)))
                    columns.append(mx.column(x.path_matrix(path), r))
        unreduced = mx.from_columns(columns, x.dims[v], field)
        maps.append(mx.matmul(unreduced, data.sections[v]))
    return Hom(w, x, maps)


def associator(x: Rep, y: Rep, z: Rep) -> Hom:
    """(x ⊗ y) ⊗ z -> x ⊗ (y ⊗ z), (m ⊗ n) ⊗ p ↦ m ⊗ (n ⊗ p)."""
    xy = tensor_over(x, y)
    yz = tensor_over(y, z)
    lhs = tensor_over(xy, z)
    rhs = tensor_over(x, yz)
    ld, rd = tensor_data(lhs), tensor_data(rhs)
    xyd, yzd = tensor_data(xy), tensor_data(yz)
    if lhs.algebra is not rhs.algebra:
        raise AlgebraMismatch("Both bracketings must land over the same algebra")
    field = x.field
    maps = []
    for v, (a, d) in enumerate(ld.outer_pairs()):
        # lift the left bracketing to ⊕_k (⊕_j x⊗y)⊗z, indexed k-outer
        lift_blocks, lifted_offsets, total = [], {}, 0
        for blk in ld.blocks[v]:
            k = blk.middle
            xy_v = xyd.vertex(a, k)
            lift_blocks.append(mx.kron(xyd.sections[xy_v], mx.identity(blk.right_dim, field), field))
            lifted_offsets[k] = total
            total += xyd.unreduced_dim(xy_v) * blk.right_dim
        lift = mx.matmul(mx.block_diagonal(lift_blocks, field), ld.sections[v])

        # reorder to ⊕_j x⊗(⊕_k y⊗z) and reduce y⊗z blockwise
        perm: Dict[int, Dict[int, object]] = {}
        reduce_blocks, j_offset = [], 0
        for rblk in rd.blocks[v]:
            j = rblk.middle
            yz_v = yzd.vertex(j, d)
            yz_unreduced = yzd.unreduced_dim(yz_v)
            for kblk in yzd.blocks[yz_v]:
                k = kblk.middle
                xy_v = xyd.vertex(a, k)
                inner = xyd.block(xy_v, j)
                dz = kblk.right_dim
                for r in range(rblk.left_dim):
                    for q in range(kblk.left_dim):
                        for w in range(dz):
                            source = lifted_offsets[k] + (inner.offset + r * inner.right_dim + q) * dz + w
                            target = j_offset + r * yz_unreduced + kblk.offset + q * dz + w
                            perm[target] = {source: field.one}
            reduce_blocks.append(mx.kron(mx.identity(rblk.left_dim, field), yzd.projectors[yz_v], field))
            j_offset += rblk.left_dim * yz_unreduced
        permutation = mx.from_dod(perm, j_offset, total, field)
        reduce = mx.block_diagonal(reduce_blocks, field)
        maps.append(mx.compose(rd.projectors[v], reduce, permutation, lift))
    return Hom(lhs, rhs, maps)


# =============================================================================
# Construction helpers
# =============================================================================

def random_module(a: Algebra, generators: Sequence[int], relations: int,
                  rng: random.Random, name: Optional[str] = None) -> Rep:
    """
    A random quotient of the free module on the given generator vertices by
    the submodule generated by `relations` random elements.
    """
    free = free_module(a, generators)
    if relations == 0 or free.total_dim == 0:
        free.name = name
        return free
    field = a.field
    vertices, images = [], []
    for _ in range(relations):
        v = rng.randrange(a.vertex_count)
        if free.dims[v] == 0:
            continue
        vertices.append(v)
        images.append([field.random_element(rng) for _ in range(free.dims[v])])
    if not vertices:
        free.name = name
        return free
    source = free_module(a, vertices)
    quotient, _ = cokernel(hom_from_generators(source, free, images), name=name)
    return quotient

