"""
Hom spaces, kernels, cokernels, covers, duals and restrictions.

Everything is computed vertexwise with the RREF Subspace machinery, so
induced maps and chosen complements are deterministic.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from algebras.algebra import Algebra, opposite
from common.errors import AlgebraMismatch, HypothesisFailed
from linalg import matrix as mx
from linalg.matrix import Subspace
from reps.rep import Hom, Rep, free_module, hom_from_flat, hom_from_generators, zero_rep

logger = logging.getLogger(__name__)


# =============================================================================
# Hom spaces
# =============================================================================

class HomSpace:
    """
    Hom(x, y) with a basis and coordinates.

    Homs are points of the flat space ⊕_v Hom_k(x_v, y_v) (see Hom.flatten);
    `subspace` is Hom(x, y) inside it.
    """

    def __init__(self, source: Rep, target: Rep, subspace: Subspace):
        self.source = source
        self.target = target
        self.subspace = subspace
        self.basis: List[Hom] = [hom_from_flat(source, target, v) for v in subspace.vectors()]

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def coordinates(self, f: Hom) -> List:
        return self.subspace.coordinates(f.flatten())

    def combination(self, coeffs: Sequence) -> Hom:
        flat = [self.source.field.zero] * self.subspace.ambient_dim
        for c, row in zip(coeffs, self.subspace.rows):
            if c:
                for j, v in row.items():
                    flat[j] += c * v
        return hom_from_flat(self.source, self.target, flat)

    def __repr__(self):
        return f"<HomSpace {self.source.label} -> {self.target.label} dim={self.dim}>"


def _flat_offsets(x: Rep, y: Rep) -> List[int]:
    offsets, total = [], 0
    for v in range(len(x.dims)):
        offsets.append(total)
        total += y.dims[v] * x.dims[v]
    offsets.append(total)
    return offsets


def hom_space(x: Rep, y: Rep) -> HomSpace:
    """
    Solve the intertwining equations F_t·X(a) = Y(a)·F_s for all arrows.

    Raises:
        AlgebraMismatch: If x and y are over different algebras
    """
    x.check_algebra(y)
    cache = x.cache('hom')
    key = id(y)
    if key in cache:
        return cache[key][1]

    field = x.field
    offsets = _flat_offsets(x, y)
    ambient = offsets[-1]
    if x.generators is not None:
        # Hom(⊕ Λe_k, y) ≅ ⊕ y_{v_k}
        vectors = []
        for k, v in enumerate(x.generators):
            for r in range(y.dims[v]):
                image = [field.zero] * y.dims[v]
                image[r] = field.one
                images = [[field.zero] * y.dims[w] for w in x.generators]
                images[k] = image
                vectors.append(hom_from_generators(x, y, images).flatten())
        space = HomSpace(x, y, Subspace.span(field, ambient, vectors))
    else:
        dod: Dict[int, Dict[int, object]] = {}
        row = 0
        for arrow in x.algebra.quiver.arrows:
            s, t = arrow.source, arrow.target
            xa = mx.to_dod(x.maps[arrow.index])
            ya = mx.to_dod(y.maps[arrow.index])
            dxs, dxt = x.dims[s], x.dims[t]
            for r in range(y.dims[t]):
                for c in range(dxs):
                    eq: Dict[int, object] = {}
                    # (F_t X_a)[r, c] = sum_k F_t[r, k] X_a[k, c]
                    for k, xrow in xa.items():
                        if c in xrow:
                            idx = offsets[t] + r * dxt + k
                            eq[idx] = eq.get(idx, field.zero) + xrow[c]
                    # (Y_a F_s)[r, c] = sum_k Y_a[r, k] F_s[k, c]
                    for k, coeff in ya.get(r, {}).items():
                        idx = offsets[s] + k * dxs + c
                        eq[idx] = eq.get(idx, field.zero) - coeff
                    eq = {i: v for i, v in eq.items() if v}
                    if eq:
                        dod[row] = eq
                        row += 1
        space = HomSpace(x, y, mx.kernel_sparse(dod, row, ambient, field))
    cache[key] = (y, space)
    return space


def hom_basis(x: Rep, y: Rep) -> List[Hom]:
    return hom_space(x, y).basis


# =============================================================================
# Kernels, cokernels, images
# =============================================================================

def _sub_rep(x: Rep, subspaces: List[Subspace], name: Optional[str]) -> Tuple[Rep, Hom]:
    """Subrepresentation spanned vertexwise, with its inclusion."""
    field = x.field
    columns = [s.basis_columns() for s in subspaces]
    maps = []
    for arrow in x.algebra.quiver.arrows:
        moved = mx.matmul(x.maps[arrow.index], columns[arrow.source])
        maps.append(subspaces[arrow.target].coordinate_matrix(moved))
    sub = Rep(x.algebra, [s.dim for s in subspaces], maps, name=name, check=False)
    return sub, Hom(sub, x, columns)


def kernel(f: Hom, name: Optional[str] = None) -> Tuple[Rep, Hom]:
    """Kernel of f with its inclusion into f.source."""
    return _sub_rep(f.source, [mx.kernel(m) for m in f.maps], name)


def image(f: Hom, name: Optional[str] = None) -> Tuple[Rep, Hom]:
    """Image of f with its inclusion into f.target."""
    return _sub_rep(f.target, [Subspace.column_space(m) for m in f.maps], name)


def quotient(y: Rep, subspaces: List[Subspace], name: Optional[str] = None) -> Tuple[Rep, Hom]:
    """y modulo a vertexwise submodule, with the projection."""
    projectors = [s.projector() for s in subspaces]
    sections = [s.section() for s in subspaces]
    maps = []
    for arrow in y.algebra.quiver.arrows:
        maps.append(mx.compose(projectors[arrow.target], y.maps[arrow.index], sections[arrow.source]))
    q = Rep(y.algebra, [p.shape[0] for p in projectors], maps, name=name, check=False)
    return q, Hom(y, q, projectors)


def cokernel(f: Hom, name: Optional[str] = None) -> Tuple[Rep, Hom]:
    """Cokernel of f with the projection from f.target."""
    return quotient(f.target, [Subspace.column_space(m) for m in f.maps], name)


def radical_subspaces(x: Rep) -> List[Subspace]:
    """rad(x)_v = sum of the images of the arrows ending at v."""
    field = x.field
    vectors: List[List] = [[] for _ in x.dims]
    for arrow in x.algebra.quiver.arrows:
        m = x.maps[arrow.index]
        for j in range(m.shape[1]):
            vectors[arrow.target].append(mx.column(m, j))
    return [Subspace.span(field, x.dims[v], vectors[v]) for v in range(len(x.dims))]


def radical(x: Rep) -> Tuple[Rep, Hom]:
    return _sub_rep(x, radical_subspaces(x), f"rad({x.label})")


def top(x: Rep) -> Tuple[Rep, Hom]:
    """x / rad x with the projection."""
    return quotient(x, radical_subspaces(x), f"top({x.label})")


# =============================================================================
# Direct sums
# =============================================================================

def direct_sum(summands: Sequence[Rep], name: Optional[str] = None) -> Tuple[Rep, List[Hom], List[Hom]]:
    """
    ⊕ summands with inclusions and projections.

    Free summands give a free sum whose generators are concatenated.
    """
    if not summands:
        raise ValueError("direct_sum needs at least one summand")
    a = summands[0].algebra
    for s in summands[1:]:
        summands[0].check_algebra(s)
    field = a.field
    if all(s.generators is not None for s in summands):
        total = free_module(a, [v for s in summands for v in s.generators], name=name)
    else:
        maps = [mx.block_diagonal([s.maps[k] for s in summands], field) for k in range(a.arrow_count)]
        dims = [sum(s.dims[v] for s in summands) for v in range(a.vertex_count)]
        total = Rep(a, dims, maps, name=name, check=False)

    inclusions, projections = [], []
    offsets = [0] * a.vertex_count
    for s in summands:
        inc_maps, proj_maps = [], []
        for v in range(a.vertex_count):
            d, n = s.dims[v], total.dims[v]
            inc = {offsets[v] + i: {i: field.one} for i in range(d)}
            inc_maps.append(mx.from_dod(inc, n, d, field))
            proj = {i: {offsets[v] + i: field.one} for i in range(d)}
            proj_maps.append(mx.from_dod(proj, d, n, field))
            offsets[v] += d
        inclusions.append(Hom(s, total, inc_maps))
        projections.append(Hom(total, s, proj_maps))
    if name is None:
        total.name = ' ⊕ '.join(s.label for s in summands)
    return total, inclusions, projections


def hom_into_sum(target: Rep, parts: Sequence[Hom], inclusions: Sequence[Hom]) -> Hom:
    """Σ inclusion_k ∘ part_k."""
    result = inclusions[0].compose(parts[0])
    for inc, part in zip(inclusions[1:], parts[1:]):
        result = result + inc.compose(part)
    return result


# =============================================================================
# Projective covers
# =============================================================================

def projective_cover(x: Rep) -> Tuple[Rep, Hom]:
    """
    Minimal projective cover ⊕ P(v)^{m_v} -> x.

    Generators are the standard coset representatives of x_v / rad(x)_v, so
    the kernel lies in the radical.
    """
    cache = x.cache('cover')
    if 'cover' in cache:
        return cache['cover']
    field = x.field
    generators, images = [], []
    for v, rad in enumerate(radical_subspaces(x)):
        for q in rad.complement_indices():
            vec = [field.zero] * x.dims[v]
            vec[q] = field.one
            generators.append(v)
            images.append(vec)
    p = free_module(x.algebra, generators, name=f"P[{x.label}]")
    epi = hom_from_generators(p, x, images)
    cache['cover'] = (p, epi)
    return p, epi


def is_projective(x: Rep) -> bool:
    p, _ = projective_cover(x)
    return p.total_dim == x.total_dim


def as_free(x: Rep) -> Tuple[Rep, Hom]:
    """
    A free module with an isomorphism onto the projective module x.

    Raises:
        HypothesisFailed: If x is not projective
    """
    if x.generators is not None:
        return x, Hom.identity(x)
    p, epi = projective_cover(x)
    if p.total_dim != x.total_dim:
        raise HypothesisFailed(f"{x.label} is not projective (cover has dim {p.total_dim}, module {x.total_dim})")
    return p, epi


# =============================================================================
# Duality and restriction
# =============================================================================

def dual(x: Rep) -> Rep:
    """D(x) = Hom_k(x, k) as a module over the opposite algebra."""
    cache = x.cache('dual')
    if 'rep' not in cache:
        op = opposite(x.algebra)
        maps = [mx.transpose(m) for m in x.maps]
        cache['rep'] = Rep(op, x.dims, maps, name=f"D({x.label})", check=False)
    return cache['rep']


def dual_hom(f: Hom) -> Hom:
    """D(f): D(target) -> D(source)."""
    return Hom(dual(f.target), dual(f.source), [mx.transpose(m) for m in f.maps])


def restrict(b: Rep, side: str) -> Rep:
    """
    Forget one action of a module over A ⊗ B.

    side='left' gives the A-module ⊕_j b_(i,j) at vertex i; side='right' gives
    the B-module ⊕_i b_(i,j) at vertex j.

    Raises:
        NotTensorAlgebra: If b is not over a tensor algebra
        ValueError: For an unknown side
    """
    if side not in ('left', 'right'):
        raise ValueError(f"Unknown side '{side}'")
    t = b.algebra
    left, right = t.require_tensor()
    cache = b.cache('restrict')
    if side in cache:
        return cache[side]
    field = b.field
    if side == 'left':
        target_alg = left
        groups = [[t.vertex_of(i, j) for j in range(right.vertex_count)] for i in range(left.vertex_count)]
        maps = []
        for arrow in left.quiver.arrows:
            blocks = [b.maps[t.left_arrow(arrow.index, j)] for j in range(right.vertex_count)]
            maps.append(mx.block_diagonal(blocks, field))
    else:
        target_alg = right
        groups = [[t.vertex_of(i, j) for i in range(left.vertex_count)] for j in range(right.vertex_count)]
        maps = []
        for arrow in right.quiver.arrows:
            blocks = [b.maps[t.right_arrow(i, arrow.index)] for i in range(left.vertex_count)]
            maps.append(mx.block_diagonal(blocks, field))
    dims = [sum(b.dims[v] for v in group) for group in groups]
    result = Rep(target_alg, dims, maps, name=f"{b.label}|{side}", check=False)
    cache[side] = result
    return result


def restrict_hom(f: Hom, side: str) -> Hom:
    t = f.source.algebra
    left, right = t.require_tensor()
    field = f.field
    if side == 'left':
        groups = [[t.vertex_of(i, j) for j in range(right.vertex_count)] for i in range(left.vertex_count)]
    else:
        groups = [[t.vertex_of(i, j) for i in range(left.vertex_count)] for j in range(right.vertex_count)]
    maps = [mx.block_diagonal([f.maps[v] for v in group], field) for group in groups]
    return Hom(restrict(f.source, side), restrict(f.target, side), maps)


def check_same_algebra(algebra: Algebra, x: Rep):
    if x.algebra is not algebra:
        raise AlgebraMismatch(f"{x.label} is over {x.algebra.name}, expected {algebra.name}")
