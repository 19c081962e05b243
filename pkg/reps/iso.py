"""
Isomorphism testing and splitting off direct summands.

Positive answers always come with a witness that has been checked to be
invertible vertexwise.
"""

import logging
import random
from typing import List, Optional, Tuple

from common import get_settings
from linalg import matrix as mx
from linalg.matrix import Subspace
from reps.morphisms import HomSpace, direct_sum, hom_space, image, kernel
from reps.rep import Hom, Rep, free_module, hom_from_generators, projective

logger = logging.getLogger(__name__)


def _random_hom(space: HomSpace, rng: random.Random) -> Hom:
    field = space.source.field
    return space.combination([field.random_element(rng) for _ in range(space.dim)])


def _rng(seed: Optional[int]) -> random.Random:
    return random.Random(get_settings().seed if seed is None else seed)


# =============================================================================
# Isomorphism
# =============================================================================

def is_isomorphic(x: Rep, y: Rep, seed: Optional[int] = None) -> Tuple[bool, Optional[Hom]]:
    """
    Decide x ≅ y.

    Cheap invariants reject first, then seeded random combinations of a
    Hom(x, y) basis are tried, and finally summands are peeled off one at a
    time with Fitting decompositions of endomorphisms g∘f.

    Returns:
        (True, witness) or (False, None)

    Raises:
        AlgebraMismatch: If x and y are over different algebras
    """
    x.check_algebra(y)
    if x.dims != y.dims:
        return False, None
    if x.total_dim == 0:
        return True, Hom.identity(x) if x is y else Hom.zero(x, y)
    if x is y:
        return True, Hom.identity(x)

    forward = hom_space(x, y)
    if forward.dim != hom_space(x, x).dim or hom_space(y, x).dim != hom_space(y, y).dim:
        return False, None

    rng = _rng(seed)
    for _ in range(get_settings().iso_attempts):
        f = _random_hom(forward, rng)
        if f.is_isomorphism():
            return True, f

    witness = _peel(x, y, rng)
    if witness is None:
        logger.debug(f"No isomorphism {x.label} -> {y.label} after Fitting search")
        return False, None
    return True, witness


def _power(s: Hom, n: int) -> Hom:
    result = Hom.identity(s.source)
    for _ in range(n):
        result = s.compose(result)
    return result


def _non_nilpotent(x: Rep, y: Rep, rng: random.Random) -> Optional[Tuple[Hom, Hom, Hom]]:
    """Some (f, g, (g∘f)^N) with (g∘f)^N nonzero."""
    forward, backward = hom_space(x, y), hom_space(y, x)
    if forward.dim == 0 or backward.dim == 0:
        return None
    n = max(x.dims)
    candidates = []
    for _ in range(get_settings().iso_attempts):
        candidates.append((_random_hom(forward, rng), _random_hom(backward, rng)))
    candidates.extend((f, g) for g in backward.basis for f in forward.basis)
    for f, g in candidates:
        t = _power(g.compose(f), n)
        if not t.is_zero():
            return f, g, t
    return None


def _complement_projections(x: Rep, first: Hom, second: Hom) -> Tuple[Hom, Hom]:
    """Projections x -> A and x -> B for an internal direct sum x = A ⊕ B."""
    field = x.field
    p1, p2 = [], []
    for v in range(len(x.dims)):
        a, b = first.maps[v], second.maps[v]
        da, db = a.shape[1], b.shape[1]
        columns = [mx.column(a, j) for j in range(da)] + [mx.column(b, j) for j in range(db)]
        inv = mx.inverse(mx.from_columns(columns, x.dims[v], field)) if x.dims[v] else mx.zeros(0, 0, field)
        rows = mx.to_rows(inv)
        p1.append(mx.from_rows(rows[:da], field, cols=x.dims[v]) if da else mx.zeros(0, x.dims[v], field))
        p2.append(mx.from_rows(rows[da:], field, cols=x.dims[v]) if db else mx.zeros(0, x.dims[v], field))
    return Hom(x, first.source, p1), Hom(x, second.source, p2)


def _peel(x: Rep, y: Rep, rng: random.Random) -> Optional[Hom]:
    """Isomorphism x -> y built summand by summand, or None."""
    if x.dims != y.dims:
        return None
    if x.total_dim == 0:
        return Hom.zero(x, y)
    found = _non_nilpotent(x, y, rng)
    if found is None:
        return None
    f, g, t = found
    x1, inc1 = image(t)
    x2, inc2 = kernel(t)
    proj1, proj2 = _complement_projections(x, inc1, inc2)
    # g∘f restricts to an automorphism theta of x1
    s = g.compose(f)
    theta = proj1.compose(s.compose(inc1))
    retraction = theta.inverse().compose(proj1.compose(g))
    y2, inc_y2 = kernel(retraction)
    rest = _peel(x2, y2, rng)
    if rest is None:
        return None
    witness = f.compose(inc1.compose(proj1)) + inc_y2.compose(rest.compose(proj2))
    return witness if witness.is_isomorphism() else None


# =============================================================================
# Summands
# =============================================================================

class Splitting:
    """
    An internal decomposition whole = summand ⊕ complement.

    Attributes:
        summand_inclusion: summand -> whole
        summand_projection: whole -> summand
        complement_inclusion: complement -> whole
        complement_projection: whole -> complement
    """

    def __init__(self, whole: Rep, summand: Rep, complement: Rep,
                 summand_inclusion: Hom, summand_projection: Hom,
                 complement_inclusion: Hom, complement_projection: Hom):
        self.whole = whole
        self.summand = summand
        self.complement = complement
        self.summand_inclusion = summand_inclusion
        self.summand_projection = summand_projection
        self.complement_inclusion = complement_inclusion
        self.complement_projection = complement_projection

    def __repr__(self):
        return f"<Splitting {self.whole.label} = {self.summand.label} ⊕ {self.complement.label}>"


def _split_from(x: Rep, t: Rep, u: Hom, e: Hom) -> Splitting:
    """Splitting from u: t -> x and e: x -> t with e∘u = id."""
    c, inc = kernel(e, name=f"{x.label}/{t.label}")
    # id - u∘e lands in ker(e)
    rest = Hom.identity(x) - u.compose(e)
    coords = [Subspace.column_space(m).coordinate_matrix(r) for m, r in zip(inc.maps, rest.maps)]
    return Splitting(x, t, c, u, e, inc, Hom(x, c, coords))


def _split_projective(x: Rep, vertex: int) -> Optional[Splitting]:
    """Split off P(vertex) exactly: some h_v(m) has nonzero e_vertex coefficient."""
    p = projective(x.algebra, vertex)
    _, pos = p.generator_position(0)
    field = x.field
    for h in hom_space(x, p).basis:
        row = mx.to_rows(h.maps[vertex])[pos]
        for c, value in enumerate(row):
            if value:
                m = [field.zero] * x.dims[vertex]
                m[c] = field.one
                u = hom_from_generators(p, x, [m])
                e = h.compose(u)
                # e is an automorphism of P(vertex), End(P(vertex)) being local
                return _split_from(x, p, u, e.inverse().compose(h))
    return None


def split_off_with_maps(x: Rep, t: Rep, seed: Optional[int] = None) -> Optional[Splitting]:
    """
    Find a decomposition x ≅ t ⊕ C.

    Free t is split off one indecomposable projective at a time, which is
    exact. Otherwise a split pair t -> x -> t is searched for, first among
    random and basis pairs, then by peeling Fitting summands of t off x one
    at a time. The peel finds every summand with a local endomorphism ring;
    for other t, None means that no splitting was found.

    Raises:
        AlgebraMismatch: If x and t are over different algebras
    """
    x.check_algebra(t)
    if any(a < b for a, b in zip(x.dims, t.dims)):
        return None
    if t.total_dim == 0:
        return _split_from(x, t, Hom.zero(t, x), Hom.zero(x, t))
    if t.generators is not None:
        return _split_free(x, t)

    into, out = hom_space(t, x), hom_space(x, t)
    if into.dim == 0 or out.dim == 0:
        return None
    rng = _rng(seed)
    candidates = []
    for _ in range(get_settings().iso_attempts):
        candidates.append((_random_hom(into, rng), _random_hom(out, rng)))
    candidates.extend((u, h) for u in into.basis for h in out.basis)
    for u, h in candidates:
        e = h.compose(u)
        if e.is_isomorphism():
            return _split_from(x, t, u, e.inverse().compose(h))

    peeled = _peel_summand(x, t, rng)
    if peeled is None:
        logger.debug(f"No splitting of {t.label} off {x.label} after Fitting search")
        return None
    return _split_from(x, t, *peeled)


def _peel_summand(x: Rep, t: Rep, rng: random.Random) -> Optional[Tuple[Hom, Hom]]:
    """(u: t -> x, e: x -> t) with e∘u = id, built one Fitting summand of t at a time."""
    if t.total_dim == 0:
        return Hom.zero(t, x), Hom.zero(x, t)
    found = _non_nilpotent(t, x, rng)
    if found is None:
        return None
    f, g, power = found
    t1, inc1 = image(power)
    t2, inc2 = kernel(power)
    proj1, proj2 = _complement_projections(t, inc1, inc2)
    # g∘f restricts to an automorphism theta of t1
    theta = proj1.compose(g.compose(f).compose(inc1))
    step = _split_from(x, t1, f.compose(inc1), theta.inverse().compose(proj1.compose(g)))
    rest = _peel_summand(step.complement, t2, rng)
    if rest is None:
        return None
    u2, e2 = rest
    u = step.summand_inclusion.compose(proj1) + step.complement_inclusion.compose(u2.compose(proj2))
    e = inc1.compose(step.summand_projection) + inc2.compose(e2.compose(step.complement_projection))
    if not (e.compose(u) - Hom.identity(t)).is_zero():
        return None
    return u, e


def _split_free(x: Rep, t: Rep) -> Optional[Splitting]:
    current = x
    inclusion = Hom.identity(x)
    images = []
    for v in t.generators:
        step = _split_projective(current, v)
        if step is None:
            return None
        u = inclusion.compose(step.summand_inclusion)
        _, pos = step.summand.generator_position(0)
        images.append(mx.column(u.maps[v], pos))
        inclusion = inclusion.compose(step.complement_inclusion)
        current = step.complement
    u = hom_from_generators(t, x, images)
    # x = u(t) ⊕ current, read off by inverting [u | inclusion]
    e, rest = _complement_projections(x, u, inclusion)
    return Splitting(x, t, current, u, e, inclusion, rest)


def split_off_summand(x: Rep, t: Rep, seed: Optional[int] = None) -> Optional[Rep]:
    """A complement C with x ≅ t ⊕ C, or None."""
    split = split_off_with_maps(x, t, seed)
    return None if split is None else split.complement


# =============================================================================
# Projective summands
# =============================================================================

class Stripped:
    """
    x = Q ⊕ y with Q free and y free of projective summands.

    `iso` is the isomorphism Q ⊕ y -> x assembled from the splitting maps.
    """

    def __init__(self, whole: Rep, stripped: Rep, projective_part: Rep,
                 inclusion: Hom, projection: Hom,
                 projective_inclusion: Hom, projective_projection: Hom):
        self.whole = whole
        self.stripped = stripped
        self.projective_part = projective_part
        self.inclusion = inclusion
        self.projection = projection
        self.projective_inclusion = projective_inclusion
        self.projective_projection = projective_projection

    def __repr__(self):
        return (f"<Stripped {self.whole.label}: {self.stripped.label} "
                f"plus {len(self.projective_part.generators)} projectives>")


def strip_projectives_with_maps(x: Rep) -> Stripped:
    """Split off indecomposable projectives until none is a summand."""
    a = x.algebra
    current = x
    inclusion = Hom.identity(x)
    generators: List[int] = []
    images = []
    for v in range(a.vertex_count):
        while True:
            step = _split_projective(current, v)
            if step is None:
                break
            u = inclusion.compose(step.summand_inclusion)
            _, pos = step.summand.generator_position(0)
            generators.append(v)
            images.append(mx.column(u.maps[v], pos))
            inclusion = inclusion.compose(step.complement_inclusion)
            current = step.complement
    q = free_module(a, generators, name=f"Q[{x.label}]")
    q_inc = hom_from_generators(q, x, images)
    q_proj, projection = _complement_projections(x, q_inc, inclusion)
    if generators:
        logger.debug(f"Stripped {len(generators)} projective summands from {x.label}")
    if current is not x and current.name is None:
        current.name = f"strip({x.label})"
    return Stripped(x, current, q, inclusion, projection, q_inc, q_proj)


def strip_projectives(x: Rep) -> Rep:
    return strip_projectives_with_maps(x).stripped


def stably_isomorphic(x: Rep, y: Rep, seed: Optional[int] = None) -> Tuple[bool, Optional[Hom]]:
    """Isomorphism in the stable category, tested after stripping projectives."""
    return is_isomorphic(strip_projectives(x), strip_projectives(y), seed)


def sum_iso(stripped: Stripped) -> Tuple[Rep, Hom]:
    """Q ⊕ y with its isomorphism onto the original module."""
    total, inclusions, projections = direct_sum([stripped.projective_part, stripped.stripped])
    iso = stripped.projective_inclusion.compose(projections[0]) + \
        stripped.inclusion.compose(projections[1])
    return total, iso
