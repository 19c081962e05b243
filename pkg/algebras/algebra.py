"""
Bound quiver algebras kQ/I with a path normal-form basis.

The basis of an algebra is the set of paths left irreducible by the
completed rewriting system, sorted length-lexicographically, so the trivial
paths e_v come first in vertex order. Multiplication is composition:
x * y means "y then x", matching the written notation b*a for a path that
starts with a.
"""

import itertools
import logging
import random
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from common import get_settings
from common.errors import FieldMismatch, NonAdmissible, NotFiniteDimensional, NotTensorAlgebra
from algebras.quiver import Quiver
from algebras.rewriting import Path, Poly, RewritingSystem, add_term, path_key
from linalg.field import Field

logger = logging.getLogger(__name__)

Element = Dict[int, object]  # basis index -> coefficient

OP_SUFFIX = '^op'


class Relation:
    """
    A linear combination of parallel paths, each given as arrow indices in
    traversal order.
    """

    def __init__(self, terms: Sequence[Tuple[object, Tuple[int, ...]]]):
        self.terms = [(c, tuple(w)) for c, w in terms]

    @classmethod
    def from_names(cls, quiver: Quiver, field: Field, terms) -> 'Relation':
        """Build from (coefficient, [arrow names in traversal order]) pairs."""
        return cls([
            (field(c), tuple(quiver.arrow(name).index for name in names))
            for c, names in terms
        ])

    def endpoints(self, quiver: Quiver) -> Tuple[int, int]:
        """Common (source, target), validating admissibility and parallelism."""
        ends = set()
        for _, word in self.terms:
            if len(word) < 2:
                raise NonAdmissible(
                    f"Relation term of length {len(word)}: relations need paths of length >= 2"
                )
            for a, b in zip(word, word[1:]):
                if quiver.arrows[a].target != quiver.arrows[b].source:
                    raise NonAdmissible(
                        f"Arrows {quiver.arrows[a].name} and {quiver.arrows[b].name} do not compose"
                    )
            ends.add((quiver.arrows[word[0]].source, quiver.arrows[word[-1]].target))
        if len(ends) > 1:
            raise NonAdmissible("Relation mixes paths that are not parallel")
        return ends.pop()

    def to_poly(self, quiver: Quiver) -> Poly:
        source, _ = self.endpoints(quiver)
        poly: Poly = {}
        for c, word in self.terms:
            add_term(poly, (source, word), c)
        return poly

    def __repr__(self):
        return f"<Relation {len(self.terms)} terms>"


class Algebra:
    """
    A finite-dimensional algebra kQ/I.

    Instances are immutable once built; compare them by identity. Use
    build_algebra, opposite, tensor_algebra, enveloping or point_algebra to
    construct them.
    """

    def __init__(
        self,
        name: str,
        quiver: Quiver,
        field: Field,
        relations: List[Relation],
        system: RewritingSystem,
        basis: List[Path],
        path_length_cap: int
    ):
        self.name = name
        self.quiver = quiver
        self.field = field
        self.relations = relations
        self.system = system
        self.basis = basis
        self.index: Dict[Path, int] = {p: i for i, p in enumerate(basis)}
        self.path_length_cap = path_length_cap
        self.tensor_factors: Optional[Tuple['Algebra', 'Algebra']] = None
        self._opposite: Optional['Algebra'] = None
        self._products: Dict[Tuple[int, int], Element] = {}

        self._between: Dict[Tuple[int, int], List[int]] = {}
        for i, path in enumerate(basis):
            self._between.setdefault((path[0], self.target(i)), []).append(i)

    # -------------------------------------------------------------------------
    # Basis bookkeeping
    # -------------------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertex_count(self) -> int:
        return self.quiver.vertex_count

    @property
    def arrow_count(self) -> int:
        return self.quiver.arrow_count

    @property
    def loewy_length(self) -> int:
        """Smallest L such that every path of length >= L is zero."""
        return max(len(p[1]) for p in self.basis) + 1 if self.basis else 0

    def source(self, i: int) -> int:
        return self.basis[i][0]

    def target(self, i: int) -> int:
        source, word = self.basis[i]
        return self.quiver.arrows[word[-1]].target if word else source

    def idempotent(self, vertex: int) -> int:
        return self.index[(vertex, ())]

    def arrow_element(self, arrow: int) -> int:
        return self.index[(self.quiver.arrows[arrow].source, (arrow,))]

    def paths_between(self, source: int, target: int) -> List[int]:
        """Basis indices of paths from source to target (sorted)."""
        return self._between.get((source, target), [])

    def paths_from(self, source: int) -> List[int]:
        return [i for i, p in enumerate(self.basis) if p[0] == source]

    def label(self, i: int) -> str:
        """Written notation: 'b*a' for the path a then b, 'e1' for a trivial path."""
        source, word = self.basis[i]
        if not word:
            return f"e{self.quiver.vertices[source]}"
        return '*'.join(self.quiver.arrows[a].name for a in reversed(word))

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------

    def reduce(self, poly: Poly, rng: Optional[random.Random] = None) -> Element:
        """Normal form of a path polynomial as an element."""
        return {self.index[p]: c for p, c in self.system.reduce(poly, rng).items()}

    def compose_paths(self, first: Path, then: Path) -> Optional[Path]:
        """The path 'first, then then', or None if they do not meet."""
        end = self.quiver.arrows[first[1][-1]].target if first[1] else first[0]
        if end != then[0]:
            return None
        return (first[0], first[1] + then[1])

    def product(self, i: int, j: int) -> Element:
        """b_i * b_j, that is b_j followed by b_i."""
        key = (i, j)
        if key not in self._products:
            joined = self.compose_paths(self.basis[j], self.basis[i])
            self._products[key] = {} if joined is None else self.reduce({joined: self.field.one})
        return self._products[key]

    def multiply(self, x: Element, y: Element) -> Element:
        out: Element = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.product(i, j).items():
                    add_term(out, k, a * b * c)
        return out

    def add(self, x: Element, y: Element) -> Element:
        out = dict(x)
        for k, c in y.items():
            add_term(out, k, c)
        return out

    def one(self) -> Element:
        return {self.idempotent(v): self.field.one for v in range(self.vertex_count)}

    def structure_constants(self) -> Dict[Tuple[int, int], Element]:
        """The full multiplication table over the basis."""
        return {(i, j): self.product(i, j) for i in range(self.dim) for j in range(self.dim)}

    def is_semisimple(self) -> bool:
        return self.dim == self.vertex_count

    def blocks(self) -> List[List[int]]:
        return self.quiver.blocks()

    # -------------------------------------------------------------------------
    # Tensor algebra structure
    # -------------------------------------------------------------------------

    def require_tensor(self) -> Tuple['Algebra', 'Algebra']:
        if self.tensor_factors is None:
            raise NotTensorAlgebra(f"Algebra {self.name} is not a tensor algebra")
        return self.tensor_factors

    def vertex_of(self, i: int, j: int) -> int:
        """Vertex i×j of a tensor algebra."""
        _, right = self.require_tensor()
        return i * right.vertex_count + j

    def vertex_pair(self, v: int) -> Tuple[int, int]:
        _, right = self.require_tensor()
        return divmod(v, right.vertex_count)

    def left_arrow(self, a: int, j: int) -> int:
        """Arrow a×j (left-factor arrow a at right-factor vertex j)."""
        _, right = self.require_tensor()
        return a * right.vertex_count + j

    def right_arrow(self, i: int, b: int) -> int:
        """Arrow i×b (right-factor arrow b at left-factor vertex i)."""
        left, right = self.require_tensor()
        return left.arrow_count * right.vertex_count + i * right.arrow_count + b

    def arrow_origin(self, k: int) -> Tuple[str, int, int]:
        """('left', a, j) for a×j or ('right', i, b) for i×b."""
        left, right = self.require_tensor()
        offset = left.arrow_count * right.vertex_count
        if k < offset:
            a, j = divmod(k, right.vertex_count)
            return ('left', a, j)
        i, b = divmod(k - offset, right.arrow_count)
        return ('right', i, b)

    def __repr__(self):
        return f"<Algebra {self.name} over {self.field.name} dim={self.dim}>"


def build_algebra(
    quiver: Quiver,
    relations: Iterable[Relation],
    field: Field,
    path_length_cap: Optional[int] = None,
    name: str = 'A'
) -> Algebra:
    """
    Complete the relations and enumerate the normal-form basis.

    Args:
        quiver: The quiver Q
        relations: Admissible relations generating I
        field: Ground field
        path_length_cap: Irreducible paths of this length mean the algebra is
            treated as infinite-dimensional (defaults to the configured cap)
        name: Display name

    Returns:
        The algebra kQ/I

    Raises:
        NonAdmissible: If a relation has a term of length < 2 or mixes
            non-parallel paths
        NotFiniteDimensional: If an irreducible path of length cap exists
    """
    cap = path_length_cap if path_length_cap is not None else get_settings().path_length_cap
    relations = list(relations)
    polys = [r.to_poly(quiver) for r in relations]

    system = RewritingSystem(
        field,
        [a.source for a in quiver.arrows],
        [a.target for a in quiver.arrows],
    )
    system.complete(polys, cap)

    basis: List[Path] = []
    frontier: List[Path] = [(v, ()) for v in range(quiver.vertex_count)]
    length = 0
    while frontier:
        basis.extend(frontier)
        if length == cap:
            witness = frontier[0]
            label = '*'.join(quiver.arrows[a].name for a in reversed(witness[1]))
            raise NotFiniteDimensional(cap, label)
        next_frontier = []
        for source, word in frontier:
            end = quiver.arrows[word[-1]].target if word else source
            for arrow in quiver.out_arrows[end]:
                extended = word + (arrow,)
                if not system.ends_reducibly(extended):
                    next_frontier.append((source, extended))
        frontier = next_frontier
        length += 1
    basis.sort(key=path_key)

    algebra = Algebra(name, quiver, field, relations, system, basis, cap)
    logger.debug(f"Built {algebra} with {len(system.rules)} rewrite rules")
    return algebra


# =============================================================================
# Derived algebras
# =============================================================================

def toggle_op(name: str) -> str:
    return name[:-len(OP_SUFFIX)] if name.endswith(OP_SUFFIX) else name + OP_SUFFIX


def opposite(a: Algebra) -> Algebra:
    """
    The opposite algebra: arrows reversed and renamed by toggling '^op'.

    Arrow and vertex indices are kept, and opposite(opposite(a)) is a.
    """
    if a._opposite is not None:
        return a._opposite
    quiver = Quiver(
        a.quiver.vertices,
        [(toggle_op(arr.name), a.quiver.vertices[arr.target], a.quiver.vertices[arr.source])
         for arr in a.quiver.arrows],
    )
    relations = [Relation([(c, tuple(reversed(w))) for c, w in r.terms]) for r in a.relations]
    result = build_algebra(quiver, relations, a.field, a.path_length_cap, toggle_op(a.name))
    result._opposite = a
    a._opposite = result
    return result


def opposite_path(a: Algebra, i: int) -> Path:
    """The reversed path of basis element i, as a (possibly reducible) path of opposite(a)."""
    source, word = a.basis[i]
    return (a.target(i), tuple(reversed(word)))


def to_opposite(a: Algebra, x: Element) -> Element:
    """The anti-isomorphism a -> opposite(a) on elements."""
    op = opposite(a)
    out: Element = {}
    for i, c in x.items():
        for k, d in op.reduce({opposite_path(a, i): a.field.one}).items():
            add_term(out, k, c * d)
    return out


@lru_cache(maxsize=None)
def point_algebra(field: Field) -> Algebra:
    """The one-vertex algebra k."""
    return build_algebra(Quiver(['pt']), [], field, name='k')


@lru_cache(maxsize=None)
def tensor_algebra(a: Algebra, b: Algebra) -> Algebra:
    """
    a ⊗_k b as a bound quiver algebra on the product quiver.

    Vertex i×j has index i·|b_0| + j. Arrows a×j come first, then i×b, so
    the commutativity relations rewrite "b-arrow then a-arrow" into
    "a-arrow then b-arrow" and normal paths traverse the left factor first.

    Raises:
        FieldMismatch: If the fields differ
    """
    if a.field != b.field:
        raise FieldMismatch(f"Cannot tensor {a.name} over {a.field.name} with {b.name} over {b.field.name}")
    qa, qb = a.quiver, b.quiver
    vertices = [f"{va}×{vb}" for va in qa.vertices for vb in qb.vertices]
    nb = qb.vertex_count

    arrows = []
    for arr in qa.arrows:
        for j, vb in enumerate(qb.vertices):
            arrows.append((f"{arr.name}×{vb}", vertices[arr.source * nb + j], vertices[arr.target * nb + j]))
    for i, va in enumerate(qa.vertices):
        for arr in qb.arrows:
            arrows.append((f"{va}×{arr.name}", vertices[i * nb + arr.source], vertices[i * nb + arr.target]))
    quiver = Quiver(vertices, arrows)

    def left(x, j):
        return x * nb + j

    left_offset = qa.arrow_count * nb

    def right(i, y):
        return left_offset + i * qb.arrow_count + y

    relations = []
    for r in a.relations:
        for j in range(nb):
            relations.append(Relation([(c, tuple(left(x, j) for x in w)) for c, w in r.terms]))
    for r in b.relations:
        for i in range(qa.vertex_count):
            relations.append(Relation([(c, tuple(right(i, y) for y in w)) for c, w in r.terms]))
    one = a.field.one
    for x in qa.arrows:
        for y in qb.arrows:
            # (x×t_y)∘(s_x×y) - (t_x×y)∘(x×s_y), written in traversal order
            relations.append(Relation([
                (one, (right(x.source, y.index), left(x.index, y.target))),
                (-one, (left(x.index, y.source), right(x.target, y.index))),
            ]))

    cap = max(a.path_length_cap, b.path_length_cap)
    result = build_algebra(quiver, relations, a.field, cap, f"{a.name}⊗{b.name}")
    result.tensor_factors = (a, b)
    if result.dim != a.dim * b.dim:
        raise NotFiniteDimensional(cap, f"tensor dimension {result.dim} != {a.dim}·{b.dim}")
    return result


def enveloping(a: Algebra) -> Algebra:
    """a ⊗_k a^op."""
    return tensor_algebra(a, opposite(a))


def is_associative(a: Algebra) -> bool:
    """Check (xy)z = x(yz) on every basis triple."""
    for i, j, k in itertools.product(range(a.dim), repeat=3):
        left = a.multiply(a.product(i, j), {k: a.field.one})
        right = a.multiply({i: a.field.one}, a.product(j, k))
        if left != right:
            logger.warning(f"Associativity fails on ({a.label(i)}, {a.label(j)}, {a.label(k)})")
            return False
    return True


def is_confluent(a: Algebra, trials: int = 20, seed: int = 0) -> bool:
    """Reduce random products of arrows under shuffled rule orders and compare."""
    rng = random.Random(seed)
    for _ in range(trials):
        v = rng.randrange(a.vertex_count)
        word: Tuple[int, ...] = ()
        for _ in range(rng.randrange(2, max(3, a.loewy_length + 3))):
            out = a.quiver.out_arrows[a.quiver.arrows[word[-1]].target if word else v]
            if not out:
                break
            word += (rng.choice(out),)
        poly = {(v, word): a.field.one}
        canonical = a.reduce(poly)
        for _ in range(3):
            if a.reduce(poly, random.Random(rng.random())) != canonical:
                return False
    return True
