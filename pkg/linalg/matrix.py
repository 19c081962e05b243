"""
Exact matrices and subspaces on top of sympy's DomainMatrix.

Matrices handed around the code base are dense DomainMatrix objects over a
Field's domain. Linear systems are solved in sparse format and read back
through the dict-of-dicts representation, so only `rref` from sympy carries
the elimination work.
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from common.errors import DimensionMismatch
from linalg.field import Field

logger = logging.getLogger(__name__)

Vector = List  # list of field elements
SparseRow = Dict[int, object]


# =============================================================================
# Construction and access
# =============================================================================

def zeros(rows: int, cols: int, field: Field) -> DomainMatrix:
    """Dense zero matrix."""
    return DomainMatrix([[field.zero] * cols for _ in range(rows)], (rows, cols), field.domain)


def identity(n: int, field: Field) -> DomainMatrix:
    rows = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    return DomainMatrix(rows, (n, n), field.domain)


def from_rows(rows: Sequence[Sequence], field: Field, cols: Optional[int] = None) -> DomainMatrix:
    """Build a dense matrix from nested sequences of ints, strings or elements."""
    if cols is None:
        cols = len(rows[0]) if rows else 0
    data = []
    for i, row in enumerate(rows):
        if len(row) != cols:
            raise DimensionMismatch(f"Row {i} has {len(row)} entries, expected {cols}")
        data.append([field(x) for x in row])
    return DomainMatrix(data, (len(rows), cols), field.domain)


def from_dod(dod: Dict[int, SparseRow], rows: int, cols: int, field: Field) -> DomainMatrix:
    """Dense matrix from a {row: {col: value}} dict (zero entries dropped)."""
    data = [[field.zero] * cols for _ in range(rows)]
    for i, row in dod.items():
        for j, v in row.items():
            data[i][j] = v
    return DomainMatrix(data, (rows, cols), field.domain)


def to_dod(m: DomainMatrix) -> Dict[int, SparseRow]:
    """Nonzero entries as {row: {col: value}}."""
    return {i: dict(row) for i, row in m.to_sparse().rep.items() if row}


def to_rows(m: DomainMatrix) -> List[Vector]:
    rows, cols = m.shape
    zero = m.domain.zero
    out = [[zero] * cols for _ in range(rows)]
    for i, row in to_dod(m).items():
        for j, v in row.items():
            out[i][j] = v
    return out


def column(m: DomainMatrix, j: int) -> Vector:
    rows, _ = m.shape
    zero = m.domain.zero
    out = [zero] * rows
    for i, row in to_dod(m).items():
        if j in row:
            out[i] = row[j]
    return out


def from_columns(columns: Sequence[Vector], rows: int, field: Field) -> DomainMatrix:
    data = [[field.zero] * len(columns) for _ in range(rows)]
    for j, col in enumerate(columns):
        if len(col) != rows:
            raise DimensionMismatch(f"Column {j} has length {len(col)}, expected {rows}")
        for i, v in enumerate(col):
            data[i][j] = v
    return DomainMatrix(data, (rows, len(columns)), field.domain)


def mat_vec(m: DomainMatrix, v: Vector) -> Vector:
    rows, cols = m.shape
    if len(v) != cols:
        raise DimensionMismatch(f"Vector of length {len(v)} against {rows}x{cols} matrix")
    zero = m.domain.zero
    out = [zero] * rows
    for i, row in to_dod(m).items():
        total = zero
        for j, a in row.items():
            if v[j]:
                total += a * v[j]
        out[i] = total
    return out


def matmul(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    """Product a·b; empty shapes are handled without calling into sympy."""
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"Cannot multiply {a.shape} by {b.shape}")
    if 0 in a.shape or 0 in b.shape:
        return DomainMatrix([[a.domain.zero] * b.shape[1] for _ in range(a.shape[0])],
                            (a.shape[0], b.shape[1]), a.domain)
    return a.to_dense().matmul(b.to_dense())


def compose(*factors: DomainMatrix) -> DomainMatrix:
    """Left-to-right product f1·f2·...·fk."""
    result = factors[0]
    for f in factors[1:]:
        result = matmul(result, f)
    return result


def add(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    if a.shape != b.shape:
        raise DimensionMismatch(f"Cannot add {a.shape} and {b.shape}")
    return a.to_dense() + b.to_dense()


def sub(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    if a.shape != b.shape:
        raise DimensionMismatch(f"Cannot subtract {b.shape} from {a.shape}")
    return a.to_dense() - b.to_dense()


def scale(m: DomainMatrix, c) -> DomainMatrix:
    rows, cols = m.shape
    dod = {i: {j: c * v for j, v in row.items()} for i, row in to_dod(m).items()}
    return DomainMatrix(
        [[dod.get(i, {}).get(j, m.domain.zero) for j in range(cols)] for i in range(rows)],
        (rows, cols), m.domain
    )


def is_zero_matrix(m: DomainMatrix) -> bool:
    return not to_dod(m)


def transpose(m: DomainMatrix) -> DomainMatrix:
    rows, cols = m.shape
    dod: Dict[int, SparseRow] = {}
    for i, row in to_dod(m).items():
        for j, v in row.items():
            dod.setdefault(j, {})[i] = v
    return DomainMatrix(
        [[dod.get(j, {}).get(i, m.domain.zero) for i in range(rows)] for j in range(cols)],
        (cols, rows), m.domain
    )


def block_matrix(
    blocks: Dict[Tuple[int, int], DomainMatrix],
    row_sizes: Sequence[int],
    col_sizes: Sequence[int],
    field: Field
) -> DomainMatrix:
    """Assemble a dense matrix from blocks keyed by (block row, block column)."""
    row_offsets = _offsets(row_sizes)
    col_offsets = _offsets(col_sizes)
    dod: Dict[int, SparseRow] = {}
    for (bi, bj), block in blocks.items():
        if block.shape != (row_sizes[bi], col_sizes[bj]):
            raise DimensionMismatch(
                f"Block ({bi},{bj}) has shape {block.shape}, expected "
                f"{(row_sizes[bi], col_sizes[bj])}"
            )
        for i, row in to_dod(block).items():
            target = dod.setdefault(row_offsets[bi] + i, {})
            for j, v in row.items():
                key = col_offsets[bj] + j
                target[key] = target.get(key, field.zero) + v
    return from_dod(dod, sum(row_sizes), sum(col_sizes), field)


def block_diagonal(blocks: Sequence[DomainMatrix], field: Field) -> DomainMatrix:
    return block_matrix(
        {(k, k): b for k, b in enumerate(blocks)},
        [b.shape[0] for b in blocks], [b.shape[1] for b in blocks], field
    )


def kron(a: DomainMatrix, b: DomainMatrix, field: Field) -> DomainMatrix:
    """Kronecker product; index (i, k) of the result is i * b.rows + k."""
    ar, ac = a.shape
    br, bc = b.shape
    bdod = to_dod(b)
    dod: Dict[int, SparseRow] = {}
    for i, row in to_dod(a).items():
        for j, x in row.items():
            for k, brow in bdod.items():
                target = dod.setdefault(i * br + k, {})
                for l, y in brow.items():
                    target[j * bc + l] = x * y
    return from_dod(dod, ar * br, ac * bc, field)


def _offsets(sizes: Sequence[int]) -> List[int]:
    out, total = [], 0
    for s in sizes:
        out.append(total)
        total += s
    return out


# =============================================================================
# Elimination
# =============================================================================

def rref(m: DomainMatrix) -> Tuple[DomainMatrix, int, List[int]]:
    """
    Reduced row echelon form.

    Args:
        m: Any matrix over a field domain

    Returns:
        Tuple of (dense RREF matrix, rank, pivot columns)
    """
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return zeros(rows, cols, _field_of(m)), 0, []
    reduced, pivots = m.to_sparse().rref()
    pivots = list(pivots)
    return reduced.to_dense(), len(pivots), pivots


def _rref_rows(dod: Dict[int, SparseRow], rows: int, cols: int, domain) -> Tuple[List[SparseRow], List[int]]:
    """RREF of a sparse matrix, returned as its nonzero rows and pivots."""
    # sparse rows must hold no zeros and no empty rows
    dod = {r: {c: v for c, v in row.items() if v} for r, row in dod.items()}
    dod = {r: row for r, row in dod.items() if row}
    if rows == 0 or cols == 0 or not dod:
        return [], []
    reduced, pivots = DomainMatrix(dod, (rows, cols), domain).rref()
    rep = reduced.to_sparse().rep
    out = [dict(rep.get(k, {})) for k in range(len(pivots))]
    return out, list(pivots)


def rank(m: DomainMatrix) -> int:
    return rref(m)[1]


def _field_of(m: DomainMatrix) -> Field:
    domain = m.domain
    return Field(int(domain.characteristic()))


def field_of(m: DomainMatrix) -> Field:
    """Field wrapper for a matrix's domain."""
    return _field_of(m)


def is_invertible(m: DomainMatrix) -> bool:
    rows, cols = m.shape
    return rows == cols and rank(m) == rows


def inverse(m: DomainMatrix) -> DomainMatrix:
    """Inverse of a square invertible matrix (0x0 allowed)."""
    rows, cols = m.shape
    if rows != cols:
        raise DimensionMismatch(f"Cannot invert a {rows}x{cols} matrix")
    field = _field_of(m)
    if rows == 0:
        return zeros(0, 0, field)
    solution = solve_right(m, identity(rows, field))
    if solution is None or solution[1].dim:
        raise ValueError("Matrix is singular")
    return solution[0]


# =============================================================================
# Subspaces
# =============================================================================

class Subspace:
    """
    Subspace of F^n stored by the nonzero rows of its RREF basis.

    Two subspaces are equal iff their RREF bases are identical.
    """

    def __init__(self, field: Field, ambient_dim: int, rows: List[SparseRow], pivots: List[int]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows = rows
        self.pivots = pivots
        self._pivot_set = set(pivots)

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable[Vector]) -> 'Subspace':
        dod: Dict[int, SparseRow] = {}
        count = 0
        for vec in vectors:
            if len(vec) != ambient_dim:
                raise DimensionMismatch(f"Vector of length {len(vec)} in F^{ambient_dim}")
            row = {j: v for j, v in enumerate(vec) if v}
            if row:
                dod[count] = row
                count += 1
        rows, pivots = _rref_rows(dod, count, ambient_dim, field.domain)
        return cls(field, ambient_dim, rows, pivots)

    @classmethod
    def span_sparse(cls, field: Field, ambient_dim: int, rows: Iterable[SparseRow]) -> 'Subspace':
        dod = {}
        for row in rows:
            row = {j: v for j, v in row.items() if v}
            if row:
                dod[len(dod)] = row
        reduced, pivots = _rref_rows(dod, len(dod), ambient_dim, field.domain)
        return cls(field, ambient_dim, reduced, pivots)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> 'Subspace':
        return cls(field, ambient_dim, [], [])

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> 'Subspace':
        return cls(field, ambient_dim, [{j: field.one} for j in range(ambient_dim)],
                   list(range(ambient_dim)))

    @classmethod
    def column_space(cls, m: DomainMatrix) -> 'Subspace':
        field = _field_of(m)
        rows, _ = m.shape
        dod: Dict[int, SparseRow] = {}
        for i, row in to_dod(m).items():
            for j, v in row.items():
                dod.setdefault(j, {})[i] = v
        reduced, pivots = _rref_rows(dod, m.shape[1], rows, field.domain)
        return cls(field, rows, reduced, pivots)

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> DomainMatrix:
        """RREF basis, one vector per row."""
        return from_dod(dict(enumerate(self.rows)), self.dim, self.ambient_dim, self.field)

    def vectors(self) -> List[Vector]:
        out = []
        for row in self.rows:
            vec = [self.field.zero] * self.ambient_dim
            for j, v in row.items():
                vec[j] = v
            out.append(vec)
        return out

    def basis_columns(self) -> DomainMatrix:
        """Ambient x dim matrix whose columns are the basis vectors."""
        dod: Dict[int, SparseRow] = {}
        for k, row in enumerate(self.rows):
            for j, v in row.items():
                dod.setdefault(j, {})[k] = v
        return from_dod(dod, self.ambient_dim, self.dim, self.field)

    def reduce(self, vec: Vector) -> Vector:
        """Normal form of vec modulo the subspace (pivot coordinates cleared)."""
        out = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = out[p]
            if c:
                for j, v in row.items():
                    out[j] -= c * v
        return out

    def contains(self, vec: Vector) -> bool:
        return not any(self.reduce(vec))

    def coordinates(self, vec: Vector) -> Vector:
        """Coordinates of a member of the subspace in the RREF basis."""
        if not self.contains(vec):
            raise ValueError("Vector does not lie in the subspace")
        return [vec[p] for p in self.pivots]

    def coordinate_matrix(self, m: DomainMatrix) -> DomainMatrix:
        """Coordinates (dim x k) of the columns of an ambient x k matrix in the subspace."""
        rows = to_rows(m)
        return from_rows([rows[p] for p in self.pivots], self.field, cols=m.shape[1]) \
            if self.pivots else zeros(0, m.shape[1], self.field)

    def complement_indices(self) -> List[int]:
        return [j for j in range(self.ambient_dim) if j not in self._pivot_set]

    def projector(self) -> DomainMatrix:
        """Matrix of the quotient map F^n -> F^n / self in complement coordinates."""
        free = self.complement_indices()
        dod: Dict[int, SparseRow] = {}
        for qi, q in enumerate(free):
            entry = {q: self.field.one}
            for row, p in zip(self.rows, self.pivots):
                if q in row:
                    entry[p] = -row[q]
            dod[qi] = entry
        return from_dod(dod, len(free), self.ambient_dim, self.field)

    def section(self) -> DomainMatrix:
        """Lift F^n / self -> F^n sending each class to its standard representative."""
        free = self.complement_indices()
        dod = {q: {qi: self.field.one} for qi, q in enumerate(free)}
        return from_dod(dod, self.ambient_dim, len(free), self.field)

    def __add__(self, other: 'Subspace') -> 'Subspace':
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("Subspaces live in different ambient spaces")
        return Subspace.span_sparse(self.field, self.ambient_dim, self.rows + other.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return False
        return (self.ambient_dim == other.ambient_dim and self.pivots == other.pivots
                and self.rows == other.rows)

    def __repr__(self):
        return f"<Subspace dim={self.dim} in F^{self.ambient_dim}>"


def kernel(m: DomainMatrix) -> Subspace:
    """Null space {x : m·x = 0}."""
    field = _field_of(m)
    rows, cols = m.shape
    reduced_rows, pivots = _rref_rows(to_dod(m), rows, cols, field.domain)
    return _kernel_from_rref(field, cols, reduced_rows, pivots)


def kernel_sparse(dod: Dict[int, SparseRow], rows: int, cols: int, field: Field) -> Subspace:
    """Null space of a matrix given as {row: {col: value}}."""
    reduced_rows, pivots = _rref_rows(dod, rows, cols, field.domain)
    return _kernel_from_rref(field, cols, reduced_rows, pivots)


def _kernel_from_rref(field: Field, cols: int, reduced_rows: List[SparseRow], pivots: List[int]) -> Subspace:
    pivot_set = set(pivots)
    vectors = []
    for f in range(cols):
        if f in pivot_set:
            continue
        vec = {f: field.one}
        for row, p in zip(reduced_rows, pivots):
            if f in row:
                vec[p] = -row[f]
        vectors.append(vec)
    return Subspace.span_sparse(field, cols, vectors)


def solve_right(a: DomainMatrix, b: DomainMatrix) -> Optional[Tuple[DomainMatrix, Subspace]]:
    """
    Solve a·x = b exactly.

    Args:
        a: m x n coefficient matrix
        b: m x k right-hand sides

    Returns:
        (particular n x k solution with free variables zero, kernel of a),
        or None when some column of b is inconsistent

    Raises:
        DimensionMismatch: If a and b have different row counts
    """
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"solve_right: {a.shape} against {b.shape}")
    field = _field_of(a)
    m, n = a.shape
    k = b.shape[1]
    dod: Dict[int, SparseRow] = {}
    for i, row in to_dod(a).items():
        dod[i] = dict(row)
    for i, row in to_dod(b).items():
        target = dod.setdefault(i, {})
        for j, v in row.items():
            target[n + j] = v
    reduced_rows, pivots = _rref_rows(dod, m, n + k, field.domain)
    if any(p >= n for p in pivots):
        return None
    particular: Dict[int, SparseRow] = {}
    a_rows = []
    for row, p in zip(reduced_rows, pivots):
        entry = {j - n: v for j, v in row.items() if j >= n}
        if entry:
            particular[p] = entry
        a_rows.append({j: v for j, v in row.items() if j < n})
    null = _kernel_from_rref(field, n, a_rows, pivots)
    return from_dod(particular, n, k, field), null


def quotient_basis(sub: Subspace) -> List[Vector]:
    """
    Coset representatives completing sub.basis to a basis of the ambient space.

    Returns the standard vectors at the non-pivot coordinates.
    """
    reps = []
    for q in sub.complement_indices():
        vec = [sub.field.zero] * sub.ambient_dim
        vec[q] = sub.field.one
        reps.append(vec)
    return reps


def equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    """Exact equality independent of the internal storage format."""
    return a.shape == b.shape and to_dod(a) == to_dod(b)
