"""
Tests for exact fields, matrices and subspaces.
"""

import pytest

from common.errors import DimensionMismatch, FieldMismatch
from linalg.field import Field
from linalg.matrix import (
    Subspace,
    equal,
    from_rows,
    identity,
    inverse,
    kernel,
    kernel_sparse,
    mat_vec,
    matmul,
    quotient_basis,
    rank,
    rref,
    solve_right,
    to_rows,
    zeros,
)


class TestField:
    """Tests for field parsing and element conversion."""

    def test_parse_names(self):
        """All accepted spellings resolve to the right characteristic."""
        assert Field.parse('F101').characteristic == 101
        assert Field.parse('GF(7)').characteristic == 7
        assert Field.parse('Q').characteristic == 0
        assert Field.parse('QQ').characteristic == 0

    def test_parse_unknown(self):
        """Unknown field names are rejected."""
        with pytest.raises(ValueError, match="Unknown field"):
            Field.parse('R')

    def test_composite_characteristic(self):
        """Only prime characteristics are fields."""
        with pytest.raises(ValueError, match="not prime"):
            Field(12)

    def test_name(self):
        assert Field(0).name == 'Q'
        assert Field(5).name == 'F5'

    def test_fraction_strings(self, f101, rationals):
        """'a/b' strings are exact in both kinds of field."""
        assert f101('1/2') * f101(2) == f101.one
        assert rationals.to_json(rationals('3/6')) == '1/2'
        assert rationals.to_json(rationals('4/2')) == 2

    def test_fraction_without_image(self):
        """A denominator divisible by p has no image in F_p."""
        with pytest.raises(ValueError, match="no image"):
            Field(5)('1/5')

    def test_check_same(self, f101, rationals):
        with pytest.raises(FieldMismatch):
            f101.check_same(rationals)

    def test_equality_and_hash(self):
        assert Field(7) == Field.parse('GF(7)')
        assert len({Field(7), Field(7), Field(0)}) == 2


class TestMatrices:
    """Tests for rank, rref, kernels and solving."""

    def test_rank_and_rref(self, f101):
        m = from_rows([[1, 2, 3], [2, 4, 6], [0, 1, 1]], f101)
        reduced, r, pivots = rref(m)
        assert r == 2
        assert pivots == [0, 1]
        assert rank(m) == 2

    def test_empty_matrix(self, f101):
        """Empty shapes have rank zero."""
        assert rank(zeros(0, 3, f101)) == 0
        assert rank(zeros(3, 0, f101)) == 0

    def test_kernel(self, rationals):
        m = from_rows([[1, 1, 0], [0, 0, 1]], rationals)
        null = kernel(m)
        assert null.dim == 1
        for vec in null.vectors():
            assert not any(mat_vec(m, vec))

    def test_sparse_kernel_tolerates_cancelled_rows(self, f101):
        """Rows whose entries cancelled to nothing are dropped before reduction."""
        dod = {0: {}, 1: {0: f101.one, 1: f101.zero}, 2: {2: f101.zero}}
        null = kernel_sparse(dod, 3, 3, f101)
        assert null.dim == 2

    def test_solve_right(self, f101):
        a = from_rows([[1, 0], [0, 2]], f101)
        b = from_rows([[3], [4]], f101)
        x, null = solve_right(a, b)
        assert equal(matmul(a, x), b)
        assert null.dim == 0

    def test_solve_inconsistent(self, rationals):
        """An inconsistent system has no solution."""
        a = from_rows([[1, 1], [1, 1]], rationals)
        b = from_rows([[1], [2]], rationals)
        assert solve_right(a, b) is None

    def test_solve_shape_mismatch(self, rationals):
        with pytest.raises(DimensionMismatch):
            solve_right(identity(2, rationals), zeros(3, 1, rationals))

    def test_inverse(self, f101):
        m = from_rows([[1, 1], [0, 1]], f101)
        assert equal(matmul(m, inverse(m)), identity(2, f101))

    def test_singular_inverse(self, f101):
        with pytest.raises(ValueError, match="singular"):
            inverse(from_rows([[1, 1], [1, 1]], f101))

    def test_ragged_rows(self, f101):
        with pytest.raises(DimensionMismatch, match="Row 1"):
            from_rows([[1, 2], [3]], f101)


class TestSubspace:
    """Tests for RREF subspaces."""

    def test_span_is_canonical(self, rationals):
        """Different spanning sets of one subspace compare equal."""
        a = Subspace.span(rationals, 3, [[1, 1, 0], [0, 1, 1]])
        b = Subspace.span(rationals, 3, [[1, 2, 1], [1, 0, -1], [2, 2, 0]])
        assert a == b
        assert a.dim == 2

    def test_contains_and_coordinates(self, rationals):
        sub = Subspace.span(rationals, 3, [[1, 0, 2], [0, 1, 3]])
        vec = [rationals(2), rationals(1), rationals(7)]
        assert sub.contains(vec)
        assert sub.coordinates(vec) == [rationals(2), rationals(1)]
        with pytest.raises(ValueError, match="does not lie"):
            sub.coordinates([rationals(0), rationals(0), rationals(1)])

    def test_sum(self, f101):
        a = Subspace.span(f101, 3, [[1, 0, 0]])
        b = Subspace.span(f101, 3, [[0, 1, 0]])
        assert (a + b).dim == 2
        assert (a + a) == a

    def test_projector_kills_subspace(self, rationals):
        """The quotient map vanishes on the subspace and has full rank."""
        sub = Subspace.span(rationals, 3, [[1, 2, 0]])
        proj = sub.projector()
        assert proj.shape == (2, 3)
        assert rank(proj) == 2
        image = to_rows(matmul(proj, sub.basis_columns()))
        assert all(not x for row in image for x in row)

    def test_quotient_basis(self, rationals):
        sub = Subspace.span(rationals, 3, [[1, 2, 0]])
        reps = quotient_basis(sub)
        assert len(reps) == 2
        assert (sub + Subspace.span(rationals, 3, reps)) == Subspace.full(rationals, 3)

    def test_column_space(self, f101):
        m = from_rows([[1, 2], [2, 4]], f101)
        assert Subspace.column_space(m).dim == 1

    def test_zero_and_full(self, f101):
        assert Subspace.zero(f101, 4).dim == 0
        assert Subspace.full(f101, 4).dim == 4

    def test_wrong_length(self, f101):
        with pytest.raises(DimensionMismatch):
            Subspace.span(f101, 2, [[1, 2, 3]])
