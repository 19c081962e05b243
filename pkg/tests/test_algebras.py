"""
Tests for quivers and bound quiver algebras.
"""

import pytest

from algebras.algebra import (
    Relation,
    build_algebra,
    enveloping,
    is_associative,
    is_confluent,
    opposite,
    point_algebra,
    tensor_algebra,
    to_opposite,
)
from algebras.quiver import Quiver
from common.errors import FieldMismatch, NonAdmissible, NotFiniteDimensional, UnknownVertex
from linalg.field import Field
from semtl import corpus


class TestQuiver:
    """Tests for quiver construction and graph queries."""

    def test_indices(self):
        q = Quiver(['1', '2'], [('a', '1', '2')])
        assert q.vertex('2') == 1
        assert q.arrow('a').source == 0
        assert q.out_arrows == [[0], []]

    def test_duplicate_vertex(self):
        with pytest.raises(ValueError, match="Duplicate vertex"):
            Quiver(['1', '1'])

    def test_duplicate_arrow(self):
        with pytest.raises(ValueError, match="Duplicate arrow"):
            Quiver(['1', '2'], [('a', '1', '2'), ('a', '2', '1')])

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertex):
            Quiver(['1'], [('a', '1', '9')])

    def test_unknown_arrow(self):
        with pytest.raises(ValueError, match="Unknown arrow"):
            Quiver(['1']).arrow('z')

    def test_blocks(self):
        q = Quiver(['1', '2', '3'], [('a', '3', '1')])
        assert q.blocks() == [[0, 2], [1]]

    def test_acyclic(self):
        assert Quiver(['1', '2'], [('a', '1', '2')]).is_acyclic()
        assert not Quiver(['1'], [('x', '1', '1')]).is_acyclic()


class TestBuildAlgebra:
    """Tests for completion and the normal-form basis."""

    def test_lambda_basis(self, lambda_):
        """Λ has basis e1, e2, α, β."""
        assert lambda_.dim == 4
        assert sorted(lambda_.label(i) for i in range(lambda_.dim)) == ['alpha', 'beta', 'e1', 'e2']
        assert lambda_.loewy_length == 2

    def test_dual_numbers(self, sigma):
        assert sigma.dim == 2
        assert sigma.vertex_count == 1
        assert sigma.arrow_count == 1

    def test_zero_products(self, lambda_):
        """α² and βα vanish, and α after β does not compose."""
        q = lambda_.quiver
        alpha = lambda_.arrow_element(q.arrow('alpha').index)
        beta = lambda_.arrow_element(q.arrow('beta').index)
        assert lambda_.product(alpha, alpha) == {}
        assert lambda_.product(beta, alpha) == {}
        assert lambda_.product(alpha, beta) == {}

    def test_unit(self, lambda_):
        one = lambda_.one()
        for i in range(lambda_.dim):
            x = {i: lambda_.field.one}
            assert lambda_.multiply(one, x) == x
            assert lambda_.multiply(x, one) == x

    def test_commutative_square(self, f101):
        """A commutativity relation identifies the two long paths."""
        q = Quiver(['1', '2', '3', '4'], [('a', '1', '2'), ('b', '2', '4'), ('c', '1', '3'), ('d', '3', '4')])
        relation = Relation.from_names(q, f101, [(1, ['a', 'b']), (-1, ['c', 'd'])])
        a = build_algebra(q, [relation], f101, name='square')
        assert a.dim == 9
        assert is_associative(a)
        assert is_confluent(a)

    def test_path_algebra(self, f101):
        a = corpus.a2(f101)
        assert a.dim == 3
        assert a.blocks() == [[0, 1]]

    def test_nakayama_dims(self, f101):
        assert corpus.nakayama(2, 2, f101).dim == 4
        assert corpus.nakayama(3, 3, f101).dim == 9

    def test_nakayama_bad_input(self, f101):
        with pytest.raises(ValueError, match="length >= 2"):
            corpus.nakayama(2, 1, f101)

    def test_short_relation(self, f101):
        """Relations must be built from paths of length at least 2."""
        q = Quiver(['1'], [('x', '1', '1')])
        with pytest.raises(NonAdmissible, match="length 1"):
            build_algebra(q, [Relation.from_names(q, f101, [(1, ['x'])])], f101)

    def test_non_composable_relation(self, f101):
        q = Quiver(['1', '2'], [('a', '1', '2'), ('b', '1', '2')])
        with pytest.raises(NonAdmissible, match="do not compose"):
            build_algebra(q, [Relation.from_names(q, f101, [(1, ['a', 'b'])])], f101)

    def test_infinite_dimensional(self, f101):
        """A free loop survives every path length cap."""
        q = Quiver(['1'], [('x', '1', '1')])
        with pytest.raises(NotFiniteDimensional, match="cap 5"):
            build_algebra(q, [], f101, path_length_cap=5)

    def test_point_algebra(self, f101):
        k = point_algebra(f101)
        assert k.dim == 1
        assert point_algebra(f101) is k


class TestDerivedAlgebras:
    """Tests for opposites and tensor products."""

    def test_opposite_involution(self, sigma):
        op = opposite(sigma)
        assert op.name == 'Σ^op'
        assert op.quiver.arrows[0].name == 'gamma^op'
        assert opposite(op) is sigma

    def test_opposite_reverses_arrows(self, lambda_):
        op = opposite(lambda_)
        beta = op.quiver.arrow('beta^op')
        assert (beta.source, beta.target) == (1, 0)
        assert op.dim == lambda_.dim

    def test_to_opposite(self, lambda_):
        """The anti-isomorphism sends an arrow to its reversed arrow."""
        op = opposite(lambda_)
        alpha = lambda_.arrow_element(lambda_.quiver.arrow('alpha').index)
        image = to_opposite(lambda_, {alpha: lambda_.field.one})
        assert image == {op.arrow_element(op.quiver.arrow('alpha^op').index): lambda_.field.one}

    def test_tensor_names(self, lambda_, sigma):
        t = tensor_algebra(lambda_, opposite(sigma))
        assert t.quiver.vertices == ['1×3', '2×3']
        assert [a.name for a in t.quiver.arrows] == ['alpha×3', 'beta×3', '1×gamma^op', '2×gamma^op']
        assert t.dim == 8

    def test_tensor_is_cached(self, lambda_, sigma):
        assert tensor_algebra(lambda_, sigma) is tensor_algebra(lambda_, sigma)

    def test_enveloping_dims(self, lambda_, sigma):
        assert enveloping(lambda_).dim == 16
        assert enveloping(sigma).dim == 4

    def test_tensor_arrow_bookkeeping(self, lambda_, sigma):
        t = tensor_algebra(lambda_, sigma)
        k = t.right_arrow(1, 0)
        assert t.arrow_origin(k) == ('right', 1, 0)
        assert t.arrow_origin(t.left_arrow(1, 0)) == ('left', 1, 0)
        assert t.vertex_pair(t.vertex_of(1, 0)) == (1, 0)

    def test_tensor_associative(self, sigma):
        assert is_associative(enveloping(sigma))

    def test_field_mismatch(self, sigma):
        with pytest.raises(FieldMismatch):
            tensor_algebra(sigma, corpus.dual_numbers(Field(0)))
