"""
Tests for representations, Hom spaces, splitting and tensor products.
"""

import pytest

from algebras.algebra import enveloping, opposite
from common import override_settings
from common.errors import AlgebraMismatch, DimensionMismatch
from reps.iso import is_isomorphic, split_off_summand, split_off_with_maps, strip_projectives
from reps.morphisms import (
    direct_sum,
    dual,
    hom_space,
    is_projective,
    kernel,
    projective_cover,
    restrict,
)
from reps.rep import Hom, projective, regular_module, rep_from_rows, semisimple_top, simple
from reps.tensor import left_unit, regular_bimodule, tensor_over, twisted_bimodule


class TestRep:
    """Tests for building representations."""

    def test_projective_dims(self, lambda_):
        """P(1) has basis e1, α, β and P(2) is simple."""
        assert projective(lambda_, '1').dims == [2, 1]
        assert projective(lambda_, '2').dims == [0, 1]
        assert regular_module(lambda_).total_dim == 4

    def test_projective_is_cached(self, lambda_):
        assert projective(lambda_, '1') is projective(lambda_, '1')

    def test_simple(self, lambda_):
        s = simple(lambda_, '1')
        assert s.dims == [1, 0]
        assert s.label == 'S(1)'

    def test_top(self, lambda_):
        assert semisimple_top(lambda_).dims == [1, 1]

    def test_relation_must_act_as_zero(self, sigma):
        """γ acting by the identity violates γ² = 0."""
        with pytest.raises(ValueError, match="does not satisfy"):
            rep_from_rows(sigma, [1], {'gamma': [[1]]})

    def test_wrong_matrix_shape(self, sigma):
        with pytest.raises(DimensionMismatch, match="Row 0"):
            rep_from_rows(sigma, [2], {'gamma': [[0, 0, 0], [1, 0, 0]]})

    def test_unknown_arrow(self, sigma):
        with pytest.raises(ValueError, match="Unknown arrow"):
            rep_from_rows(sigma, [2], {'delta': [[0, 0], [1, 0]]})

    def test_omitted_arrows_act_as_zero(self, sigma):
        x = rep_from_rows(sigma, [2], {})
        assert x.dims == [2]
        assert hom_space(x, x).dim == 4


class TestHom:
    """Tests for Hom spaces and homomorphism arithmetic."""

    def test_hom_from_projective(self, lambda_):
        """Hom(P(v), X) has dimension dim X_v."""
        p1 = projective(lambda_, '1')
        assert hom_space(p1, simple(lambda_, '1')).dim == 1
        assert hom_space(p1, regular_module(lambda_)).dim == 2

    def test_hom_into_projective(self, lambda_):
        """S(1) and S(2) both embed in the socle of P(1)."""
        p1 = projective(lambda_, '1')
        assert hom_space(simple(lambda_, '1'), p1).dim == 1
        assert hom_space(simple(lambda_, '2'), p1).dim == 1

    def test_endomorphisms_of_dual_numbers(self, sigma):
        assert hom_space(regular_module(sigma), regular_module(sigma)).dim == 2

    def test_algebra_mismatch(self, lambda_, sigma):
        with pytest.raises(AlgebraMismatch):
            hom_space(simple(lambda_, '1'), simple(sigma, '3'))

    def test_identity_and_inverse(self, lambda_):
        p1 = projective(lambda_, '1')
        ident = Hom.identity(p1)
        assert ident.is_isomorphism()
        assert ident.inverse() == ident
        assert ident.compose(ident) == ident

    def test_coordinates(self, sigma):
        space = hom_space(regular_module(sigma), regular_module(sigma))
        f = space.basis[1]
        assert space.combination(space.coordinates(f)) == f


class TestCoversAndKernels:
    """Tests for projective covers, kernels and projectivity."""

    def test_cover_of_simple(self, lambda_):
        p, epi = projective_cover(simple(lambda_, '1'))
        assert p.dims == [2, 1]
        assert epi.is_surjective()

    def test_kernel_is_radical(self, lambda_):
        _, epi = projective_cover(simple(lambda_, '1'))
        k, inc = kernel(epi)
        assert k.dims == [1, 1]
        assert inc.is_injective()

    def test_is_projective(self, lambda_):
        assert is_projective(projective(lambda_, '1'))
        assert not is_projective(simple(lambda_, '1'))
        assert is_projective(simple(lambda_, '2'))


class TestIsomorphism:
    """Tests for isomorphism testing and summand splitting."""

    def test_regular_is_projective(self, sigma):
        ok, witness = is_isomorphic(regular_module(sigma), projective(sigma, '3'))
        assert ok
        assert witness.is_isomorphism()

    def test_different_dims(self, lambda_):
        assert is_isomorphic(simple(lambda_, '1'), simple(lambda_, '2')) == (False, None)

    def test_same_dims_not_isomorphic(self, sigma):
        """k ⊕ k and Σ both have dimension 2."""
        semisimple = rep_from_rows(sigma, [2], {})
        ok, _ = is_isomorphic(semisimple, regular_module(sigma))
        assert not ok

    def test_strip_projectives(self, lambda_):
        s1 = simple(lambda_, '1')
        total, _, _ = direct_sum([projective(lambda_, '1'), s1])
        stripped = strip_projectives(total)
        assert stripped.dims == [1, 0]
        assert is_isomorphic(stripped, s1)[0]

    def test_split_off_summand(self, lambda_):
        complement = split_off_summand(regular_module(lambda_), projective(lambda_, '2'))
        assert complement is not None
        assert is_isomorphic(complement, projective(lambda_, '1'))[0]

    def test_split_off_missing_summand(self, lambda_):
        assert split_off_summand(projective(lambda_, '1'), simple(lambda_, '1')) is None

    def test_split_off_decomposable_summand(self, lambda_):
        """With no random attempts a single basis pair never splits S1 ⊕ S1; the Fitting peel does."""
        override_settings(iso_attempts=0)
        s1, s2 = simple(lambda_, '1'), simple(lambda_, '2')
        t, _, _ = direct_sum([s1, s1])
        x, _, _ = direct_sum([s1, s2, s1])
        split = split_off_with_maps(x, t)
        assert split is not None
        assert split.summand_projection.compose(split.summand_inclusion) == Hom.identity(t)
        assert is_isomorphic(split.complement, s2)[0]

    def test_peel_rejects_missing_summand(self, lambda_):
        override_settings(iso_attempts=0)
        s1 = simple(lambda_, '1')
        t, _, _ = direct_sum([s1, s1])
        x, _, _ = direct_sum([s1, simple(lambda_, '2'), projective(lambda_, '1')])
        assert split_off_with_maps(x, t) is None


class TestBimodules:
    """Tests for bimodules, restriction and tensor products."""

    def test_regular_bimodule(self, sigma):
        b = regular_bimodule(sigma)
        assert b.algebra is enveloping(sigma)
        assert b.dims == [2]

    def test_restrict(self, lambda_):
        b = regular_bimodule(lambda_)
        assert restrict(b, 'left').dims == [2, 2]
        assert restrict(b, 'right').dims == [3, 1]
        with pytest.raises(ValueError, match="Unknown side"):
            restrict(b, 'middle')

    def test_tensor_with_regular(self, sigma):
        """Σ ⊗_Σ Σ ≅ Σ through the multiplication map."""
        b = regular_bimodule(sigma)
        w = tensor_over(b, b)
        assert w.dims == [2]
        assert left_unit(b).is_isomorphism()

    def test_tensor_with_left_module(self, sigma):
        s = simple(sigma, '3')
        w = tensor_over(regular_bimodule(sigma), s)
        assert w.algebra is sigma
        assert w.dims == [1]

    def test_tensor_mismatch(self, lambda_, sigma):
        with pytest.raises(AlgebraMismatch, match="No common middle"):
            tensor_over(regular_bimodule(sigma), simple(lambda_, '1'))

    def test_twisted_bimodule(self, sigma):
        t = twisted_bimodule(sigma, {0: 2})
        assert t.dims == [2]
        assert t is twisted_bimodule(sigma, {0: 2})

    def test_zero_twist(self, sigma):
        with pytest.raises(ValueError, match="must be nonzero"):
            twisted_bimodule(sigma, {0: 0})

    def test_dual(self, lambda_):
        d = dual(projective(lambda_, '1'))
        assert d.algebra is opposite(lambda_)
        assert d.dims == [2, 1]
