"""
Tests for Hochschild cohomology, the bar complex, φ maps, graded slices and
the truncated (Fg) check.
"""

import pytest

from common.errors import CapExceeded, HypothesisFailed
from hochschild.bar import bar_cochain_oracle
from hochschild.fg import fg_check
from hochschild.graded import ext_slice, graded_slice, hh_slice
from hochschild.hh import center_dim, hh, hh_dims
from hochschild.phi import phi_map
from hochschild.transfer import tensor_transfer_check
from reps.rep import simple
from reps.tensor import regular_bimodule
from semtl import corpus


class TestHochschild:
    """Tests for HH^* over the enveloping algebra."""

    def test_dual_numbers(self, sigma):
        """HH of k[γ]/(γ²) away from characteristic 2."""
        assert hh_dims(sigma, 3) == [2, 1, 1, 1]

    def test_center_matches_hh0(self, lambda_, sigma):
        assert center_dim(sigma) == 2
        assert center_dim(lambda_) == hh(lambda_, 0).dim

    def test_negative_degree(self, sigma):
        with pytest.raises(ValueError, match="nonnegative"):
            hh(sigma, -1)


class TestBarOracle:
    """Tests for the cochain complex cross-check."""

    def test_reduced_agrees(self, sigma):
        assert [bar_cochain_oracle(sigma, n) for n in range(4)] == hh_dims(sigma, 3)

    def test_unreduced_agrees(self, sigma):
        assert bar_cochain_oracle(sigma, 2, reduced=False) == 1

    @pytest.mark.parametrize('build', [
        corpus.dual_numbers,
        corpus.example7_lambda,
        corpus.a2,
        lambda field: corpus.nakayama(2, 2, field),
    ], ids=['dual_numbers', 'example7_lambda', 'a2', 'nakayama_2_2'])
    def test_bundled_algebras_agree(self, f101, build):
        """Cochains and the enveloping-algebra resolution agree on every bundled algebra."""
        a = build(f101)
        assert [bar_cochain_oracle(a, n) for n in range(5)] == hh_dims(a, 4)

    def test_cap(self, sigma):
        with pytest.raises(CapExceeded, match="exceeds cap"):
            bar_cochain_oracle(sigma, 7, cap=6)

    def test_negative_degree(self, sigma):
        with pytest.raises(ValueError, match="nonnegative"):
            bar_cochain_oracle(sigma, -1)


class TestPhi:
    """Tests for the characteristic map to Ext."""

    def test_degree_zero(self, sigma):
        """The center maps onto End(k) = k."""
        assert phi_map(sigma, simple(sigma, '3'), 0).is_surjective()

    def test_even_degree(self, sigma):
        """Away from characteristic 2 the periodicity class maps to the square."""
        assert phi_map(sigma, simple(sigma, '3'), 2).is_bijective()


class TestGradedSlice:
    """Tests for graded slices and their product tables."""

    def test_ext_slice(self, sigma):
        piece = ext_slice(simple(sigma, '3'), 0, 4)
        assert piece.dims == {1: 1, 2: 1, 3: 1, 4: 1}
        assert piece.product(1, 1)[0][0] != [sigma.field.zero]
        assert piece.is_associative()

    def test_hh_slice(self, sigma):
        piece = hh_slice(sigma, 0, 3)
        assert piece.to_dict() == {'window': [0, 3], 'dims': {'1': 1, '2': 1, '3': 1}}

    def test_empty_window(self, sigma):
        piece = graded_slice(sigma, 2, 2)
        assert piece.degrees == []
        assert piece.is_empty()

    def test_reversed_window(self, sigma):
        with pytest.raises(ValueError, match="Reversed window"):
            graded_slice(sigma, 3, 1)

    def test_bad_source(self):
        with pytest.raises(TypeError):
            graded_slice('Σ', 0, 1)


class TestFg:
    """Tests for the truncated (Fg) check."""

    def test_dual_numbers_consistent(self, sigma):
        report = fg_check(sigma, 4)
        assert report.consistent
        assert report.verdict_text() == 'consistent-up-to(4)'
        assert report.ext_dims == [1] * 5
        assert report.hh_dims == [2, 1, 1, 1, 1]
        assert report.failure_degree is None

    def test_non_gorenstein_suspect(self, lambda_):
        """Without a Gorenstein certificate everything is still computed; only the verdict drops."""
        report = fg_check(lambda_, 4)
        assert report.verdict_text() == 'suspect'
        assert len(report.hh_dims) == 5
        assert report.hh_dims[0] == center_dim(lambda_)
        # Ω(S1) = S1 ⊕ P2, so Ext^n(S, S) has dimension 2 in every degree
        assert report.ext_dims == [2, 2, 2, 2, 2]
        assert report.generation_degree is not None or report.failure_degree is not None
        assert report.to_dict()['gorenstein_precheck']['gorenstein'] == {'no_evidence': 10}

    def test_bad_cap(self, sigma):
        with pytest.raises(ValueError, match="D >= 2"):
            fg_check(sigma, 1)
        with pytest.raises(ValueError, match="g_max"):
            fg_check(sigma, 4, g_max=4)


class TestTensorTransfer:
    """Tests for the transfer along syzygies of the regular bimodule."""

    def test_identity_transfer(self, sigma):
        report = tensor_transfer_check(sigma, regular_bimodule(sigma), 0, (1, 3))
        assert report.bijective
        assert report.multiplicative
        assert [d.degree for d in report.degrees] == [2, 3]

    def test_window_hypothesis(self, sigma):
        with pytest.raises(HypothesisFailed, match="Window"):
            tensor_transfer_check(sigma, regular_bimodule(sigma), 2, (1, 3))

    @pytest.mark.parametrize('side', ['left', 'right'])
    def test_first_syzygy_sign(self, sigma, side):
        """Ω¹ ⊗ - agrees with ρ_1 up to (-1)^n."""
        report = tensor_transfer_check(sigma, regular_bimodule(sigma), 1, (2, 6), side=side)
        assert [d.degree for d in report.degrees] == [3, 4, 5, 6]
        assert report.bijective
        assert report.multiplicative
        assert [d.expected_sign for d in report.degrees] == [-1, 1, -1, 1]
        assert all(d.sign_matches for d in report.degrees)
        assert report.passed

    def test_passed_needs_matching_sign(self, sigma):
        report = tensor_transfer_check(sigma, regular_bimodule(sigma), 1, (2, 4))
        report.degrees[0].expected_sign = -report.degrees[0].expected_sign
        assert report.degrees[0].up_to_sign
        assert not report.passed

    def test_window_must_exceed_twice_dimension(self, f101):
        """For kA₂ (id = 1) the window must start above 2."""
        a = corpus.a2(f101)
        with pytest.raises(HypothesisFailed, match="lo > 2"):
            tensor_transfer_check(a, regular_bimodule(a), 0, (2, 4))

    def test_needs_gorenstein(self, lambda_):
        with pytest.raises(HypothesisFailed):
            tensor_transfer_check(lambda_, regular_bimodule(lambda_), 0, (20, 22))

    def test_unknown_side(self, sigma):
        with pytest.raises(ValueError, match="Unknown side"):
            tensor_transfer_check(sigma, regular_bimodule(sigma), 0, (1, 3), side='middle')
