"""
Tests for resolutions, Ext groups, Gorenstein dimensions, stable Hom and
rotation maps.
"""

import pytest

from common.errors import ComposabilityMismatch, NoGorensteinCertificate
from homology.ext import LinearMap, ext, yoneda
from homology.gorenstein import gorenstein_report, injective_dimension, is_mcm
from homology.resolution import ExceedsBound, min_resolution, projective_dimension, syzygy
from homology.rotation import rotation, rotation_map
from homology.stable import stable_hom, sthom_to_ext
from homology.transfer import FunctorTransfer, left_tensor
from linalg.matrix import from_rows
from reps.iso import is_isomorphic
from reps.rep import projective, regular_module, semisimple_top, simple
from reps.tensor import regular_bimodule
from semtl import corpus


class TestResolution:
    """Tests for minimal projective resolutions."""

    def test_dual_numbers_periodic(self, sigma):
        """Every term of the resolution of k over k[γ]/(γ²) is Σ itself."""
        res = min_resolution(simple(sigma, '3'), 4)
        assert [res.term(i).dims for i in range(5)] == [[2]] * 5
        assert res.is_complex(4)
        assert res.is_exact(3)
        assert res.is_minimal_upto(4)

    def test_syzygy_of_simple(self, lambda_):
        """Ω S(1) = S(1) ⊕ S(2), and S(2) = P(2) is projective."""
        assert syzygy(simple(lambda_, '1'), 1).dims == [1, 1]
        assert syzygy(simple(lambda_, '1'), 0).dims == [1, 0]

    def test_projective_dimension(self, lambda_, sigma):
        assert projective_dimension(projective(lambda_, '1')) == 0
        assert projective_dimension(simple(lambda_, '2')) == 0
        assert projective_dimension(simple(sigma, '3'), bound=5) == ExceedsBound(5)

    def test_hereditary_pd(self, f101):
        """Over kA₂ the simple at the source has a length one resolution."""
        a = corpus.a2(f101)
        assert projective_dimension(simple(a, '1')) == 1

    def test_negative_length(self, sigma):
        with pytest.raises(ValueError, match="nonnegative"):
            min_resolution(simple(sigma, '3'), -1)


class TestExt:
    """Tests for Ext groups and the Yoneda product."""

    def test_ext_of_simple(self, sigma):
        s = simple(sigma, '3')
        assert [ext(s, s, n).dim for n in range(7)] == [1] * 7

    def test_ext_into_injective(self, sigma):
        """Σ is self-injective, so Ext^n(-, Σ) vanishes in positive degrees."""
        s = simple(sigma, '3')
        assert ext(s, regular_module(sigma), 1).dim == 0
        assert ext(s, regular_module(sigma), 2).dim == 0

    def test_yoneda_square(self, sigma):
        """The degree one class generates a polynomial ring."""
        s = simple(sigma, '3')
        x = ext(s, s, 1).basis()[0]
        square = yoneda(x, x)
        assert square.degree == 2
        assert not square.is_zero()

    def test_yoneda_mismatch(self, lambda_):
        s1, s2 = simple(lambda_, '1'), simple(lambda_, '2')
        x = ext(s1, s1, 1).basis()[0]
        other = ext(s2, s2, 0).basis()[0]
        with pytest.raises(ComposabilityMismatch):
            yoneda(x, other)

    def test_class_arithmetic(self, sigma):
        s = simple(sigma, '3')
        group = ext(s, s, 2)
        x = group.basis()[0]
        assert (x - x).is_zero()
        assert (x + x) == x.scale(sigma.field(2))
        assert x.coordinates() == [sigma.field.one]

    def test_negative_degree(self, sigma):
        s = simple(sigma, '3')
        with pytest.raises(ValueError, match="nonnegative"):
            ext(s, s, -1)


class TestLinearMap:
    """Tests for linear maps between Ext groups."""

    def test_inverse(self, f101):
        f = LinearMap(2, 2, from_rows([[1, 1], [0, 1]], f101), name='f')
        assert f.is_bijective()
        assert f.compose(f.inverse()).equals(LinearMap(2, 2, from_rows([[1, 0], [0, 1]], f101)))

    def test_not_invertible(self, f101):
        f = LinearMap(2, 1, from_rows([[1, 0]], f101), name='f')
        assert f.is_surjective()
        assert not f.is_injective()
        with pytest.raises(ValueError, match="not invertible"):
            f.inverse()


class TestGorenstein:
    """Tests for injective dimensions and Gorenstein verdicts."""

    def test_self_injective(self, sigma):
        report = gorenstein_report(sigma)
        assert report.verdict == 'yes'
        assert report.require() == 0
        assert report.to_dict() == {'left_id': 0, 'right_id': 0, 'gorenstein': {'yes': 0}}

    def test_hereditary(self, f101):
        report = gorenstein_report(corpus.a2(f101))
        assert report.is_gorenstein
        assert report.dimension == 1

    def test_no_certificate(self, lambda_):
        """Λ has infinite injective dimension, so no bound certifies it."""
        report = gorenstein_report(lambda_, 10)
        assert report.verdict == 'no_evidence'
        assert report.to_dict()['gorenstein'] == {'no_evidence': 10}
        with pytest.raises(NoGorensteinCertificate):
            report.require()

    def test_negative_bound(self, sigma):
        with pytest.raises(ValueError, match="nonnegative"):
            injective_dimension(regular_module(sigma), -1)

    def test_mcm(self, sigma):
        """Every module over a self-injective algebra is MCM."""
        assert is_mcm(simple(sigma, '3'))

    def test_mcm_needs_certificate(self, lambda_):
        with pytest.raises(NoGorensteinCertificate):
            is_mcm(simple(lambda_, '1'))

    def test_non_mcm(self, f101):
        """Over kA₂ the simple S(1) has Ext^1(S(1), Λ) ≠ 0."""
        a = corpus.a2(f101)
        assert not is_mcm(simple(a, '1'))
        assert is_mcm(projective(a, '1'))


class TestStableAndRotation:
    """Tests for stable Hom, the map to Ext and rotation maps."""

    def test_stable_hom_kills_projectives(self, sigma):
        regular = regular_module(sigma)
        assert stable_hom(regular, regular).dim == 0
        s = simple(sigma, '3')
        assert stable_hom(s, s).dim == 1

    def test_sthom_to_ext(self, sigma):
        s = simple(sigma, '3')
        for n in (1, 2):
            iso = sthom_to_ext(s, s, n)
            assert iso.source.dim == 1
            assert iso.target.dim == 1
            assert iso.is_bijective()

    def test_sthom_degree(self, sigma):
        s = simple(sigma, '3')
        with pytest.raises(ValueError, match="positive"):
            sthom_to_ext(s, s, 0)

    def test_rotation_map_bijective(self, sigma):
        s = simple(sigma, '3')
        group = ext(s, s, 3)
        for i in range(3):
            assert rotation_map(group, i).is_bijective()

    def test_rotation_zero_is_identity(self, sigma):
        s = simple(sigma, '3')
        x = ext(s, s, 2).basis()[0]
        assert rotation(x, 0) == x

    def test_rotation_index(self, sigma):
        s = simple(sigma, '3')
        x = ext(s, s, 2).basis()[0]
        with pytest.raises(IndexError):
            rotation(x, 2)

    def test_syzygy_is_stably_the_simple(self, sigma):
        s = simple(sigma, '3')
        assert is_isomorphic(syzygy(s, 1), s)[0]

    def test_sthom_to_ext_nakayama(self, f101):
        """Over a self-injective Nakayama algebra every simple pair satisfies the bridge."""
        a = corpus.nakayama(2, 2, f101)
        simples = [simple(a, v) for v in ('0', '1')]
        for c in simples:
            for target in simples:
                for n in (1, 2, 3):
                    iso = sthom_to_ext(c, target, n)
                    assert iso.source.dim == iso.target.dim
                    assert iso.is_bijective()

    def test_rotation_sweep_nakayama(self, f101):
        """Every rotation 1 <= i < n <= 8 is bijective over a self-injective algebra."""
        a = corpus.nakayama(2, 2, f101)
        top = semisimple_top(a)
        for n in range(2, 9):
            group = ext(top, top, n)
            assert group.dim == 2
            for i in range(1, n):
                assert rotation_map(group, i).is_bijective()


class TestFunctorTransfer:
    """Tests for Ext maps of tensor functors."""

    def test_regular_bimodule_transfer(self, sigma):
        """Σ ⊗_Σ - induces isomorphisms on Ext."""
        s = simple(sigma, '3')
        transfer = FunctorTransfer(left_tensor(regular_bimodule(sigma), sigma), name='Σ⊗-')
        for n in (1, 2):
            assert transfer.map(ext(s, s, n)).is_bijective()
