"""
Tests for singular equivalences with and without level and the maps they
induce on Ext and Hochschild cohomology.
"""

import random

import pytest

from algebras.algebra import enveloping
from common.errors import AlgebraMismatch, HypothesisFailed
from homology.ext import ext
from linalg.field import Field
from reps.rep import simple
from reps.tensor import random_module, regular_bimodule
from semtl import corpus
from semtl.checks import check_semt, check_semtl
from semtl.data import SemtlData, SemtReport
from semtl.levels import increase_level, lift_semt_to_semtl
from semtl.transfer import transfer_ext
from semtl.verify import (
    HhTransferReport,
    spliced_resolution,
    verify_ext_iso,
    verify_fg_transfer_diagram,
    verify_hh_transfer,
)


@pytest.fixture
def identity_sigma(sigma):
    return corpus.identity_data(sigma)


class TestSemtlData:
    """Tests for the data container."""

    def test_example7_dims(self, example7):
        assert example7.lambda_.dim == 4
        assert example7.sigma.dim == 2
        assert example7.m.algebra.dim == 8
        assert enveloping(example7.lambda_).dim == 16

    def test_negative_level(self, sigma):
        b = regular_bimodule(sigma)
        with pytest.raises(ValueError, match="nonnegative"):
            SemtlData(sigma, sigma, b, b, -1)

    def test_wrong_algebra(self, lambda_, sigma):
        b = regular_bimodule(sigma)
        with pytest.raises(AlgebraMismatch):
            SemtlData(lambda_, sigma, b, b, 0)

    def test_to_dict(self, example7):
        summary = example7.to_dict()
        assert summary['level'] == 1
        assert summary['m'] == {'name': 'M', 'dims': [2, 2]}
        assert summary['n'] == {'name': 'N', 'dims': [2, 0]}


class TestCheckSemtl:
    """Tests for the four conditions with level."""

    def test_example7_level_one(self, example7):
        report = check_semtl(example7)
        assert report.passed
        assert report.failed == []

    @pytest.mark.parametrize('p', [3, 101])
    def test_example7_odd_characteristic(self, p):
        """γ^op acts with a sign on M, so N ⊗ M is the first syzygy away from characteristic 2 too."""
        report = check_semtl(corpus.example7(Field(p), level=1))
        assert report.passed
        assert report.failed == []

    def test_example7_level_zero(self, f101):
        """At level 0 the stable tensor products are not the regular bimodules."""
        report = check_semtl(corpus.example7(f101, level=0))
        assert not report.passed
        assert 3 in report.failed
        assert report.condition(1).passed
        assert report.condition(2).passed

    def test_identity(self, identity_sigma):
        assert check_semtl(identity_sigma).passed

    def test_twist(self, sigma):
        assert check_semtl(corpus.twist_data(sigma, {0: 2})).passed

    def test_report_dict(self, identity_sigma):
        summary = check_semtl(identity_sigma).to_dict()
        assert summary['passed']
        assert [c['condition'] for c in summary['conditions']] == [1, 2, 3, 4]
        assert 'witnesses' not in summary['conditions'][0]
        verbose = check_semtl(identity_sigma).to_dict(verbose=True)
        assert 'witnesses' in verbose['conditions'][0]


class TestLevels:
    """Tests for raising the level and lifting."""

    def test_increase_level(self, identity_sigma):
        bumped = increase_level(identity_sigma)
        assert bumped.level == 1
        assert bumped.n is identity_sigma.n
        assert check_semtl(bumped).passed

    def test_increase_example7(self, example7):
        assert check_semtl(increase_level(example7)).passed

    def test_zero_steps(self, identity_sigma):
        assert increase_level(identity_sigma, 0) is identity_sigma

    def test_negative_steps(self, identity_sigma):
        with pytest.raises(ValueError, match="lower"):
            increase_level(identity_sigma, -1)

    def test_lift_needs_pass(self, sigma):
        b = regular_bimodule(sigma)
        with pytest.raises(HypothesisFailed, match="passing"):
            lift_semt_to_semtl(SemtReport(sigma, sigma, b, b, [], None))


class TestCheckSemt:
    """Tests for the conditions without level."""

    def test_pd_one_instance(self, f101):
        a, m, n, x = corpus.pd_one_instance(f101)
        report = check_semt(a, a, m, n)
        assert report.passed
        assert report.witness.certified
        assert report.witness.level == 1

    def test_given_complement(self, f101):
        a, m, n, x = corpus.pd_one_instance(f101)
        assert check_semt(a, a, m, n, x=x, y=x).passed

    def test_lift(self, f101):
        """Lifting replaces M by its first syzygy and gives level 1."""
        a, m, n, _ = corpus.pd_one_instance(f101)
        data = lift_semt_to_semtl(check_semt(a, a, m, n))
        assert data.level == 1
        assert check_semtl(data).passed

    def test_identity_has_level_zero(self, sigma):
        b = regular_bimodule(sigma)
        report = check_semt(sigma, sigma, b, b)
        assert report.passed
        assert report.witness.level == 0


class TestTransfers:
    """Tests for the Ext and Hochschild comparisons."""

    def test_ext_iso_identity(self, identity_sigma, sigma):
        s = simple(sigma, '3')
        report = verify_ext_iso(identity_sigma, s, s, 3)
        assert report.passed
        assert report.first_asserted == 1
        assert report.dims() == {1: (1, 1), 2: (1, 1), 3: (1, 1)}

    def test_ext_iso_wrong_algebra(self, identity_sigma, lambda_):
        s = simple(lambda_, '1')
        with pytest.raises(AlgebraMismatch):
            verify_ext_iso(identity_sigma, s, s, 2)

    def test_transfer_direction(self, identity_sigma, sigma):
        s = simple(sigma, '3')
        x = ext(s, s, 1).basis()[0]
        with pytest.raises(ValueError, match="Unknown direction"):
            transfer_ext(identity_sigma, 'X', x)

    def test_hh_transfer_identity(self, identity_sigma):
        report = verify_hh_transfer(increase_level(identity_sigma), 3)
        assert report.d == 1
        assert [deg.degree for deg in report.degrees] == [2, 3]
        assert report.dims_equal
        assert report.passed

    def test_hh_transfer_needs_level(self, identity_sigma):
        with pytest.raises(HypothesisFailed, match="Level 0"):
            verify_hh_transfer(identity_sigma, 3)

    def test_hh_transfer_needs_gorenstein(self, example7):
        with pytest.raises(HypothesisFailed, match="Gorenstein"):
            verify_hh_transfer(example7, 4)

    def test_spliced_needs_syzygy(self, sigma):
        wrong = simple(enveloping(sigma), 0)
        with pytest.raises(HypothesisFailed, match="is not"):
            spliced_resolution(sigma, wrong, 1)

    def test_ext_iso_random_modules(self, sigma):
        """A twist is a stable equivalence of Morita type: Ext is preserved for random pairs."""
        data = corpus.twist_data(sigma, {0: 2})
        rng = random.Random(11)
        for _ in range(20):
            a = random_module(sigma, [0] * rng.randint(1, 2), rng.randint(0, 2), rng)
            b = random_module(sigma, [0] * rng.randint(1, 2), rng.randint(0, 2), rng)
            report = verify_ext_iso(data, a, b, 2)
            assert report.first_asserted == 1
            assert report.passed

    def test_hh_transfer_rotation_multiplicative(self, identity_sigma):
        report = verify_hh_transfer(increase_level(identity_sigma), 4, samples=4)
        assert report.sampled_pairs > 0
        assert report.multiplicative
        assert report.rotation_multiplicative
        assert report.passed

    def test_hh_passed_needs_rotation_multiplicative(self):
        assert not HhTransferReport(1, 3, [], True, False, 0).passed
        assert HhTransferReport(1, 3, [], True, True, 0).passed

    def test_fg_diagram(self, sigma):
        data = increase_level(corpus.twist_data(sigma, {0: 2}))
        report = verify_fg_transfer_diagram(data, 3)
        assert report.d == 1
        assert [deg.degree for deg in report.degrees] == [2, 3]
        assert report.commutes
        assert report.fg_agree
        assert report.passed

    def test_fg_diagram_needs_level(self, identity_sigma):
        with pytest.raises(HypothesisFailed, match="Level 0"):
            verify_fg_transfer_diagram(identity_sigma, 3)
