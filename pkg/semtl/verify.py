"""
Degreewise verification of what an equivalence with level transfers
between two Gorenstein algebras.

- verify_ext_iso: N ⊗_Λ - is bijective on Ext^n for n above
  d = max(id Λ, id Σ), and in every positive degree between maximal
  Cohen-Macaulay modules.
- verify_hh_transfer: dim HH^n(Λ) = dim HH^n(Σ) for n above
  d = max(l, 2·id Λ, 2·id Σ), through the rotation ρ_l on a resolution of
  Λ with M ⊗ Σ ⊗ N as l-th syzygy and the map M ⊗ - ⊗ N, and symmetrically.
- verify_fg_transfer_diagram: the diagram relating φ_A for A = Λ/rad Λ and
  φ_B for B = N ⊗_Λ A through those isomorphisms commutes, and the
  truncated (Fg) verdicts of Λ and Σ agree.

Everything is checked as equalities of matrices on the window (d, D].
"""

import logging
import random
from typing import Dict, List, Optional, Tuple

from algebras.algebra import Algebra
from common import get_settings
from common.errors import AlgebraMismatch, HypothesisFailed, NoGorensteinCertificate
from hochschild.fg import FgReport, fg_check
from hochschild.hh import bimodule_resolution, hh
from hochschild.phi import phi_map
from hochschild.transfer import sample_pairs
from homology.ext import ExtClass, LinearMap, ext, map_on_basis, pullback, pushforward, transport, yoneda
from homology.gorenstein import gorenstein_report, is_mcm
from homology.resolution import ImageResolution, SplicedResolution, minimal_resolution
from homology.rotation import rotation
from homology.transfer import FunctorTransfer, left_tensor, right_tensor
from reps.iso import is_isomorphic, strip_projectives_with_maps
from reps.rep import Hom, Rep, semisimple_top
from reps.tensor import associator, left_unit, regular_bimodule, tensor_functor_on_hom, tensor_over
from semtl.data import SemtlData
from semtl.transfer import ext_transfer, hh_transfer, source_algebra

logger = logging.getLogger(__name__)


# =============================================================================
# Shared pieces
# =============================================================================

def certified_dims(data: SemtlData, bound: Optional[int] = None) -> Tuple[int, int]:
    """
    (id Λ, id Σ).

    Raises:
        NoGorensteinCertificate: If either algebra has no certificate within the bound
    """
    return gorenstein_report(data.lambda_, bound).require(), gorenstein_report(data.sigma, bound).require()


def _hypotheses(data: SemtlData, bound: Optional[int]) -> int:
    """d = max(l, 2·id Λ, 2·id Σ) for data with level >= 1."""
    if data.level < 1:
        raise HypothesisFailed(f"Level {data.level} given; raise it to at least 1 with increase_level")
    try:
        id_lambda, id_sigma = certified_dims(data, bound)
    except NoGorensteinCertificate as exc:
        raise HypothesisFailed(f"Both algebras must be Gorenstein: {exc}") from exc
    return max(data.level, 2 * id_lambda, 2 * id_sigma)


def spliced_resolution(a: Algebra, w: Rep, level: int) -> SplicedResolution:
    """
    A projective resolution of a over a^e with w as its level-th syzygy.

    Raises:
        HypothesisFailed: If w is not stably isomorphic to the minimal syzygy,
            or the minimal syzygy has projective summands
    """
    cache = w.cache('spliced')
    key = (id(a), level)
    if key not in cache:
        base = bimodule_resolution(a)
        stripped = strip_projectives_with_maps(w)
        ok, witness = is_isomorphic(stripped.stripped, base.syzygy(level))
        if not ok:
            raise HypothesisFailed(f"{w.label} without projective summands is not Ω^{level}({a.name})")
        cache[key] = (a, SplicedResolution(base, level, stripped, witness))
    return cache[key][1]


def _map_record(linear: LinearMap) -> dict:
    return {
        'source_dim': linear.source_dim,
        'target_dim': linear.target_dim,
        'rank': linear.rank,
        'injective': linear.is_injective(),
        'bijective': linear.is_bijective(),
    }


def _multiplicative(transfer, pairs: List[Tuple[ExtClass, ExtClass]]) -> bool:
    return all(transfer(yoneda(x, y)) == yoneda(transfer(x), transfer(y)) for x, y in pairs)


# =============================================================================
# Ext
# =============================================================================

class ExtIsoDegree:
    """The transfer on Ext^n, and whether the degree is inside the asserted window."""

    def __init__(self, degree: int, linear: LinearMap, asserted: bool):
        self.degree = degree
        self.linear = linear
        self.asserted = asserted

    @property
    def bijective(self) -> bool:
        return self.linear.is_bijective()

    def to_dict(self) -> dict:
        result = {'degree': self.degree, 'asserted': self.asserted}
        result.update(_map_record(self.linear))
        return result

    def __repr__(self):
        return f"<ExtIsoDegree n={self.degree} {self.linear.source_dim}->{self.linear.target_dim} bijective={self.bijective}>"


class ExtIsoReport:
    def __init__(self, direction: str, d: int, first_asserted: int, mcm: bool, degrees: List[ExtIsoDegree]):
        self.direction = direction
        self.d = d
        self.first_asserted = first_asserted
        self.mcm = mcm
        self.degrees = degrees

    @property
    def passed(self) -> bool:
        return all(deg.bijective for deg in self.degrees if deg.asserted)

    def dims(self) -> Dict[int, Tuple[int, int]]:
        return {deg.degree: (deg.linear.source_dim, deg.linear.target_dim) for deg in self.degrees}

    def to_dict(self) -> dict:
        return {
            'direction': self.direction,
            'd': self.d,
            'first_asserted_degree': self.first_asserted,
            'mcm': self.mcm,
            'degrees': [deg.to_dict() for deg in self.degrees],
            'passed': self.passed,
        }

    def __repr__(self):
        return f"<ExtIsoReport {self.direction}⊗- d={self.d} passed={self.passed}>"


def verify_ext_iso(data: SemtlData, a: Rep, b: Rep, upto: int, direction: str = 'N',
                   bound: Optional[int] = None) -> ExtIsoReport:
    """
    Rank of the transfer on Ext^n(a, b) for 1 <= n <= upto.

    Bijectivity is asserted for n > d, and for every n >= 1 when a and b are
    both maximal Cohen-Macaulay.

    Raises:
        NoGorensteinCertificate: If either algebra has no certificate
        AlgebraMismatch: If a or b is not over the source algebra of the direction
    """
    id_lambda, id_sigma = certified_dims(data, bound)
    d = max(id_lambda, id_sigma)
    algebra = source_algebra(data, direction)
    if a.algebra is not algebra:
        raise AlgebraMismatch(f"{a.label} is over {a.algebra.name}, not {algebra.name}")
    a.check_algebra(b)
    report = gorenstein_report(algebra, bound)
    mcm = is_mcm(a, report) and is_mcm(b, report)
    first = 1 if mcm else d + 1
    transfer = ext_transfer(data, direction)

    degrees = []
    for n in range(1, upto + 1):
        linear = transfer.map(ext(a, b, n))
        degrees.append(ExtIsoDegree(n, linear, n >= first))
        logger.debug(f"{transfer.name} on Ext^{n}({a.label}, {b.label}): {linear}")
    result = ExtIsoReport(direction, d, first, mcm, degrees)
    logger.info(f"verify_ext_iso {a.label}, {b.label}: {result}")
    return result


# =============================================================================
# Hochschild cohomology
# =============================================================================

class HhLeg:
    """
    One side of the Hochschild comparison: ρ_l on HH(rotated) and the
    two-sided transfer from HH(other), both landing in Ext(W, W).
    """

    def __init__(self, rotated: Algebra, other: Algebra, transfer: FunctorTransfer, level: int):
        self.rotated = rotated
        self.other = other
        self.transfer = transfer
        self.level = level
        self.w = transfer.on_objects(regular_bimodule(other))
        self.resolution = spliced_resolution(rotated, self.w, level)

    def rotate(self, h: ExtClass) -> ExtClass:
        image = rotation(h, self.level, self.resolution, self.resolution)
        return transport(image, minimal_resolution(self.w))

    def rotation_map(self, n: int) -> LinearMap:
        return map_on_basis(hh(self.rotated, n), ext(self.w, self.w, n), self.rotate,
                            name=f"rho_{self.level}({self.rotated.name})")

    def transfer_map(self, n: int) -> LinearMap:
        return self.transfer.map(hh(self.other, n))

    def __repr__(self):
        return f"<HhLeg HH({self.rotated.name}) and HH({self.other.name}) into Ext({self.w.label})>"


class HhTransferDegree:
    def __init__(self, degree: int, dim_lambda: int, dim_sigma: int, maps: Dict[str, LinearMap]):
        self.degree = degree
        self.dim_lambda = dim_lambda
        self.dim_sigma = dim_sigma
        self.maps = maps

    @property
    def dims_equal(self) -> bool:
        return self.dim_lambda == self.dim_sigma

    @property
    def bijective(self) -> bool:
        return all(m.is_bijective() for m in self.maps.values())

    @property
    def injective(self) -> bool:
        return all(m.is_injective() for m in self.maps.values())

    def to_dict(self) -> dict:
        return {
            'degree': self.degree,
            'dim_lambda': self.dim_lambda,
            'dim_sigma': self.dim_sigma,
            'dims_equal': self.dims_equal,
            'maps': {name: _map_record(m) for name, m in self.maps.items()},
        }

    def __repr__(self):
        return f"<HhTransferDegree n={self.degree} {self.dim_lambda}/{self.dim_sigma} bijective={self.bijective}>"


class HhTransferReport:
    def __init__(self, d: int, upto: int, degrees: List[HhTransferDegree], multiplicative: bool,
                 rotation_multiplicative: bool, sampled_pairs: int):
        self.d = d
        self.upto = upto
        self.degrees = degrees
        self.multiplicative = multiplicative
        self.rotation_multiplicative = rotation_multiplicative
        self.sampled_pairs = sampled_pairs

    @property
    def dims_equal(self) -> bool:
        return all(deg.dims_equal for deg in self.degrees)

    @property
    def passed(self) -> bool:
        return (self.dims_equal and self.multiplicative and self.rotation_multiplicative
                and all(deg.bijective for deg in self.degrees))

    def to_dict(self) -> dict:
        return {
            'd': self.d,
            'window': [self.d, self.upto],
            'degrees': [deg.to_dict() for deg in self.degrees],
            'multiplicative': self.multiplicative,
            'rotation_multiplicative': self.rotation_multiplicative,
            'sampled_pairs': self.sampled_pairs,
            'passed': self.passed,
        }

    def __repr__(self):
        return f"<HhTransferReport window=({self.d}, {self.upto}] passed={self.passed}>"


def verify_hh_transfer(data: SemtlData, upto: int, samples: int = 8, seed: Optional[int] = None,
                       bound: Optional[int] = None) -> HhTransferReport:
    """
    Compare HH^n(Λ) and HH^n(Σ) for d < n <= upto.

    In each degree four maps are computed: ρ_l: HH^n(Λ) -> Ext^n(W, W) with
    W = M ⊗ Σ ⊗ N, M ⊗ - ⊗ N: HH^n(Σ) -> Ext^n(W, W), and their mirror images
    on the Σ side. The Hochschild isomorphism is (M ⊗ - ⊗ N)^{-1} ∘ ρ_l.

    Raises:
        HypothesisFailed: If the level is 0 or an algebra is not certified Gorenstein
    """
    d = _hypotheses(data, bound)
    level = data.level
    on_lambda = HhLeg(data.lambda_, data.sigma, hh_transfer(data, 'M'), level)
    on_sigma = HhLeg(data.sigma, data.lambda_, hh_transfer(data, 'N'), level)

    window = list(range(d + 1, upto + 1))
    degrees = []
    for n in window:
        maps = {}
        for leg in (on_lambda, on_sigma):
            maps[f"rho_{level}({leg.rotated.name})"] = leg.rotation_map(n)
            maps[leg.transfer.name] = leg.transfer_map(n)
        degree = HhTransferDegree(n, hh(data.lambda_, n).dim, hh(data.sigma, n).dim, maps)
        degrees.append(degree)
        logger.debug(f"HH transfer in degree {n}: {degree}")

    rng = random.Random(get_settings().seed if seed is None else seed)
    lambda_pairs = sample_pairs(window, upto, {n: hh(data.lambda_, n).basis() for n in window}, samples, rng)
    sigma_pairs = sample_pairs(window, upto, {n: hh(data.sigma, n).basis() for n in window}, samples, rng)
    multiplicative = (_multiplicative(on_sigma.transfer.apply, lambda_pairs)
                      and _multiplicative(on_lambda.transfer.apply, sigma_pairs))
    rotation_multiplicative = (_multiplicative(on_lambda.rotate, lambda_pairs)
                               and _multiplicative(on_sigma.rotate, sigma_pairs))
    report = HhTransferReport(d, upto, degrees, multiplicative, rotation_multiplicative,
                              len(lambda_pairs) + len(sigma_pairs))
    logger.info(f"verify_hh_transfer {data}: {report}")
    return report


# =============================================================================
# The (Fg) diagram
# =============================================================================

def _conjugation(iso: Hom):
    """x ↦ the class of iso^{-1} ∘ x ∘ iso, for iso: Z -> Y and x ∈ Ext(Y, Y)."""
    inverse = iso.inverse()

    def apply(x: ExtClass) -> ExtClass:
        return pullback(pushforward(x, inverse), iso)

    return apply


class DiagramDegree:
    """The squares of the diagram in one degree."""

    def __init__(self, degree: int, upper: bool, lower: bool, outer: bool,
                 f_bijective: bool, g_bijective: bool):
        self.degree = degree
        self.upper = upper
        self.lower = lower
        self.outer = outer
        self.f_bijective = f_bijective
        self.g_bijective = g_bijective

    @property
    def commutes(self) -> bool:
        return self.upper and self.lower and self.outer

    def to_dict(self) -> dict:
        return {
            'degree': self.degree,
            'upper_square': self.upper,
            'lower_square': self.lower,
            'outer': self.outer,
            'f_bijective': self.f_bijective,
            'g_bijective': self.g_bijective,
        }

    def __repr__(self):
        return f"<DiagramDegree n={self.degree} commutes={self.commutes}>"


class DiagramReport:
    def __init__(self, d: int, upto: int, degrees: List[DiagramDegree], fg_lambda: FgReport, fg_sigma: FgReport):
        self.d = d
        self.upto = upto
        self.degrees = degrees
        self.fg_lambda = fg_lambda
        self.fg_sigma = fg_sigma

    @property
    def commutes(self) -> bool:
        return all(deg.commutes for deg in self.degrees)

    @property
    def fg_agree(self) -> bool:
        return self.fg_lambda.verdict == self.fg_sigma.verdict

    @property
    def passed(self) -> bool:
        return self.commutes and all(deg.f_bijective and deg.g_bijective for deg in self.degrees) and self.fg_agree

    def to_dict(self) -> dict:
        return {
            'd': self.d,
            'window': [self.d, self.upto],
            'degrees': [deg.to_dict() for deg in self.degrees],
            'commutes': self.commutes,
            'fg_lambda': self.fg_lambda.verdict_text(),
            'fg_sigma': self.fg_sigma.verdict_text(),
            'fg_agree': self.fg_agree,
            'passed': self.passed,
        }

    def __repr__(self):
        return f"<DiagramReport window=({self.d}, {self.upto}] commutes={self.commutes} fg_agree={self.fg_agree}>"


class FgDiagram:
    """
    The maps of the diagram for A = Λ/rad Λ and B = N ⊗_Λ A.

    With W = M ⊗ Σ ⊗ N and Z = W ⊗_Λ A:
        φ_A: HH(Λ) -> Ext(A, A)          φ_B: HH(Σ) -> Ext(B, B)
        ρ_l: HH(Λ) -> Ext(W, W)          ρ'_l: Ext(A, A) -> Ext(Z, Z)
        M ⊗ - ⊗ N: HH(Σ) -> Ext(W, W)    - ⊗ A: Ext(W, W) -> Ext(Z, Z)
        M ⊗ -: Ext(B, B) -> Ext(M ⊗ B, M ⊗ B), moved to Ext(Z, Z) along Z ≅ M ⊗ B
    """

    def __init__(self, data: SemtlData):
        self.data = data
        lam, sig = data.lambda_, data.sigma
        self.leg = HhLeg(lam, sig, hh_transfer(data, 'M'), data.level)
        self.a = semisimple_top(lam)
        self.b = tensor_over(data.n, self.a, lam)
        self.tensor_a = FunctorTransfer(right_tensor(self.a, lam), name=f"-⊗{self.a.label}")
        self.tensor_m = FunctorTransfer(left_tensor(data.m, sig), name='M⊗-')
        self.z = self.tensor_a.on_objects(self.leg.w)
        self.resolution_a = ImageResolution(self.leg.resolution, self.tensor_a.functor, left_unit(self.a, lam),
                                            name=f"π⊗{self.a.label}")
        self.mb = self.tensor_m.on_objects(self.b)
        self.iso = self._z_to_mb()

    def _z_to_mb(self) -> Hom:
        """((M ⊗ Σ) ⊗ N) ⊗ A -> (M ⊗ Σ) ⊗ (N ⊗ A) -> M ⊗ (Σ ⊗ B) -> M ⊗ B."""
        data = self.data
        m_sigma = tensor_over(data.m, regular_bimodule(data.sigma), data.sigma)
        first = associator(m_sigma, data.n, self.a)
        second = associator(data.m, regular_bimodule(data.sigma), self.b)
        unit = tensor_functor_on_hom(data.m, left_unit(self.b, data.sigma), data.sigma)
        return unit.compose(second.compose(first))

    def rotate_top(self, x: ExtClass) -> ExtClass:
        image = rotation(x, self.data.level, self.resolution_a, self.resolution_a)
        return transport(image, minimal_resolution(self.z))

    def degree(self, n: int) -> DiagramDegree:
        data = self.data
        lam, sig = data.lambda_, data.sigma
        phi_a = phi_map(lam, self.a, n)
        phi_b = phi_map(sig, self.b, n)
        rho = self.leg.rotation_map(n)
        two_sided = self.leg.transfer_map(n)
        rho_a = map_on_basis(ext(self.a, self.a, n), ext(self.z, self.z, n), self.rotate_top, name="rho'")
        down = self.tensor_a.map(ext(self.leg.w, self.leg.w, n))
        m_leg = self.tensor_m.map(ext(self.b, self.b, n))
        moved = map_on_basis(ext(self.mb, self.mb, n), ext(self.z, self.z, n), _conjugation(self.iso),
                             name='Z≅M⊗B').compose(m_leg)

        upper = rho_a.compose(phi_a).equals(down.compose(rho))
        lower = down.compose(two_sided).equals(moved.compose(phi_b))
        f_ok, g_ok = two_sided.is_bijective() and rho.is_bijective(), moved.is_bijective() and rho_a.is_bijective()
        outer = False
        if f_ok and g_ok:
            f = two_sided.inverse().compose(rho)
            g = moved.inverse().compose(rho_a)
            outer = g.compose(phi_a).equals(phi_b.compose(f))
        return DiagramDegree(n, upper, lower, outer, f_ok, g_ok)

    def __repr__(self):
        return f"<FgDiagram A={self.a.label} B={self.b.label} Z={self.z.label}>"


def verify_fg_transfer_diagram(data: SemtlData, upto: int, fg_cap: Optional[int] = None,
                               bound: Optional[int] = None) -> DiagramReport:
    """
    Check the diagram on (d, upto] and compare fg_check verdicts of Λ and Σ.

    Args:
        data: Equivalence data with level >= 1 between Gorenstein algebras
        upto: Top degree D of the window
        fg_cap: Degree cap of the two fg_check runs (default upto)

    Raises:
        HypothesisFailed: If the level is 0 or an algebra is not certified Gorenstein
    """
    d = _hypotheses(data, bound)
    diagram = FgDiagram(data)
    degrees = []
    for n in range(d + 1, upto + 1):
        degree = diagram.degree(n)
        degrees.append(degree)
        logger.debug(f"Diagram in degree {n}: {degree}")
    cap = upto if fg_cap is None else fg_cap
    report = DiagramReport(d, upto, degrees, fg_check(data.lambda_, cap), fg_check(data.sigma, cap))
    logger.info(f"verify_fg_transfer_diagram {data}: {report}")
    return report
