"""
Transfer of Ext^{>d}_{Λ^e}(U, U) along K ⊗_Λ - and - ⊗_Λ K, where K is a
bimodule syzygy of Λ.

The transfer is compared with the rotation ρ_i taken on the resolution
P_• ⊗_Λ U (or U ⊗_Λ P_•) of U, whose i-th syzygy is K ⊗_Λ U (or U ⊗_Λ K).
The two agree up to the sign (-1)^{in}.
"""

import logging
import random
from typing import Dict, List, Optional, Tuple

from algebras.algebra import Algebra
from common import get_settings
from common.errors import HypothesisFailed, NoGorensteinCertificate
from homology.ext import ExtClass, ext, pullback, pushforward, transport, yoneda
from homology.gorenstein import gorenstein_report
from homology.resolution import ImageResolution, Resolution, minimal_resolution
from homology.rotation import rotation
from homology.transfer import FunctorTransfer, left_tensor, right_tensor
from hochschild.hh import bimodule_resolution
from reps.morphisms import is_projective, restrict
from reps.rep import Rep
from reps.tensor import hom_tensor_functor, left_unit, right_unit, tensor_functor_on_hom, tensor_over

logger = logging.getLogger(__name__)

SIDES = ('left', 'right')


def check_one_sided_projective(u: Rep):
    """
    Raises:
        HypothesisFailed: If u is not projective on both sides
    """
    for side in SIDES:
        if not is_projective(restrict(u, side)):
            raise HypothesisFailed(f"{u.label} is not projective as a {side} module")


def tensored_resolution(a: Algebra, u: Rep, side: str) -> ImageResolution:
    """P_• ⊗_Λ u (side 'left') or u ⊗_Λ P_• (side 'right'), resolving u."""
    cache = u.cache('tensored_resolution')
    key = (id(a), side)
    if key not in cache:
        base = bimodule_resolution(a)
        if side == 'left':
            functor = (lambda p: tensor_over(p, u, a), lambda f: hom_tensor_functor(f, u, a))
            unit = left_unit(u, a)
        else:
            functor = (lambda p: tensor_over(u, p, a), lambda f: tensor_functor_on_hom(u, f, a))
            unit = right_unit(u, a)
        cache[key] = (a, ImageResolution(base, functor, unit, name=f"P⊗{u.label}"))
    return cache[key][1]


class DegreeTransfer:
    """Result of the transfer check in one degree."""

    def __init__(self, degree: int, source_dim: int, target_dim: int, bijective: bool,
                 signs: List[Optional[int]], expected_sign: int):
        self.degree = degree
        self.source_dim = source_dim
        self.target_dim = target_dim
        self.bijective = bijective
        self.signs = signs
        self.expected_sign = expected_sign

    @property
    def up_to_sign(self) -> bool:
        """Every basis class goes to ± its rotation, with one sign."""
        return None not in self.signs and len(set(self.signs)) <= 1

    @property
    def sign_matches(self) -> bool:
        return self.up_to_sign and all(s == self.expected_sign for s in self.signs)

    def to_dict(self) -> dict:
        return {
            'degree': self.degree,
            'source_dim': self.source_dim,
            'target_dim': self.target_dim,
            'bijective': self.bijective,
            'up_to_sign': self.up_to_sign,
            'sign_matches': self.sign_matches,
        }

    def __repr__(self):
        return f"<DegreeTransfer n={self.degree} {self.source_dim}->{self.target_dim} bijective={self.bijective}>"


class TransferReport:
    """Per-degree results and the multiplicativity check on sampled pairs."""

    def __init__(self, side: str, syzygy_index: int, window: Tuple[int, int],
                 degrees: List[DegreeTransfer], multiplicative: bool, sampled_pairs: int):
        self.side = side
        self.syzygy_index = syzygy_index
        self.window = window
        self.degrees = degrees
        self.multiplicative = multiplicative
        self.sampled_pairs = sampled_pairs

    @property
    def bijective(self) -> bool:
        return all(d.bijective for d in self.degrees)

    @property
    def passed(self) -> bool:
        return self.bijective and self.multiplicative and all(d.sign_matches for d in self.degrees)

    def to_dict(self) -> dict:
        return {
            'side': self.side,
            'syzygy_index': self.syzygy_index,
            'window': list(self.window),
            'degrees': [d.to_dict() for d in self.degrees],
            'multiplicative': self.multiplicative,
            'sampled_pairs': self.sampled_pairs,
            'passed': self.passed,
        }

    def __repr__(self):
        return f"<TransferReport {self.side} i={self.syzygy_index} window={self.window} passed={self.passed}>"


def _sign(t: ExtClass, r: ExtClass) -> Optional[int]:
    if t == r:
        return 1
    if t == r.scale(-t.group.field.one):
        return -1
    return None


def _reference(x: ExtClass, i: int, sigma: ImageResolution, target_res: Resolution) -> ExtClass:
    """ρ_i(x) on the target resolution; for i = 0, x moved along the unit isomorphism."""
    if i == 0:
        unit = sigma.target_iso
        return pullback(pushforward(x, unit.inverse()), unit)
    return transport(rotation(x, i, sigma, sigma), target_res)


def sample_pairs(degrees: List[int], hi: int, bases: Dict[int, List[ExtClass]],
                 samples: int, rng: random.Random) -> List[Tuple[ExtClass, ExtClass]]:
    """Basis pairs with degrees summing to at most hi, sampled down to `samples`."""
    pairs = [(x, y) for p in degrees for q in degrees if p + q <= hi
             for x in bases[p] for y in bases[q]]
    if len(pairs) <= samples:
        return pairs
    return rng.sample(pairs, samples)


def tensor_transfer_check(a: Algebra, u: Rep, i: int, window: Tuple[int, int], side: str = 'left',
                          samples: int = 16, seed: Optional[int] = None) -> TransferReport:
    """
    Check that K ⊗_Λ - (side 'left') or - ⊗_Λ K (side 'right') is a graded rng
    isomorphism on Ext^{>lo}_{Λ^e}(u, u) inside the window, for K = Ω^i(Λ).

    Args:
        a: A Gorenstein algebra Λ
        u: Λ^e-module projective on both sides
        i: Syzygy index of K
        window: (lo, hi] with lo > 2·id Λ and lo > i
        side: 'left' or 'right'
        samples: Number of basis pairs sampled for multiplicativity

    Raises:
        HypothesisFailed: If a hypothesis does not hold
        ValueError: For an unknown side
    """
    if side not in SIDES:
        raise ValueError(f"Unknown side '{side}'")
    lo, hi = window
    try:
        d = gorenstein_report(a).require()
    except NoGorensteinCertificate as exc:
        raise HypothesisFailed(str(exc)) from exc
    if lo <= 2 * d or i >= lo or i < 0:
        raise HypothesisFailed(f"Window ({lo}, {hi}] needs lo > {2 * d} and 0 <= i < lo, got i = {i}")
    check_one_sided_projective(u)

    k = bimodule_resolution(a).syzygy(i)
    functor = left_tensor(k, a) if side == 'left' else right_tensor(k, a)
    transfer = FunctorTransfer(functor, name=f"Ω^{i}⊗-" if side == 'left' else f"-⊗Ω^{i}")
    sigma = tensored_resolution(a, u, side)
    image = transfer.on_objects(u)
    target_res = minimal_resolution(image)

    degrees = list(range(lo + 1, hi + 1))
    bases: Dict[int, List[ExtClass]] = {}
    results = []
    for n in degrees:
        group = ext(u, u, n)
        bases[n] = group.basis()
        linear = transfer.map(group)
        signs = []
        for x in bases[n]:
            signs.append(_sign(transfer.apply(x), _reference(x, i, sigma, target_res)))
        expected = -1 if (i * n) % 2 else 1
        results.append(DegreeTransfer(n, group.dim, linear.target_dim, linear.is_bijective(), signs, expected))
        logger.debug(f"Transfer {transfer.name} in degree {n}: {linear}")

    rng = random.Random(get_settings().seed if seed is None else seed)
    pairs = sample_pairs(degrees, hi, bases, samples, rng)
    multiplicative = all(
        transfer.apply(yoneda(x, y)) == yoneda(transfer.apply(x), transfer.apply(y)) for x, y in pairs
    )
    report = TransferReport(side, i, window, results, multiplicative, len(pairs))
    logger.info(f"Tensor transfer check for {a.name}: {report}")
    return report
