"""
The defining conditions of singular equivalences of Morita type.

Conditions (1) and (2) ask for M and N to be projective on each side. For
the variant with level, (3) and (4) ask for M ⊗_Σ N ≅ Ω^l(Λ) and
N ⊗_Λ M ≅ Ω^l(Σ) in the stable categories of the enveloping algebras; both
sides are stripped of projective summands and compared up to isomorphism,
which decides stable isomorphism by Krull-Schmidt. Without level, (3) and
(4) split off a copy of the regular bimodule and certify that the
complement has finite projective dimension.
"""

import logging
from typing import List, Optional, Tuple

from algebras.algebra import Algebra
from common import get_settings
from common.errors import PdBoundExceeded
from hochschild.hh import bimodule_resolution
from homology.resolution import ExceedsBound, projective_dimension
from reps.iso import is_isomorphic, split_off_with_maps, strip_projectives
from reps.morphisms import is_projective, projective_cover, restrict
from reps.rep import Rep
from reps.tensor import regular_bimodule, tensor_over
from semtl.data import ConditionResult, SemtlData, SemtlReport, SemtReport, SemtWitness

logger = logging.getLogger(__name__)


# =============================================================================
# One-sided projectivity
# =============================================================================

def _summands(x: Rep) -> List[str]:
    p, _ = projective_cover(x)
    return [x.algebra.quiver.vertices[v] for v in p.generators]


def one_sided_condition(number: int, b: Rep) -> ConditionResult:
    """b projective as a module over each tensor factor."""
    left, right = restrict(b, 'left'), restrict(b, 'right')
    left_ok, right_ok = is_projective(left), is_projective(right)
    sides = []
    if not left_ok:
        sides.append(f"left over {left.algebra.name}")
    if not right_ok:
        sides.append(f"right over {right.algebra.name}")
    if sides:
        detail = f"{b.label} is not projective ({', '.join(sides)})"
    else:
        detail = f"{b.label} is projective on both sides"
    witnesses = {'left': left, 'right': right}
    if left_ok:
        witnesses['left_summands'] = ' '.join(_summands(left)) or '0'
    if right_ok:
        witnesses['right_summands'] = ' '.join(_summands(right)) or '0'
    return ConditionResult(number, left_ok and right_ok, detail, witnesses)


# =============================================================================
# With level
# =============================================================================

def stable_syzygy_condition(number: int, product: Rep, a: Algebra, level: int,
                            seed: Optional[int] = None) -> ConditionResult:
    """product ≅ Ω^level_{a^e}(a) in the stable category."""
    syzygy = bimodule_resolution(a).syzygy(level)
    stripped_product = strip_projectives(product)
    stripped_syzygy = strip_projectives(syzygy)
    ok, iso = is_isomorphic(stripped_product, stripped_syzygy, seed)
    detail = (f"{product.label} stripped to dims {stripped_product.dims}, "
              f"Ω^{level}({a.name}) stripped to dims {stripped_syzygy.dims}: "
              f"{'isomorphic' if ok else 'not isomorphic'}")
    witnesses = {
        'tensor': product,
        'stripped_tensor': stripped_product,
        'stripped_syzygy': stripped_syzygy,
        'iso': iso,
    }
    return ConditionResult(number, ok, detail, witnesses)


def check_semtl(data: SemtlData, seed: Optional[int] = None) -> SemtlReport:
    """
    Check the four conditions for data.m and data.n at data.level.

    Args:
        data: The bimodules and level
        seed: Seed of the randomized isomorphism search (default from settings)

    Returns:
        A report with one ConditionResult per condition
    """
    conditions = [
        one_sided_condition(1, data.m),
        one_sided_condition(2, data.n),
        stable_syzygy_condition(3, tensor_over(data.m, data.n, data.sigma), data.lambda_, data.level, seed),
        stable_syzygy_condition(4, tensor_over(data.n, data.m, data.lambda_), data.sigma, data.level, seed),
    ]
    report = SemtlReport(data, conditions)
    logger.info(f"check_semtl {data}: {report}")
    return report


# =============================================================================
# Without level
# =============================================================================

def _split_condition(number: int, product: Rep, a: Algebra, given: Optional[Rep],
                     cap: int, seed: Optional[int]) -> Tuple[ConditionResult, Optional[Rep], Optional[int]]:
    """
    Raises:
        PdBoundExceeded: If the complement's projective dimension exceeds cap
    """
    split = split_off_with_maps(product, regular_bimodule(a), seed)
    if split is None:
        detail = f"No summand {a.name} split off {product.label} (dims {product.dims})"
        return ConditionResult(number, False, detail, {'tensor': product}), None, None
    complement = split.complement
    if given is not None:
        ok, _ = is_isomorphic(complement, given, seed)
        if not ok:
            detail = f"Complement of {a.name} in {product.label} is not isomorphic to {given.label}"
            return ConditionResult(number, False, detail, {'complement': complement}), None, None
        complement = given
    pd = projective_dimension(complement, cap)
    if isinstance(pd, ExceedsBound):
        raise PdBoundExceeded(complement.label, cap)
    detail = f"{product.label} ≅ {a.name} ⊕ {complement.label} with pd {pd}"
    return ConditionResult(number, True, detail, {'complement': complement, 'pd': pd}), complement, pd


def check_semt(lambda_: Algebra, sigma: Algebra, m: Rep, n: Rep, x: Optional[Rep] = None,
               y: Optional[Rep] = None, cap: Optional[int] = None, seed: Optional[int] = None) -> SemtReport:
    """
    Check a singular equivalence of Morita type: M ⊗ N ≅ Λ ⊕ X and
    N ⊗ M ≅ Σ ⊕ Y with pd X, pd Y finite.

    Args:
        x, y: Expected complements; found by splitting when omitted
        cap: Projective dimension cap (default from settings)

    Raises:
        PdBoundExceeded: If pd X or pd Y is not certified within the cap
        AlgebraMismatch: If the bimodules are over the wrong algebras
    """
    cap = get_settings().pd_cap if cap is None else cap
    SemtlData(lambda_, sigma, m, n, 0)  # algebra checks only
    conditions = [one_sided_condition(1, m), one_sided_condition(2, n)]
    third, x_mod, pd_x = _split_condition(3, tensor_over(m, n, sigma), lambda_, x, cap, seed)
    fourth, y_mod, pd_y = _split_condition(4, tensor_over(n, m, lambda_), sigma, y, cap, seed)
    conditions.extend([third, fourth])
    witness = None
    if x_mod is not None and y_mod is not None:
        witness = SemtWitness(x_mod, y_mod, pd_x, pd_y)
    report = SemtReport(lambda_, sigma, m, n, conditions, witness)
    logger.info(f"check_semt {m.label}, {n.label}: {report}")
    return report
