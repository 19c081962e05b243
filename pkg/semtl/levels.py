"""
Level operations: from an equivalence without level to one with level, and
from level l to level l + 1.

Both replace M by a syzygy of M as a Λ ⊗ Σ^op-module and keep N. The
minimal bimodule syzygy is used; any syzygy would do up to projective
summands.
"""

import logging

from common.errors import HypothesisFailed
from homology.resolution import minimal_resolution
from semtl.data import SemtlData, SemtReport

logger = logging.getLogger(__name__)


def lift_semt_to_semtl(report: SemtReport) -> SemtlData:
    """
    (Ω^l(M), N, l) with l = max(pd X, pd Y).

    Raises:
        HypothesisFailed: If the report did not pass
    """
    if not report.passed:
        raise HypothesisFailed("Lifting needs a passing singular equivalence of Morita type")
    level = report.witness.level
    m = report.m if level == 0 else minimal_resolution(report.m).syzygy(level)
    data = SemtlData(report.lambda_, report.sigma, m, report.n, level)
    logger.info(f"Lifted to {data}")
    return data


def increase_level(data: SemtlData, steps: int = 1) -> SemtlData:
    """
    (Ω^steps(M), N, l + steps).

    Raises:
        ValueError: If steps is negative
    """
    if steps < 0:
        raise ValueError(f"Cannot lower the level by {-steps}")
    if steps == 0:
        return data
    m = minimal_resolution(data.m).syzygy(steps)
    result = data.with_bimodules(m, data.level + steps)
    logger.debug(f"Raised level of {data} to {result.level}")
    return result
