"""
Injective and Gorenstein dimensions, maximal Cohen-Macaulay modules.

Injective dimensions are projective dimensions of k-duals over the opposite
algebra. An infinite dimension is never claimed: a resolution that has not
stopped by the bound is reported as ExceedsBound.
"""

import logging
from typing import Optional

from algebras.algebra import Algebra, opposite
from common import get_settings
from common.errors import NoGorensteinCertificate
from homology.ext import ext
from homology.resolution import Dimension, ExceedsBound, projective_dimension
from reps.morphisms import dual
from reps.rep import Rep, regular_module

logger = logging.getLogger(__name__)


def injective_dimension(x: Rep, bound: Optional[int] = None) -> Dimension:
    """id(x) = pd of D(x) over the opposite algebra, or ExceedsBound(bound)."""
    bound = get_settings().gorenstein_bound if bound is None else bound
    if bound < 0:
        raise ValueError(f"Bound must be nonnegative, got {bound}")
    return projective_dimension(dual(x), bound)


class GorensteinReport:
    """
    One-sided injective dimensions of the regular module and the verdict.

    verdict is 'yes' with dimension d, or 'no_evidence' with dimension None.
    """

    def __init__(self, algebra: Algebra, left_id: Dimension, right_id: Dimension, bound: int):
        self.algebra = algebra
        self.left_id = left_id
        self.right_id = right_id
        self.bound = bound
        if isinstance(left_id, int) and isinstance(right_id, int) and left_id == right_id:
            self.verdict = 'yes'
            self.dimension: Optional[int] = left_id
        else:
            if isinstance(left_id, int) and isinstance(right_id, int):
                logger.warning(f"{algebra.name}: left id {left_id} differs from right id {right_id}")
            self.verdict = 'no_evidence'
            self.dimension = None

    @property
    def is_gorenstein(self) -> bool:
        return self.verdict == 'yes'

    def require(self) -> int:
        """
        Raises:
            NoGorensteinCertificate: If the verdict is not 'yes'
        """
        if self.dimension is None:
            raise NoGorensteinCertificate(
                f"{self.algebra.name} has no Gorenstein certificate within bound {self.bound}"
            )
        return self.dimension

    def to_dict(self) -> dict:
        def render(value):
            return value if isinstance(value, int) else {'exceeds': value.bound}
        return {
            'left_id': render(self.left_id),
            'right_id': render(self.right_id),
            'gorenstein': (
                {'yes': self.dimension} if self.is_gorenstein else {'no_evidence': self.bound}
            ),
        }

    def __repr__(self):
        if self.is_gorenstein:
            return f"<GorensteinReport {self.algebra.name} yes({self.dimension})>"
        return f"<GorensteinReport {self.algebra.name} no_evidence({self.bound})>"


def gorenstein_report(a: Algebra, bound: Optional[int] = None) -> GorensteinReport:
    """Injective dimensions of Λ as a left and as a right module."""
    bound = get_settings().gorenstein_bound if bound is None else bound
    cache = a.__dict__.setdefault('_gorenstein', {})
    if bound not in cache:
        left = injective_dimension(regular_module(a), bound)
        right = injective_dimension(regular_module(opposite(a)), bound)
        cache[bound] = GorensteinReport(a, left, right, bound)
        logger.info(f"Gorenstein report for {a.name}: {cache[bound]}")
    return cache[bound]


def mcm_window(d: int, multiplier: Optional[int] = None) -> range:
    """Degrees 1..max(multiplier·d, 1) checked for Ext vanishing."""
    multiplier = get_settings().mcm_window if multiplier is None else multiplier
    return range(1, max(multiplier * d, 1) + 1)


def is_mcm(c: Rep, report: Optional[GorensteinReport] = None, multiplier: Optional[int] = None) -> bool:
    """
    Ext^i(c, Λ) = 0 throughout the vanishing window.

    Raises:
        NoGorensteinCertificate: If the algebra has no Gorenstein certificate
    """
    a = c.algebra
    report = gorenstein_report(a) if report is None else report
    d = report.require()
    regular = regular_module(a)
    for i in mcm_window(d, multiplier):
        if ext(c, regular, i).dim:
            logger.debug(f"{c.label}: Ext^{i}(-, {a.name}) is nonzero")
            return False
    return True


def exceeds(value: Dimension) -> bool:
    return isinstance(value, ExceedsBound)
