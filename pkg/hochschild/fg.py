"""
Truncated (Fg) checks.

Finite generation of Ext^*(S, S) over HH^*(Λ), S = Λ/rad Λ, is tested degree
by degree up to a cap D: the least g such that every Ext^n(S, S) with
g < n <= D is spanned by the products φ(HH^{n-j})·Ext^j(S, S), j <= g. A
Gorenstein precheck comes first, since (Fg) forces Λ to be Gorenstein.
Nothing here proves (Fg); the verdicts only say what holds up to D.
"""

import logging
from typing import Dict, List, Optional, Tuple

from algebras.algebra import Algebra
from common import get_settings
from homology.ext import ExtClass, ext, yoneda
from homology.gorenstein import GorensteinReport, gorenstein_report
from hochschild.hh import hh
from hochschild.phi import phi
from linalg.matrix import Subspace
from reps.rep import semisimple_top

logger = logging.getLogger(__name__)

CONSISTENT = 'consistent'
FAILS = 'generation-fails'
SUSPECT = 'suspect'


class FgReport:
    """
    Outcome of fg_check.

    Attributes:
        cap: The degree cap D
        hh_dims: dim HH^n for 0 <= n <= D
        ext_dims: dim Ext^n(S, S) for 0 <= n <= D
        generation_degree: least g found, or None; still searched when suspect
        verdict: 'consistent', 'generation-fails', or 'suspect' when the precheck fails
        failure_degree: lowest degree not generated at g_max, when failing
        hh_generators: (degree, count) of new HH algebra generators in positive degrees
    """

    def __init__(self, algebra: Algebra, cap: int, precheck: GorensteinReport):
        self.algebra = algebra
        self.cap = cap
        self.precheck = precheck
        self.hh_dims: List[int] = []
        self.ext_dims: List[int] = []
        self.generation_degree: Optional[int] = None
        self.verdict = SUSPECT
        self.failure_degree: Optional[int] = None
        self.hh_generators: List[Tuple[int, int]] = []

    @property
    def consistent(self) -> bool:
        return self.verdict == CONSISTENT

    def verdict_text(self) -> str:
        if self.verdict == CONSISTENT:
            return f"consistent-up-to({self.cap})"
        if self.verdict == FAILS:
            return f"generation-fails-at({self.failure_degree})"
        return SUSPECT

    def to_dict(self) -> dict:
        return {
            'cap': self.cap,
            'verdict': self.verdict_text(),
            'generation_degree': self.generation_degree,
            'hh_dims': self.hh_dims,
            'ext_dims': self.ext_dims,
            'hh_generators': [{'degree': n, 'count': c} for n, c in self.hh_generators],
            'gorenstein_precheck': self.precheck.to_dict(),
        }

    def __repr__(self):
        return f"<FgReport {self.algebra.name} {self.verdict_text()} g={self.generation_degree}>"


def _span(classes: List[ExtClass], group) -> Subspace:
    return Subspace.span(group.field, group.dim, [group.coordinates(c.vector) for c in classes])


def generated_pieces(a: Algebra, cap: int, g_max: int) -> Dict[Tuple[int, int], Subspace]:
    """pieces[(n, j)] = span φ(HH^{n-j})·Ext^j(S, S) inside Ext^n(S, S), j <= g_max."""
    s = semisimple_top(a)
    images: Dict[int, List[ExtClass]] = {m: [phi(a, s, h) for h in hh(a, m).basis()] for m in range(cap + 1)}
    pieces = {}
    for n in range(1, cap + 1):
        target = ext(s, s, n)
        for j in range(min(n, g_max) + 1):
            products = [yoneda(x, y) for x in images[n - j] for y in ext(s, s, j).basis()]
            pieces[(n, j)] = _span(products, target)
    return pieces


def hh_generator_profile(a: Algebra, cap: int) -> List[Tuple[int, int]]:
    """Degrees 1..cap where HH^n is not spanned by products of lower positive degrees."""
    profile = []
    for n in range(1, cap + 1):
        group = hh(a, n)
        if not group.dim:
            continue
        products = [yoneda(x, y) for p in range(1, n) for x in hh(a, p).basis() for y in hh(a, n - p).basis()]
        fresh = group.dim - _span(products, group).dim
        if fresh:
            profile.append((n, fresh))
    return profile


def fg_check(a: Algebra, cap: int, g_max: Optional[int] = None, bound: Optional[int] = None) -> FgReport:
    """
    Search the least generation degree g <= g_max valid up to cap.

    Args:
        a: The algebra
        cap: Degree cap D >= 2
        g_max: Largest generation degree tried (default D - 1)
        bound: Injective-dimension bound of the Gorenstein precheck

    Raises:
        ValueError: If D < 2 or g_max >= D
    """
    g_max = cap - 1 if g_max is None else g_max
    if cap < 2 or not 0 <= g_max < cap:
        raise ValueError(f"Need D >= 2 and 0 <= g_max < D, got D = {cap}, g_max = {g_max}")
    bound = max(cap, get_settings().gorenstein_bound) if bound is None else bound
    report = FgReport(a, cap, gorenstein_report(a, bound))

    s = semisimple_top(a)
    report.hh_dims = [hh(a, n).dim for n in range(cap + 1)]
    report.ext_dims = [ext(s, s, n).dim for n in range(cap + 1)]
    pieces = generated_pieces(a, cap, g_max)

    report.verdict = FAILS
    for g in range(g_max + 1):
        failing = None
        for n in range(g + 1, cap + 1):
            span = pieces[(n, 0)]
            for j in range(1, g + 1):
                span = span + pieces[(n, j)]
            if span.dim < report.ext_dims[n]:
                failing = n
                break
        if failing is None:
            report.verdict = CONSISTENT
            report.generation_degree = g
            break
        report.failure_degree = failing
    if report.consistent:
        report.failure_degree = None
    report.hh_generators = hh_generator_profile(a, cap)
    if not report.precheck.is_gorenstein:
        logger.info(f"{a.name}: no Gorenstein certificate within {bound}, (Fg) is suspect")
        report.verdict = SUSPECT
    logger.info(f"(Fg) check for {a.name}: {report}")
    return report
