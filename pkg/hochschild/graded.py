"""
Graded slices of Ext rings: the pieces of degree lo < n <= hi with their
Yoneda product tables.
"""

import logging
from typing import Callable, Dict, List, Tuple

from algebras.algebra import Algebra
from homology.ext import ExtClass, ExtGroup, ext, yoneda
from hochschild.hh import hh
from reps.rep import Rep

logger = logging.getLogger(__name__)

Table = Dict[Tuple[int, int], List[List]]


class GradedRngSlice:
    """
    E^n for lo < n <= hi and the products E^p × E^q -> E^{p+q} inside the window.

    products[(p, q)][i][j] holds the coordinates of b^p_i · b^q_j.
    """

    def __init__(self, name: str, lo: int, hi: int, group: Callable[[int], ExtGroup]):
        if lo > hi:
            raise ValueError(f"Reversed window ({lo}, {hi}]")
        self.name = name
        self.lo = lo
        self.hi = hi
        self.group = group
        self.degrees = list(range(max(lo + 1, 0), hi + 1))
        self.dims: Dict[int, int] = {n: group(n).dim for n in self.degrees}
        self._bases: Dict[int, List[ExtClass]] = {}
        self._products: Table = {}

    def basis(self, n: int) -> List[ExtClass]:
        if n not in self._bases:
            self._bases[n] = self.group(n).basis()
        return self._bases[n]

    def labels(self, n: int) -> List[str]:
        return [f"{self.name}^{n}[{i}]" for i in range(self.dims[n])]

    def pairs(self) -> List[Tuple[int, int]]:
        return [(p, q) for p in self.degrees for q in self.degrees if p + q <= self.hi]

    def product(self, p: int, q: int) -> List[List]:
        key = (p, q)
        if key not in self._products:
            target = self.group(p + q)
            self._products[key] = [
                [target.coordinates(yoneda(x, y).vector) for y in self.basis(q)]
                for x in self.basis(p)
            ]
        return self._products[key]

    @property
    def products(self) -> Table:
        return {key: self.product(*key) for key in self.pairs()}

    def multiply(self, x: ExtClass, y: ExtClass) -> ExtClass:
        return yoneda(x, y)

    def is_associative(self) -> bool:
        """(x·y)·z = x·(y·z) on every basis triple inside the window."""
        for p in self.degrees:
            for q in self.degrees:
                for r in self.degrees:
                    if p + q + r > self.hi:
                        continue
                    for x in self.basis(p):
                        for y in self.basis(q):
                            for z in self.basis(r):
                                if yoneda(yoneda(x, y), z) != yoneda(x, yoneda(y, z)):
                                    logger.warning(f"{self.name}: associativity fails in degrees {p}, {q}, {r}")
                                    return False
        return True

    def is_empty(self) -> bool:
        return not any(self.dims.values())

    def to_dict(self) -> dict:
        return {
            'window': [self.lo, self.hi],
            'dims': {str(n): d for n, d in self.dims.items()},
        }

    def __repr__(self):
        return f"<GradedRngSlice {self.name} ({self.lo}, {self.hi}] dims={list(self.dims.values())}>"


def hh_slice(a: Algebra, lo: int, hi: int) -> GradedRngSlice:
    return GradedRngSlice(f"HH({a.name})", lo, hi, lambda n: hh(a, n))


def ext_slice(x: Rep, lo: int, hi: int) -> GradedRngSlice:
    return GradedRngSlice(f"E({x.label})", lo, hi, lambda n: ext(x, x, n))


def graded_slice(source, lo: int, hi: int) -> GradedRngSlice:
    """
    Slice of HH^*(a) when source is an Algebra, of Ext^*(x, x) when it is a Rep.
    """
    if isinstance(source, Algebra):
        return hh_slice(source, lo, hi)
    if isinstance(source, Rep):
        return ext_slice(source, lo, hi)
    raise TypeError(f"Cannot slice {source!r}")
