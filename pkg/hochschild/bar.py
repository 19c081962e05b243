"""
Hochschild cohomology from the bar complex.

This is an independent check on HH computed through minimal resolutions.
The standard complex has C^n = Hom_k(Λ^{⊗n}, Λ). The reduced complex works
relative to the vertex subalgebra E: cochains are E-bimodule maps
rad(Λ)^{⊗_E n} -> Λ, so a chain a_1 ⊗ ... ⊗ a_n of nontrivial paths with
source(a_i) = target(a_{i+1}) is sent into the paths source(a_n) -> target(a_1).

In both cases
    (δf)(a_1, ..., a_{n+1}) = a_1·f(a_2, ..., a_{n+1})
                              + Σ (-1)^i f(..., a_i·a_{i+1}, ...)
                              + (-1)^{n+1} f(a_1, ..., a_n)·a_{n+1}.
"""

import itertools
import logging
from typing import Dict, Hashable, List, Optional, Tuple

from algebras.algebra import Algebra
from common import get_settings
from common.errors import CapExceeded
from linalg import matrix as mx

logger = logging.getLogger(__name__)

# Largest number of unreduced cochain coordinates in the target of δ
UNREDUCED_LIMIT = 40000

Chain = Hashable


class BarComplex:
    """Cochain spaces of the (reduced or standard) Hochschild complex."""

    def __init__(self, algebra: Algebra, reduced: bool = True):
        self.algebra = algebra
        self.reduced = reduced
        self.radical = [i for i, p in enumerate(algebra.basis) if p[1]]
        self._chains: Dict[int, List[Chain]] = {}
        self._index: Dict[int, Dict[Tuple[Chain, int], int]] = {}

    # -------------------------------------------------------------------------
    # Chains
    # -------------------------------------------------------------------------

    def chains(self, n: int) -> List[Chain]:
        """
        Degree-n chains. An empty reduced chain is ('e', v), one per vertex.
        """
        if n not in self._chains:
            a = self.algebra
            if not self.reduced:
                self._chains[n] = list(itertools.product(range(a.dim), repeat=n))
            elif n == 0:
                self._chains[n] = [('e', v) for v in range(a.vertex_count)]
            else:
                chains = [(i,) for i in self.radical]
                for _ in range(n - 1):
                    chains = [c + (j,) for c in chains for j in self.radical
                              if a.target(j) == a.source(c[-1])]
                self._chains[n] = chains
        return self._chains[n]

    def values(self, chain: Chain) -> List[int]:
        """Basis elements a cochain may take on chain."""
        a = self.algebra
        if not self.reduced:
            return list(range(a.dim))
        if chain and chain[0] == 'e':
            v = chain[1]
            return a.paths_between(v, v)
        return a.paths_between(a.source(chain[-1]), a.target(chain[0]))

    def index(self, n: int) -> Dict[Tuple[Chain, int], int]:
        if n not in self._index:
            table: Dict[Tuple[Chain, int], int] = {}
            for chain in self.chains(n):
                for o in self.values(chain):
                    table[(chain, o)] = len(table)
            self._index[n] = table
        return self._index[n]

    def dim(self, n: int) -> int:
        return len(self.index(n))

    def _empty_chains(self) -> List[Chain]:
        """What remains when the only entry of a length-1 chain is dropped."""
        if not self.reduced:
            return [()]
        return [('e', v) for v in range(self.algebra.vertex_count)]

    # -------------------------------------------------------------------------
    # Differential
    # -------------------------------------------------------------------------

    def differential(self, n: int) -> Dict[int, Dict[int, object]]:
        """δ^n: C^n -> C^{n+1} as a sparse row dictionary."""
        a = self.algebra
        field = a.field
        cols, rows = self.index(n), self.index(n + 1)
        dod: Dict[int, Dict[int, object]] = {}

        def put(chain_out: Chain, value: int, chain_in: Chain, o: int, coeff):
            row = rows.get((chain_out, value))
            col = cols.get((chain_in, o))
            if row is None or col is None or not coeff:
                return
            entry = dod.setdefault(row, {})
            entry[col] = entry.get(col, field.zero) + coeff

        sign_last = field.one if (n + 1) % 2 == 0 else -field.one
        for chain in self.chains(n + 1):
            first, last = chain[0], chain[-1]
            heads = self._empty_chains() if n == 0 else [chain[1:]]
            tails = self._empty_chains() if n == 0 else [chain[:-1]]
            for rest in heads:
                for o in self.values(rest):
                    for k, c in a.product(first, o).items():
                        put(chain, k, rest, o, c)
            for i in range(n):
                sign = field.one if (i + 1) % 2 == 0 else -field.one
                for m, c in a.product(chain[i], chain[i + 1]).items():
                    inner = chain[:i] + (m,) + chain[i + 2:]
                    for o in self.values(inner):
                        put(chain, o, inner, o, sign * c)
            for rest in tails:
                for o in self.values(rest):
                    for k, c in a.product(o, last).items():
                        put(chain, k, rest, o, sign_last * c)
        cleaned = {r: {c: v for c, v in row.items() if v} for r, row in dod.items()}
        return {r: row for r, row in cleaned.items() if row}

    def rank(self, n: int) -> int:
        """rank δ^n (δ^{-1} = 0)."""
        if n < 0:
            return 0
        cols = self.dim(n)
        kernel = mx.kernel_sparse(self.differential(n), self.dim(n + 1), cols, self.algebra.field)
        return cols - kernel.dim

    def cohomology_dim(self, n: int) -> int:
        return self.dim(n) - self.rank(n) - self.rank(n - 1)

    def __repr__(self):
        kind = 'reduced' if self.reduced else 'standard'
        return f"<BarComplex {kind} of {self.algebra.name}>"


def bar_cochain_oracle(a: Algebra, n: int, reduced: bool = True, cap: Optional[int] = None) -> int:
    """
    dim HH^n(a) from the Hochschild cochain complex.

    Raises:
        CapExceeded: If n exceeds the cap, or the standard complex is too large
    """
    cap = get_settings().bar_cap if cap is None else cap
    if n < 0:
        raise ValueError(f"Hochschild degree must be nonnegative, got {n}")
    if n > cap:
        raise CapExceeded(f"Bar complex degree {n} exceeds cap {cap}")
    if not reduced and a.dim ** (n + 2) > UNREDUCED_LIMIT:
        raise CapExceeded(f"Standard bar complex of {a.name} in degree {n} has more than {UNREDUCED_LIMIT} cochains")
    complex_ = BarComplex(a, reduced)
    result = complex_.cohomology_dim(n)
    logger.debug(f"{complex_}: dim HH^{n} = {result}")
    return result
