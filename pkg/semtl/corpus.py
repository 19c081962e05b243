"""
Bundled algebras and bimodule data.

- example7: Λ = kQ/(α², βα) on 1 (loop α), 1 -> 2 (β) and Σ = k[γ]/(γ²)
  with bimodules M, N inducing an equivalence with level 1. Λ is not
  Gorenstein, Σ is self-injective.
- nakayama: the self-injective cyclic Nakayama algebras.
- identity_data, twist_data: the identity equivalence and the one given by
  a twisted bimodule and its inverse twist, both at level 0.
- pd_one_instance: a singular equivalence of Morita type on kA₂ whose
  complements have projective dimension 1.
"""

import logging
from typing import Dict, Optional, Tuple

from algebras.algebra import Algebra, Relation, build_algebra, opposite, tensor_algebra
from algebras.quiver import Quiver
from common import get_settings
from linalg.field import Field
from reps.morphisms import direct_sum
from reps.rep import Rep, rep_from_rows
from reps.tensor import regular_bimodule, twisted_bimodule
from semtl.data import SemtlData

logger = logging.getLogger(__name__)

E = [[0, 0], [1, 0]]
MINUS_E = [[0, 0], [-1, 0]]


def default_field(field: Optional[Field] = None) -> Field:
    return Field.parse(get_settings().field) if field is None else field


def _algebra(name: str, vertices, arrows, relations, field: Field) -> Algebra:
    quiver = Quiver(vertices, arrows)
    parsed = [Relation.from_names(quiver, field, [(1, path)]) for path in relations]
    return build_algebra(quiver, parsed, field, name=name)


# =============================================================================
# Algebras
# =============================================================================

def example7_lambda(field: Optional[Field] = None) -> Algebra:
    """Λ: loop α at 1, β: 1 -> 2, relations α² and βα. Dimension 4."""
    return _algebra('Λ', ['1', '2'], [('alpha', '1', '1'), ('beta', '1', '2')],
                    [['alpha', 'alpha'], ['alpha', 'beta']], default_field(field))


def dual_numbers(field: Optional[Field] = None, name: str = 'Σ', vertex: str = '3', arrow: str = 'gamma') -> Algebra:
    """k[x]/(x²) on one vertex with one loop."""
    return _algebra(name, [vertex], [(arrow, vertex, vertex)], [[arrow, arrow]], default_field(field))


def nakayama(vertices: int, length: int, field: Optional[Field] = None) -> Algebra:
    """
    The cyclic quiver on `vertices` vertices modulo all paths of `length`.

    Raises:
        ValueError: If length < 2 or there are no vertices
    """
    if vertices < 1 or length < 2:
        raise ValueError(f"Nakayama algebra needs at least one vertex and length >= 2, got {vertices}, {length}")
    names = [str(v) for v in range(vertices)]
    arrows = [(f"a{v}", names[v], names[(v + 1) % vertices]) for v in range(vertices)]
    relations = [[f"a{(v + k) % vertices}" for k in range(length)] for v in range(vertices)]
    return _algebra(f"N({vertices},{length})", names, arrows, relations, default_field(field))


def a2(field: Optional[Field] = None) -> Algebra:
    """The path algebra of 1 -> 2."""
    return _algebra('A2', ['1', '2'], [('a', '1', '2')], [], default_field(field))


# =============================================================================
# Bimodule data
# =============================================================================

def example7_bimodules(lambda_: Algebra, sigma: Algebra) -> Tuple[Rep, Rep]:
    """M over Λ ⊗ Σ^op and N over Σ ⊗ Λ^op."""
    v = sigma.quiver.vertices[0]
    gamma = sigma.quiver.arrows[0].name
    m = rep_from_rows(tensor_algebra(lambda_, opposite(sigma)), [2, 2], {
        f"alpha×{v}": E,
        f"beta×{v}": E,
        f"1×{gamma}^op": MINUS_E,
        f"2×{gamma}^op": MINUS_E,
    }, name='M')
    n = rep_from_rows(tensor_algebra(sigma, opposite(lambda_)), [2, 0], {
        f"{gamma}×1": E,
        f"{v}×alpha^op": E,
    }, name='N')
    return m, n


def example7(field: Optional[Field] = None, level: int = 1) -> SemtlData:
    field = default_field(field)
    lambda_, sigma = example7_lambda(field), dual_numbers(field)
    m, n = example7_bimodules(lambda_, sigma)
    return SemtlData(lambda_, sigma, m, n, level)


def identity_data(a: Algebra) -> SemtlData:
    """(a, a) with M = N = a as bimodule, level 0."""
    return SemtlData(a, a, regular_bimodule(a), regular_bimodule(a), 0)


def twist_data(a: Algebra, scalars: Dict[int, object]) -> SemtlData:
    """
    M = a_σ and N = a_σ⁻¹ for the automorphism σ scaling arrow k by scalars[k].

    Raises:
        ValueError: If a scalar is zero
    """
    m = twisted_bimodule(a, scalars)
    inverse = {k: a.field.one / a.field(s) for k, s in scalars.items()}
    n = twisted_bimodule(a, inverse)
    m.name, n.name = f"{a.name}_σ", f"{a.name}_σ⁻¹"
    return SemtlData(a, a, m, n, 0)


def pd_one_instance(field: Optional[Field] = None) -> Tuple[Algebra, Rep, Rep, Rep]:
    """
    (kA₂, M, N, X) with M = Λ ⊕ Λ, N = Λ, so M ⊗ N ≅ N ⊗ M ≅ Λ ⊕ X for X = Λ
    of projective dimension 1 over the enveloping algebra.
    """
    a = a2(field)
    regular = regular_bimodule(a)
    m, _, _ = direct_sum([regular, regular], name='Λ⊕Λ')
    return a, m, regular, regular
