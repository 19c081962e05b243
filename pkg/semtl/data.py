"""
Bimodule data of a singular equivalence and the reports of its checks.
"""

import logging
from typing import Any, Dict, List, Optional

from algebras.algebra import Algebra, opposite, tensor_algebra
from common.errors import AlgebraMismatch
from homology.resolution import Dimension, ExceedsBound
from reps.rep import Rep

logger = logging.getLogger(__name__)


class SemtlData:
    """
    Bimodules M (Λ-Σ) and N (Σ-Λ) with a level l.

    M is a module over Λ ⊗ Σ^op and N over Σ ⊗ Λ^op, so M ⊗_Σ N is a
    Λ^e-module and N ⊗_Λ M a Σ^e-module.

    Raises:
        AlgebraMismatch: If M or N is over the wrong tensor algebra
        ValueError: If the level is negative
    """

    def __init__(self, lambda_: Algebra, sigma: Algebra, m: Rep, n: Rep, level: int):
        if level < 0:
            raise ValueError(f"Level must be nonnegative, got {level}")
        if m.algebra is not tensor_algebra(lambda_, opposite(sigma)):
            raise AlgebraMismatch(f"{m.label} is over {m.algebra.name}, expected {lambda_.name}⊗{sigma.name}^op")
        if n.algebra is not tensor_algebra(sigma, opposite(lambda_)):
            raise AlgebraMismatch(f"{n.label} is over {n.algebra.name}, expected {sigma.name}⊗{lambda_.name}^op")
        self.lambda_ = lambda_
        self.sigma = sigma
        self.m = m
        self.n = n
        self.level = level
        self._caches: Dict[str, dict] = {}

    def cache(self, kind: str) -> dict:
        return self._caches.setdefault(kind, {})

    def with_bimodules(self, m: Rep, level: int) -> 'SemtlData':
        return SemtlData(self.lambda_, self.sigma, m, self.n, level)

    def to_dict(self) -> dict:
        return {
            'lambda': self.lambda_.name,
            'sigma': self.sigma.name,
            'm': {'name': self.m.label, 'dims': self.m.dims},
            'n': {'name': self.n.label, 'dims': self.n.dims},
            'level': self.level,
        }

    def __repr__(self):
        return f"<SemtlData {self.lambda_.name}~{self.sigma.name} M={self.m.label} N={self.n.label} l={self.level}>"


class ConditionResult:
    """Verdict on one numbered condition, with its witnesses."""

    def __init__(self, number: int, passed: bool, detail: str, witnesses: Optional[Dict[str, Any]] = None):
        self.number = number
        self.passed = passed
        self.detail = detail
        self.witnesses = witnesses or {}

    def to_dict(self, verbose: bool = False) -> dict:
        result = {'condition': self.number, 'passed': self.passed, 'detail': self.detail}
        if verbose:
            result['witnesses'] = {key: _describe(value) for key, value in self.witnesses.items()}
        return result

    def __repr__(self):
        return f"<ConditionResult ({self.number}) {'pass' if self.passed else 'fail'}: {self.detail}>"


def _describe(value) -> Any:
    if isinstance(value, Rep):
        return {'name': value.label, 'dims': value.dims}
    if isinstance(value, ExceedsBound):
        return {'exceeds': value.bound}
    if value is None or isinstance(value, (int, str, bool)):
        return value
    return repr(value)


class SemtlReport:
    """The four conditions of a singular equivalence with level."""

    def __init__(self, data: SemtlData, conditions: List[ConditionResult]):
        self.data = data
        self.conditions = conditions

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def failed(self) -> List[int]:
        return [c.number for c in self.conditions if not c.passed]

    def condition(self, number: int) -> ConditionResult:
        return self.conditions[number - 1]

    def to_dict(self, verbose: bool = False) -> dict:
        return {
            'data': self.data.to_dict(),
            'conditions': [c.to_dict(verbose) for c in self.conditions],
            'passed': self.passed,
        }

    def __repr__(self):
        return f"<SemtlReport l={self.data.level} passed={self.passed} failed={self.failed}>"


class SemtWitness:
    """
    X and Y with M ⊗ N ≅ Λ ⊕ X and N ⊗ M ≅ Σ ⊕ Y, and their projective dimensions.
    """

    def __init__(self, x: Rep, y: Rep, pd_x: Dimension, pd_y: Dimension):
        self.x = x
        self.y = y
        self.pd_x = pd_x
        self.pd_y = pd_y

    @property
    def certified(self) -> bool:
        return isinstance(self.pd_x, int) and isinstance(self.pd_y, int)

    @property
    def level(self) -> int:
        """max(pd X, pd Y), the level of the induced equivalence."""
        return max(self.pd_x, self.pd_y)

    def to_dict(self) -> dict:
        return {
            'x': _describe(self.x),
            'y': _describe(self.y),
            'pd_x': _describe(self.pd_x),
            'pd_y': _describe(self.pd_y),
        }

    def __repr__(self):
        return f"<SemtWitness pd X={self.pd_x} pd Y={self.pd_y}>"


class SemtReport:
    """Conditions of a singular equivalence of Morita type (without level)."""

    def __init__(self, lambda_: Algebra, sigma: Algebra, m: Rep, n: Rep,
                 conditions: List[ConditionResult], witness: Optional[SemtWitness]):
        self.lambda_ = lambda_
        self.sigma = sigma
        self.m = m
        self.n = n
        self.conditions = conditions
        self.witness = witness

    @property
    def passed(self) -> bool:
        return self.witness is not None and all(c.passed for c in self.conditions)

    def to_dict(self, verbose: bool = False) -> dict:
        return {
            'conditions': [c.to_dict(verbose) for c in self.conditions],
            'witness': self.witness.to_dict() if self.witness is not None else None,
            'passed': self.passed,
        }

    def __repr__(self):
        return f"<SemtReport passed={self.passed} witness={self.witness}>"
