"""
Ground fields: prime fields F_p and the rationals.

Elements are sympy domain elements (residues for GF(p), reduced fractions
for QQ), so every computation downstream is exact.
"""

import logging
import random
from fractions import Fraction
from typing import Any, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ

from common.errors import FieldMismatch

logger = logging.getLogger(__name__)


class Field:
    """A prime field F_p (characteristic p) or the rationals (characteristic 0)."""

    def __init__(self, characteristic: int):
        if characteristic < 0:
            raise ValueError(f"Characteristic must be nonnegative, got {characteristic}")
        if characteristic == 0:
            self.kind = 'rationals'
            self.domain = QQ
        else:
            if not isprime(characteristic):
                raise ValueError(f"Characteristic {characteristic} is not prime")
            self.kind = 'prime-field'
            self.domain = GF(characteristic, symmetric=False)
        self.characteristic = characteristic
        self.zero = self.domain.zero
        self.one = self.domain.one

    @classmethod
    def parse(cls, name: str) -> 'Field':
        """Parse 'F101', 'GF(7)', 'Q' or 'QQ'."""
        text = name.strip()
        if text in ('Q', 'QQ'):
            return cls(0)
        if text.startswith('GF(') and text.endswith(')'):
            text = 'F' + text[3:-1]
        if text.startswith('F') and text[1:].isdigit():
            return cls(int(text[1:]))
        raise ValueError(f"Unknown field '{name}'")

    @property
    def name(self) -> str:
        return 'Q' if self.characteristic == 0 else f"F{self.characteristic}"

    def __call__(self, value: Union[int, str, Fraction, Any]):
        """Convert an int, Fraction, 'a/b' string or domain element."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            numerator = self.domain(value.numerator)
            if value.denominator == 1:
                return numerator
            denominator = self.domain(value.denominator)
            if not denominator:
                raise ValueError(f"{value} has no image in {self.name}")
            return numerator / denominator
        if isinstance(value, int):
            return self.domain(value)
        return self.domain.convert(value)

    def is_zero(self, a) -> bool:
        return not a

    def to_str(self, a) -> str:
        return str(self.domain.to_sympy(a))

    def to_json(self, a) -> Union[int, str]:
        """Integer for prime fields and integral rationals, 'p/q' otherwise."""
        value = self.domain.to_sympy(a)
        if value.is_Integer:
            return int(value)
        return str(value)

    def random_element(self, rng: random.Random, nonzero: bool = False):
        if self.characteristic:
            low = 1 if nonzero else 0
            return self.domain(rng.randrange(low, self.characteristic))
        while True:
            value = self.domain(rng.randint(-9, 9))
            if value or not nonzero:
                return value

    def check_same(self, other: 'Field'):
        if self != other:
            raise FieldMismatch(f"Field {self.name} does not match {other.name}")

    def __eq__(self, other):
        return isinstance(other, Field) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash(('Field', self.characteristic))

    def __repr__(self):
        return f"<Field {self.name}>"
