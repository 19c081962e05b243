"""
Error hierarchy for fdhom.

Every error is a ValueError so callers that only know about bad input can
catch it without importing this module.
"""

from typing import Optional


class FdhomError(ValueError):
    """Base class for all fdhom errors."""


class DimensionMismatch(FdhomError):
    """Matrix or representation shapes do not fit together."""


class FieldMismatch(FdhomError):
    """Objects over different ground fields were combined."""


class NonAdmissible(FdhomError):
    """A relation has a term of length < 2 or mixes non-parallel paths."""


class NotFiniteDimensional(FdhomError):
    """Irreducible paths survive at the path length cap."""

    def __init__(self, cap: int, witness: Optional[str] = None):
        self.cap = cap
        self.witness = witness
        message = f"Algebra is not finite-dimensional below path length cap {cap}"
        if witness:
            message += f" (irreducible path {witness})"
        super().__init__(message)


class UnknownVertex(FdhomError):
    """A vertex name is not declared in the quiver."""


class AlgebraMismatch(FdhomError):
    """Representations or homomorphisms over different algebras were combined."""


class NotTensorAlgebra(FdhomError):
    """A bimodule operation was applied to a module over a plain algebra."""


class ComposabilityMismatch(FdhomError):
    """Extension classes or homomorphisms cannot be composed."""


class HypothesisFailed(FdhomError):
    """A theorem's hypothesis does not hold for the given input."""


class NoGorensteinCertificate(FdhomError):
    """An operation needs a finite Gorenstein dimension that was not found."""


class CapExceeded(FdhomError):
    """A computation was asked to go beyond its configured cap."""


class PdBoundExceeded(FdhomError):
    """A projective dimension could not be certified within the cap."""

    def __init__(self, what: str, cap: int):
        self.what = what
        self.cap = cap
        super().__init__(f"Projective dimension of {what} not certified within cap {cap}")


class ParseError(FdhomError):
    """Input document could not be parsed."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        self.bare_message = message
        super().__init__(f"{line}:{column}: {message}")


class ResolutionError(FdhomError):
    """A name in the input document does not resolve."""

    def __init__(self, name: str, kind: str, line: int = 0, column: int = 0):
        self.name = name
        self.kind = kind
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: unknown {kind} '{name}'")
