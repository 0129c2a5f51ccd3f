"""Exception hierarchy shared by every package of the engine."""

from typing import Dict, Optional


class SoergelError(Exception):
    """Base class for engine errors"""


class ConfigError(SoergelError, ValueError):
    """Invalid job configuration or datum description"""


class DatumMismatchError(SoergelError, ValueError):
    """Objects built from different Coxeter data were combined"""


class NonUnitError(SoergelError, ArithmeticError):
    """Division by an element that is not a unit of the scalar ring"""


class PreconditionError(SoergelError, ValueError):
    """An operation was called outside its domain"""


class ShapeMismatchError(SoergelError, ValueError):
    """Morphisms with incompatible sources or targets were combined"""


class MissingDecompositionError(SoergelError):
    """A morphism has no generator word, so its adjoint is unavailable"""


class TheoryViolation(SoergelError):
    """
    A computed object contradicts a structural theorem.

    The context dict names the offending word, element or matrix and is
    copied verbatim into reports.
    """

    def __init__(self, message: str, context: Optional[Dict] = None):
        super().__init__(message)
        self.context = dict(context or {})

    def __str__(self):
        base = super().__str__()
        if not self.context:
            return base
        details = ", ".join(f"{k}={v}" for k, v in self.context.items())
        return f"{base} ({details})"
