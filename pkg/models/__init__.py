from .data_models import (
    BadPrimeReport,
    CheckResult,
    DeterminantEntry,
    JobConfig,
    LambdaRecord,
    NotLiftable,
    ValidationReport,
    VerificationReport,
)
from .errors import (
    ConfigError,
    DatumMismatchError,
    MissingDecompositionError,
    NonUnitError,
    PreconditionError,
    ShapeMismatchError,
    SoergelError,
    TheoryViolation,
)

__all__ = [
    'BadPrimeReport',
    'CheckResult',
    'DeterminantEntry',
    'JobConfig',
    'LambdaRecord',
    'NotLiftable',
    'ValidationReport',
    'VerificationReport',
    'ConfigError',
    'DatumMismatchError',
    'MissingDecompositionError',
    'NonUnitError',
    'PreconditionError',
    'ShapeMismatchError',
    'SoergelError',
    'TheoryViolation',
]
