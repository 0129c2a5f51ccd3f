from dataclasses import dataclass, field
from typing import List, Dict, Optional
import json

from sympy import isprime

from config import DEFAULT_VERIFY_PRIMES
from models.errors import ConfigError


@dataclass
class JobConfig:
    """Validated command-line job"""
    command: str
    type_name: Optional[str] = None
    cartan_file: Optional[str] = None
    characteristic: int = 0
    top: Optional[str] = None
    region_max_length: Optional[int] = None
    words: List[str] = field(default_factory=list)
    output_format: str = 'json'
    out: Optional[str] = None
    cache_dir: Optional[str] = None
    jobs: int = 1
    primes: List[int] = field(default_factory=list)
    reverse_selection: bool = False

    @classmethod
    def from_args(cls, args) -> "JobConfig":
        return cls(
            command=args.command,
            type_name=getattr(args, 'type', None),
            cartan_file=getattr(args, 'cartan_file', None),
            characteristic=getattr(args, 'char', 0) or 0,
            top=getattr(args, 'top', None),
            region_max_length=getattr(args, 'region_max_length', None),
            words=list(getattr(args, 'words', None) or []),
            output_format=getattr(args, 'format', 'json'),
            out=getattr(args, 'out', None),
            cache_dir=getattr(args, 'cache_dir', None),
            jobs=getattr(args, 'jobs', 1) or 1,
            primes=list(getattr(args, 'primes', None) or (DEFAULT_VERIFY_PRIMES if getattr(args, 'mod_p', False) else [])),
            reverse_selection=bool(getattr(args, 'reverse_selection', False)),
        )

    @property
    def uses_region(self) -> bool:
        return self.command in ('kl', 'badprimes', 'verify') or (
            self.command in ('projector', 'character', 'leaves') and not self.words
        )

    def validate(self, finite: bool = True):
        """Raise ConfigError for inconsistent settings"""
        if not self.type_name and not self.cartan_file:
            raise ConfigError("Either --type or --cartan-file is required")
        if self.type_name and self.cartan_file:
            raise ConfigError("--type and --cartan-file are mutually exclusive")
        if self.characteristic == 2:
            raise ConfigError("Characteristic 2 is outside scope")
        if self.characteristic < 0:
            raise ConfigError(f"Invalid characteristic {self.characteristic}")
        if self.characteristic and not isprime(self.characteristic):
            raise ConfigError(f"--char must be 0 or an odd prime, got {self.characteristic}")
        if self.command == 'badprimes' and self.characteristic:
            raise ConfigError("Bad primes are computed from char-0 projectors; drop --char")
        for p in self.primes:
            if p == 2 or not isprime(p):
                raise ConfigError(f"--primes must be odd primes, got {p}")
        if self.jobs < 1:
            raise ConfigError(f"--jobs must be positive, got {self.jobs}")
        if self.region_max_length is not None and self.region_max_length < 0:
            raise ConfigError("--region-max-length must be non-negative")
        if not finite and self.uses_region and self.top is None and self.region_max_length is None:
            raise ConfigError("Infinite data need --top or --region-max-length for region commands")

    def to_dict(self):
        return {
            'command': self.command,
            'type': self.type_name,
            'cartan_file': self.cartan_file,
            'char': self.characteristic,
            'top': self.top,
            'region_max_length': self.region_max_length,
            'words': self.words,
            'format': self.output_format,
            'jobs': self.jobs,
        }


@dataclass
class ValidationReport:
    """Outcome of checking the reflection conditions on a region"""
    datum: str
    region_size: int
    pairs_checked: int
    passed: bool
    failures: List[Dict] = field(default_factory=list)

    def to_dict(self):
        return {
            'datum': self.datum,
            'region_size': self.region_size,
            'pairs_checked': self.pairs_checked,
            'passed': self.passed,
            'failures': self.failures,
        }


@dataclass
class LambdaRecord:
    """Provenance of one summand z removed while building a projector"""
    z: str
    multiplicity: int
    candidates: int
    selected: List[str]
    lambda_matrix: List[List[str]]
    eta_matrix: List[List[str]]
    determinant: str
    simplified_matrix: Optional[List[List[str]]] = None
    strategies_agree: Optional[bool] = None
    dyadic_integral: bool = True

    def to_dict(self):
        return {
            'z': self.z,
            'multiplicity': self.multiplicity,
            'candidates': self.candidates,
            'selected': self.selected,
            'lambda': self.lambda_matrix,
            'eta': self.eta_matrix,
            'det': self.determinant,
            'simplified_lambda': self.simplified_matrix,
            'strategies_agree': self.strategies_agree,
            'dyadic_integral': self.dyadic_integral,
        }


@dataclass
class DeterminantEntry:
    """det of the intersection-scalar matrix for a word and a summand"""
    x: str
    z: str
    det: str
    primes: List[int] = field(default_factory=list)

    def to_dict(self):
        return {'x': self.x, 'z': self.z, 'det': self.det, 'primes': self.primes}


@dataclass
class BadPrimeReport:
    """Determinants over a region and the resulting set of bad primes"""
    datum: str
    region_top: str
    characteristic: int
    entries: List[DeterminantEntry] = field(default_factory=list)
    primes: List[int] = field(default_factory=list)
    flags: Dict = field(default_factory=dict)

    def to_dict(self):
        return {
            'datum': self.datum,
            'region_top': self.region_top,
            'char': self.characteristic,
            'entries': [e.to_dict() for e in self.entries],
            'D': self.primes,
            'flags': self.flags,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


@dataclass
class NotLiftable:
    """A projector whose DLB coefficients are not p-integral"""
    word: str
    prime: int
    offending: List[Dict] = field(default_factory=list)

    def to_dict(self):
        return {'word': self.word, 'prime': self.prime, 'offending': self.offending}


@dataclass
class CheckResult:
    """One invariant check of the verify suite"""
    check: str
    subject: str
    passed: bool
    detail: str = ''
    conditional: bool = False

    def to_dict(self):
        return {
            'check': self.check,
            'subject': self.subject,
            'passed': self.passed,
            'detail': self.detail,
            'conditional': self.conditional,
        }


@dataclass
class VerificationReport:
    """All invariant checks run on a region"""
    datum: str
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, check: str, subject: str, passed: bool, detail: str = '', conditional: bool = False):
        self.results.append(CheckResult(check, subject, bool(passed), detail, conditional))

    def to_dict(self):
        return {
            'datum': self.datum,
            'passed': self.passed,
            'checks': len(self.results),
            'failures': [r.to_dict() for r in self.results if not r.passed],
            'results': [r.to_dict() for r in self.results],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)
