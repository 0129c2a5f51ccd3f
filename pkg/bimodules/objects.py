"""
Bott-Samelson bimodules, twisted bimodules and their elements.

B_w for a word w = (s_1, ..., s_n) is free as a left module over the
polynomial ring, with basis β^e = 1 ⊗ x_{s_1}^{e_1} ⊗ ... ⊗ x_{s_n}^{e_n} for
e in {0,1}^n. Elements are stored as their left coefficients on that basis.
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Optional, Tuple

from algebra.polynomial import GradedPoly, Monomial, PolynomialRing
from coxeter.datum import Word
from coxeter.group import Element
from models.errors import DatumMismatchError, ShapeMismatchError

Bits = Tuple[int, ...]


@dataclass(frozen=True)
class BSObject:
    """The Bott-Samelson bimodule of a word, with its built-in shift by the length"""
    word: Word
    shift: int = 0

    is_twisted = False

    @property
    def length(self) -> int:
        return len(self.word)

    def basis(self) -> List[Bits]:
        """Indices e in {0,1}^n, lexicographic."""
        return list(product((0, 1), repeat=len(self.word)))

    def degree_of(self, e: Bits) -> int:
        return 2 * sum(e) - len(self.word) - self.shift

    def label(self, datum) -> str:
        return f"B[{datum.format_word(self.word)}]"


@dataclass(frozen=True)
class TwistedModule:
    """
    R_x: rank one with basis 1_x and right action 1_x·r = x(r)·1_x.

    1_x sits in degree -l(x), so β: B_x → R_x has degree 0.
    """
    twist: Element

    is_twisted = True
    word: Word = ()

    @property
    def shift(self) -> int:
        return self.twist.length

    @property
    def length(self) -> int:
        return 0

    def basis(self) -> List[Bits]:
        return [()]

    def degree_of(self, e: Bits) -> int:
        return -self.shift

    def label(self, datum) -> str:
        return f"R[{datum.format_word(self.twist.word)}]"


class BSElement:
    """Σ c_e β^e with polynomial left coefficients; zero coefficients are dropped."""

    __slots__ = ("obj", "ring", "coeffs")

    def __init__(self, obj, ring: PolynomialRing, coeffs: Optional[Dict[Bits, GradedPoly]] = None):
        self.obj = obj
        self.ring = ring
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c}

    def _check(self, other: "BSElement"):
        if other.obj != self.obj:
            raise ShapeMismatchError(f"Elements of {self.obj} and {other.obj} cannot be combined")
        if other.ring != self.ring:
            raise DatumMismatchError("Elements over different polynomial rings")

    def __add__(self, other: "BSElement") -> "BSElement":
        self._check(other)
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            coeffs[e] = coeffs[e] + c if e in coeffs else c
        return BSElement(self.obj, self.ring, coeffs)

    def __neg__(self):
        return BSElement(self.obj, self.ring, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "BSElement") -> "BSElement":
        return self + (-other)

    def scale(self, factor) -> "BSElement":
        """Left multiplication by a polynomial or a scalar."""
        if isinstance(factor, GradedPoly):
            return BSElement(self.obj, self.ring, {e: factor * c for e, c in self.coeffs.items()})
        return BSElement(self.obj, self.ring, {e: c.scale(factor) for e, c in self.coeffs.items()})

    def coefficient(self, e: Bits) -> GradedPoly:
        return self.coeffs.get(tuple(e), self.ring.zero())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def degrees(self) -> List[int]:
        found = set()
        for e, c in self.coeffs.items():
            for d in c.degrees():
                found.add(d + self.obj.degree_of(e))
        return sorted(found)

    def coordinates(self) -> Dict[Tuple[Bits, Monomial], object]:
        """Flat scalar coordinates keyed by (basis index, monomial)."""
        return {(e, m): v for e, c in self.coeffs.items() for m, v in c.terms.items()}

    def change_ring(self, ring: PolynomialRing) -> "BSElement":
        return BSElement(self.obj, ring, {e: c.change_scalars(ring) for e, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, BSElement):
            return NotImplemented
        return self.obj == other.obj and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.obj, frozenset(self.coeffs.items())))

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for e in sorted(self.coeffs):
            label = ''.join(str(b) for b in e) or '1'
            pieces.append(f"({self.coeffs[e].to_text()})*b[{label}]")
        return " + ".join(pieces)

    def __repr__(self):
        return self.to_text()
