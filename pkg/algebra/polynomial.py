"""
Sparse graded polynomials on the realization.

Polynomials are maps from exponent vectors to scalars; linear forms sit in
degree 2. The Coxeter group acts by substituting each variable with its image
under the action matrix, and the Demazure splitting decomposes
f = f_plus + x_s * df with both parts s-invariant.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.scalars import RationalField
from models.errors import DatumMismatchError, NonUnitError, PreconditionError

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


class PolynomialRing:
    """Polynomial ring in the realization variables over a scalar ring."""

    def __init__(self, variable_names: Sequence[str], scalars=None, datum_key: str = ""):
        self.names = tuple(variable_names)
        self.nvars = len(self.names)
        self.scalars = scalars or RationalField()
        self.datum_key = datum_key
        self._zero_monomial = (0,) * self.nvars
        self._action_cache: Dict[tuple, List["GradedPoly"]] = {}

    def zero(self) -> "GradedPoly":
        return GradedPoly(self, {})

    def one(self) -> "GradedPoly":
        return self.constant(1)

    def constant(self, value) -> "GradedPoly":
        return GradedPoly(self, {self._zero_monomial: self.scalars(value)})

    def gen(self, index: int) -> "GradedPoly":
        """The variable with the given index (x_s for a simple reflection s)."""
        if not 0 <= index < self.nvars:
            raise PreconditionError(f"Variable index {index} out of range for {self.nvars} variables")
        exps = [0] * self.nvars
        exps[index] = 1
        return GradedPoly(self, {tuple(exps): self.scalars.one})

    def gens(self) -> List["GradedPoly"]:
        return [self.gen(i) for i in range(self.nvars)]

    def linear(self, coefficients: Sequence) -> "GradedPoly":
        terms = {}
        for i, c in enumerate(coefficients):
            if c:
                exps = [0] * self.nvars
                exps[i] = 1
                terms[tuple(exps)] = self.scalars(c)
        return GradedPoly(self, terms)

    def monomials_of_degree(self, exponent_sum: int) -> List[Monomial]:
        """All exponent vectors with the given total exponent, in descending order."""
        result: List[Monomial] = []

        def extend(prefix, remaining, slots):
            if slots == 1:
                result.append(tuple(prefix + [remaining]))
                return
            for k in range(remaining, -1, -1):
                extend(prefix + [k], remaining - k, slots - 1)

        if self.nvars == 0:
            return [()] if exponent_sum == 0 else []
        extend([], exponent_sum, self.nvars)
        return result

    def with_scalars(self, scalars) -> "PolynomialRing":
        return PolynomialRing(self.names, scalars, self.datum_key)

    def images_under(self, matrix: Tuple[Tuple[int, ...], ...]) -> List["GradedPoly"]:
        """Images of the variables under an action matrix (column j = image of variable j)."""
        cached = self._action_cache.get(matrix)
        if cached is None:
            cached = [self.linear([matrix[i][j] for i in range(self.nvars)]) for j in range(self.nvars)]
            self._action_cache[matrix] = cached
        return cached

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.names == other.names
            and self.scalars == other.scalars
            and self.datum_key == other.datum_key
        )

    def __hash__(self):
        return hash((self.names, self.scalars.fingerprint(), self.datum_key))

    def __repr__(self):
        return f"PolynomialRing({', '.join(self.names)} over {self.scalars})"


class GradedPoly:
    """
    Immutable sparse polynomial with deg(x_i) = 2.

    Zero coefficients are never stored.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Optional[Dict[Monomial, object]] = None):
        self.ring = ring
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    # Arithmetic
    def _coerce(self, other) -> Optional["GradedPoly"]:
        if isinstance(other, GradedPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise DatumMismatchError(f"Cannot combine polynomials over {self.ring} and {other.ring}")
            return other
        try:
            return self.ring.constant(other)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return GradedPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GradedPoly):
            return self.scale(other)
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        terms: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                prod = c1 * c2
                terms[m] = terms[m] + prod if m in terms else prod
        return GradedPoly(self.ring, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, exponent: int):
        result = self.ring.one()
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, factor) -> "GradedPoly":
        factor = self.ring.scalars(factor)
        if not factor:
            return self.ring.zero()
        return GradedPoly(self.ring, {m: c * factor for m, c in self.terms.items()})

    # Queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, monomial: Monomial):
        return self.terms.get(tuple(monomial), self.ring.scalars.zero)

    def constant_term(self):
        return self.coefficient(self.ring._zero_monomial)

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def degrees(self) -> List[int]:
        return sorted({2 * sum(m) for m in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> Optional[int]:
        """Degree of a homogeneous polynomial; None for zero."""
        degrees = self.degrees()
        if not degrees:
            return None
        if len(degrees) > 1:
            raise PreconditionError(f"{self} is not homogeneous")
        return degrees[0]

    def homogeneous_components(self) -> Dict[int, "GradedPoly"]:
        parts: Dict[int, Dict[Monomial, object]] = {}
        for m, c in self.terms.items():
            parts.setdefault(2 * sum(m), {})[m] = c
        return {d: GradedPoly(self.ring, t) for d, t in sorted(parts.items())}

    def divide_by_variable(self, index: int) -> "GradedPoly":
        """Exact division by the variable with the given index."""
        terms = {}
        for m, c in self.terms.items():
            if m[index] == 0:
                raise NonUnitError(f"{self} is not divisible by {self.ring.names[index]}")
            terms[m[:index] + (m[index] - 1,) + m[index + 1:]] = c
        return GradedPoly(self.ring, terms)

    def substitute(self, images: Sequence["GradedPoly"]) -> "GradedPoly":
        """Ring homomorphism sending variable j to images[j]."""
        result: Dict[Monomial, object] = {}
        powers: Dict[Tuple[int, int], GradedPoly] = {}
        for m, c in self.terms.items():
            term = self.ring.constant(c)
            for j, e in enumerate(m):
                if e:
                    key = (j, e)
                    if key not in powers:
                        powers[key] = images[j] ** e
                    term = term * powers[key]
            for mm, cc in term.terms.items():
                result[mm] = result[mm] + cc if mm in result else cc
        return GradedPoly(self.ring, result)

    def change_scalars(self, ring: PolynomialRing) -> "GradedPoly":
        """Same polynomial with coefficients converted into another ring."""
        return GradedPoly(ring, {m: ring.scalars(c) for m, c in self.terms.items()})

    # Equality and text
    def __eq__(self, other):
        if isinstance(other, GradedPoly):
            return self.ring == other.ring and self.terms == other.terms
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.terms == coerced.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self) -> List[Tuple[Monomial, object]]:
        """Terms in graded-lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            text = self.ring.scalars.to_text(c)
            negative = text.startswith("-")
            magnitude = text[1:] if negative else text
            factors = []
            for name, e in zip(self.ring.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if factors:
                body = "*".join(factors) if magnitude == "1" else magnitude + "*" + "*".join(factors)
            else:
                body = magnitude
            if not pieces:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append((" - " if negative else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return self.to_text()


@dataclass(frozen=True)
class LinForm:
    """An element of V* in the basis of the realization variables."""
    coefficients: Tuple[int, ...]

    def to_poly(self, ring: PolynomialRing) -> GradedPoly:
        if len(self.coefficients) != ring.nvars:
            raise DatumMismatchError(
                f"Linear form of dimension {len(self.coefficients)} in a ring with {ring.nvars} variables"
            )
        return ring.linear(self.coefficients)

    def transform(self, matrix: Tuple[Tuple[int, ...], ...]) -> "LinForm":
        """Apply an action matrix (column j = image of basis vector j)."""
        n = len(self.coefficients)
        return LinForm(tuple(
            sum(matrix[i][j] * self.coefficients[j] for j in range(n)) for i in range(n)
        ))


def act(w, f: GradedPoly) -> GradedPoly:
    """
    Action of a group element on a polynomial.

    Args:
        w: Element carrying an action matrix and the key of its datum
        f: Polynomial over the same datum

    Returns:
        The polynomial obtained by substituting each variable by its image
    """
    if f.ring.datum_key and w.datum_key != f.ring.datum_key:
        raise DatumMismatchError(f"Element of {w.datum_key} acting on a polynomial over {f.ring.datum_key}")
    if w.length == 0 or not f.terms:
        return f
    return f.substitute(f.ring.images_under(w.matrix))


def demazure_split(s, f: GradedPoly) -> Tuple[GradedPoly, GradedPoly]:
    """
    Split f = f_plus + x_s * df with both parts fixed by s.

    df is half the classical divided difference, so 2 must be a unit.

    Args:
        s: Simple reflection (an Element of length one)
        f: Polynomial

    Returns:
        (f_plus, df)
    """
    if s.length != 1:
        raise PreconditionError(f"Demazure splitting needs a simple reflection, got {s}")
    scalars = f.ring.scalars
    if not scalars.is_unit(2):
        raise NonUnitError(f"2 is not a unit of {scalars}")
    if not f.terms:
        return f, f
    half = scalars.inverse(2)
    sf = act(s, f)
    plus = (f + sf).scale(half)
    minus = (f - sf).divide_by_variable(s.word[0]).scale(half)
    return plus, minus


def demazure(s, f: GradedPoly) -> GradedPoly:
    """The Demazure operator: the x_s-component of the splitting."""
    return demazure_split(s, f)[1]
