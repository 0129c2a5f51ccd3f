"""
Hecke algebra in the normalized standard basis T̃_x = v^l(x) T_x.

Right multiplication by a generator:
    T̃_w T̃_s = T̃_ws                         if l(ws) > l(w)
    T̃_w T̃_s = T̃_ws + (v^-1 - v) T̃_w        otherwise
The Kazhdan-Lusztig element C'_x is the bar-invariant element in
T̃_x + Σ vZ[v] T̃_y.
"""

import logging
import threading
from typing import Dict, List, Optional, Tuple

from algebra.linear import SparseSystem
from algebra.scalars import RationalField
from coxeter.datum import Word
from coxeter.group import CoxeterGroup, Element
from hecke.laurent import LaurentInt
from models.errors import PreconditionError, TheoryViolation

logger = logging.getLogger(__name__)

V = LaurentInt.v(1)
V_INV = LaurentInt.v(-1)


class HeckeElt:
    """Finite combination Σ c_x T̃_x with Laurent coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Element, LaurentInt]] = None):
        self.terms = {x: c for x, c in (terms or {}).items() if c}

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        terms = dict(self.terms)
        for x, c in other.terms.items():
            terms[x] = terms[x] + c if x in terms else c
        return HeckeElt(terms)

    def __neg__(self):
        return HeckeElt({x: -c for x, c in self.terms.items()})

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + (-other)

    def scale(self, factor) -> "HeckeElt":
        factor = LaurentInt._coerce(factor)
        return HeckeElt({x: c * factor for x, c in self.terms.items()})

    def coefficient(self, x: Element) -> LaurentInt:
        return self.terms.get(x, LaurentInt())

    def support(self) -> List[Element]:
        return sorted(self.terms, key=lambda x: x.sort_key())

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_text(self, format_word=None) -> str:
        if not self.terms:
            return '0'
        pieces = []
        for x in sorted(self.terms, key=lambda y: y.sort_key(), reverse=True):
            name = format_word(x.word) if format_word else '.'.join(str(s + 1) for s in x.word) or 'e'
            coeff = self.terms[x]
            pieces.append(f"({coeff.to_text()})*T[{name}]")
        return ' + '.join(pieces)

    def __repr__(self):
        return self.to_text()


class HeckeAlgebra:
    """
    Hecke algebra of a Coxeter group, with KL elements and traces.

    KL elements are memoized; the memo accepts concurrent reads.
    """

    def __init__(self, group: CoxeterGroup):
        self.group = group
        self._kl: Dict[Element, HeckeElt] = {}
        self._bar_standard: Dict[Element, HeckeElt] = {}
        self._lock = threading.Lock()

    # Basis elements
    def T(self, x: Element) -> HeckeElt:
        return HeckeElt({x: LaurentInt.constant(1)})

    def one(self) -> HeckeElt:
        return self.T(self.group.identity)

    def C_generator(self, s: int) -> HeckeElt:
        """C'_s = T̃_s + v T̃_e."""
        return HeckeElt({self.group.generator(s): LaurentInt.constant(1), self.group.identity: V})

    def C_word(self, word: Word) -> HeckeElt:
        """C'_{s_1} ... C'_{s_n}."""
        result = self.one()
        for s in word:
            result = self.mul(result, self.C_generator(s))
        return result

    # Products
    def right_mul_generator(self, a: HeckeElt, s: int) -> HeckeElt:
        terms: Dict[Element, LaurentInt] = {}

        def add(x, c):
            terms[x] = terms[x] + c if x in terms else c

        for w, c in a.terms.items():
            ws = self.group.right_multiply(w, s)
            add(ws, c)
            if ws.length < w.length:
                add(w, c * (V_INV - V))
        return HeckeElt(terms)

    def mul(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        """Associative product a·b."""
        result = HeckeElt()
        for y, c in b.terms.items():
            partial = a
            for s in y.word:
                partial = self.right_mul_generator(partial, s)
            result = result + partial.scale(c)
        return result

    # Bar involution
    def _bar_T(self, x: Element) -> HeckeElt:
        cached = self._bar_standard.get(x)
        if cached is not None:
            return cached
        if x.length == 0:
            result = self.one()
        else:
            s = x.word[-1]
            prefix = self._bar_T(self.group.right_multiply(x, s))
            # bar(T̃_s) = T̃_s + (v - v^-1) T̃_e
            result = self.right_mul_generator(prefix, s) + prefix.scale(V - V_INV)
        self._bar_standard[x] = result
        return result

    def bar(self, a: HeckeElt) -> HeckeElt:
        result = HeckeElt()
        for x, c in a.terms.items():
            result = result + self._bar_T(x).scale(c.bar())
        return result

    # Kazhdan-Lusztig basis
    def kl_element(self, x: Element) -> HeckeElt:
        """C'_x by the recursion C'_y C'_s - Σ μ C'_z with x = ys, l(x) > l(y)."""
        cached = self._kl.get(x)
        if cached is not None:
            return cached
        if x.length == 0:
            result = self.one()
        else:
            s = x.word[-1]
            y = self.group.right_multiply(x, s)
            result = self.mul(self.kl_element(y), self.C_generator(s))
            while True:
                offending = [
                    z for z, c in result.terms.items()
                    if z != x and c.constant_term() != 0
                ]
                if not offending:
                    break
                z = max(offending, key=lambda w: w.sort_key())
                mu = result.terms[z].constant_term()
                result = result - self.kl_element(z).scale(mu)
        with self._lock:
            self._kl[x] = result
        return result

    def kl_expand(self, h: HeckeElt) -> Dict[Element, LaurentInt]:
        """Coefficients m_z with h = Σ m_z C'_z, for bar-invariant h."""
        coefficients: Dict[Element, LaurentInt] = {}
        remainder = h
        while not remainder.is_zero():
            z = max(remainder.terms, key=lambda w: w.sort_key())
            c = remainder.terms[z]
            if not c.is_bar_invariant():
                raise TheoryViolation(
                    "Element is not bar-invariant; no KL expansion",
                    {'element': self.group.format(z), 'coefficient': c.to_text()},
                )
            coefficients[z] = c
            remainder = remainder - self.kl_element(z).scale(c)
        return coefficients

    def kl_multiplicities(self, x: Element, s: int) -> Dict[Element, int]:
        """
        The m_y in C'_x C'_s = C'_xs + Σ m_y C'_y.

        Args:
            x: Element with l(xs) > l(x)
            s: Simple reflection

        Returns:
            Map from y (y != xs) to the positive integer m_y
        """
        xs = self.group.right_multiply(x, s)
        if xs.length < x.length:
            raise PreconditionError(f"l(xs) < l(x) for x = {self.group.format(x)}, s = s{s + 1}")
        expansion = self.kl_expand(self.mul(self.kl_element(x), self.C_generator(s)))
        if expansion.get(xs) != LaurentInt.constant(1):
            raise TheoryViolation("C'_xs does not occur once", {'x': self.group.format(x), 's': s + 1})
        result = {}
        for y, c in expansion.items():
            if y == xs:
                continue
            if set(c.coeffs) != {0} or c.constant_term() < 0:
                raise TheoryViolation(
                    "KL multiplicity is not a nonnegative integer",
                    {'x': self.group.format(x), 'y': self.group.format(y), 'm': c.to_text()},
                )
            result[y] = c.constant_term()
        return dict(sorted(result.items(), key=lambda item: item[0].sort_key()))

    def kl_polynomial(self, y: Element, x: Element) -> Dict[int, int]:
        """Classical P_{y,x}(q) as {power of q: coefficient}."""
        h = self.kl_element(x).coefficient(y)
        offset = x.length - y.length
        result = {}
        for k, c in h.coeffs.items():
            result[(offset - k) // 2] = c
        return dict(sorted(result.items()))

    # Traces
    def tau(self, x: Element, a: HeckeElt) -> LaurentInt:
        """Coefficient of T̃_x."""
        return a.coefficient(x)

    def dlb_degree_oracle(self, upper: Word, lower: Word) -> LaurentInt:
        """
        Graded rank of Hom(B_upper, B_lower).

        Computed as τ_e(C'_upper · C'_reversed(lower)) and cross-checked
        against Σ_x τ_x(C'_upper) τ_x(C'_lower).
        """
        product = self.mul(self.C_word(upper), self.C_word(tuple(reversed(lower))))
        trace = self.tau(self.group.identity, product)
        a, b = self.C_word(upper), self.C_word(lower)
        total = LaurentInt()
        for x, c in a.terms.items():
            total = total + c * b.coefficient(x)
        if total != trace:
            raise TheoryViolation(
                "Trace and coefficient-sum oracles disagree",
                {'trace': trace.to_text(), 'sum': total.to_text()},
            )
        return trace

    # Independent check of the KL recursion
    def kl_element_bruteforce(self, x: Element) -> HeckeElt:
        """Solve bar(C) = C with C in T̃_x + Σ_{y<x} vZ[v] T̃_y as a linear system."""
        below = [y for y in self.group.bruhat_interval_below(x) if y != x]
        unknowns: List[Tuple[Element, int]] = [
            (y, k) for y in below for k in range(1, x.length - y.length + 1)
        ]
        index = {u: i for i, u in enumerate(unknowns)}
        # equations: coefficient of v^j T̃_z in bar(C) - C
        equations: Dict[Tuple[Element, int], Dict[int, int]] = {}
        constants: Dict[Tuple[Element, int], int] = {}

        def add(target: HeckeElt, unknown: Optional[int], sign: int):
            for z, c in target.terms.items():
                for j, value in c.coeffs.items():
                    key = (z, j)
                    if unknown is None:
                        constants[key] = constants.get(key, 0) - sign * value
                    else:
                        row = equations.setdefault(key, {})
                        row[unknown] = row.get(unknown, 0) + sign * value

        add(self._bar_T(x), None, 1)
        add(self.T(x), None, -1)
        for (y, k), u in index.items():
            add(self._bar_T(y).scale(LaurentInt.v(-k)), u, 1)
            add(self.T(y).scale(LaurentInt.v(k)), u, -1)

        system = SparseSystem(RationalField())
        for key in set(equations) | set(constants):
            system.add_equation(equations.get(key, {}), constants.get(key, 0))
        values = system.unique_solution(len(unknowns))
        terms: Dict[Element, LaurentInt] = {x: LaurentInt.constant(1)}
        for (y, k), value in zip(unknowns, values):
            if value.denominator != 1:
                raise TheoryViolation("Non-integral KL coefficient", {'y': self.group.format(y)})
            if value:
                terms[y] = terms.get(y, LaurentInt()) + LaurentInt({k: int(value)})
        return HeckeElt(terms)
