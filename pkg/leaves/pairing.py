"""
Evaluation pairing and coefficient extraction in the double leaves basis.

A morphism f: B_w → B_r is paired against test elements: the upper test
x^j = x_{s_1}^{j_1} ⊗ ... ⊗ x_{s_n}^{j_n} ⊗ 1 in B_w, and the lower test x_ī on
the reversed word of r. The value caps f(x^j) ⊗ x_ī from the inside out:

    z ← ∂_{r_p}(x_{r_p}^{e_p} · z · x_{r_p}^{ī_p})    for p = m, ..., 1

Double leaves pair to 1 on their own test and to 0 on strictly smaller tests,
so coefficients come out by forward substitution.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from algebra.linear import inverse
from algebra.polynomial import GradedPoly
from bimodules.calculus import BimoduleCalculus
from bimodules.morphisms import Morphism
from bimodules.objects import Bits, BSElement
from coxeter.datum import Word
from leaves.double_leaves import DoubleLeaf
from models.errors import NonUnitError, TheoryViolation

logger = logging.getLogger(__name__)

Test = Tuple[Bits, Bits]


@dataclass
class DLBExpansion:
    """Left coefficients of a morphism on an ordered double leaves basis"""
    dleaves: List[DoubleLeaf]
    coefficients: List[GradedPoly] = field(default_factory=list)

    def nonzero(self) -> List[Tuple[int, DoubleLeaf, GradedPoly]]:
        return [(k, d, c) for k, (d, c) in enumerate(zip(self.dleaves, self.coefficients)) if c]

    def scalar_values(self) -> List:
        """Every rational coefficient of every polynomial coefficient."""
        return [v for c in self.coefficients for v in c.terms.values()]

    def to_dict(self, datum) -> Dict:
        return {
            str(k): {'double_leaf': d.label(datum), 'coefficient': c.to_text()}
            for k, d, c in self.nonzero()
        }


class PairingEvaluator:
    """Test elements, the capping pairing and DLB expansion for one calculus."""

    def __init__(self, calculus: BimoduleCalculus):
        self.calculus = calculus
        self.ring = calculus.ring
        self._upper: Dict[Tuple[Word, Bits], BSElement] = {}

    def upper_test(self, word: Word, j: Bits) -> BSElement:
        key = (tuple(word), tuple(j))
        cached = self._upper.get(key)
        if cached is None:
            c = self.calculus
            slots = [c.root_power(s, bit) for s, bit in zip(word, j)] + [self.ring.one()]
            cached = c.normal_form(c.obj(word), slots)
            self._upper[key] = cached
        return cached

    def contract(self, element: BSElement, lower: Bits) -> GradedPoly:
        """Cap an element of B_r against the lower test x_ī of the reversed word."""
        word = element.obj.word
        c = self.calculus
        total = self.ring.zero()
        for e, coeff in element.coeffs.items():
            z = self.ring.one()
            for p in range(len(word) - 1, -1, -1):
                s = word[p]
                z = c.split(s, c.root_power(s, e[p]) * z * c.root_power(s, lower[p]))[1]
                if not z:
                    break
            if z:
                total = total + coeff * z
        return total

    def pairing_eval(self, f: Morphism, tests: Optional[Iterable[Test]] = None) -> Dict[Test, GradedPoly]:
        """
        Pair f against test elements.

        Args:
            f: Morphism between Bott-Samelson bimodules
            tests: (j, ī) pairs; all of them when omitted

        Returns:
            Map from (j, ī) to the value of the pairing
        """
        if tests is None:
            tests = [(j, i) for j in f.source.basis() for i in f.target.basis()]
        images: Dict[Bits, BSElement] = {}
        values = {}
        for j, lower in tests:
            if j not in images:
                images[j] = f.apply(self.upper_test(f.source.word, j))
            values[(j, lower)] = self.contract(images[j], lower)
        return values

    def unitriangularity_failures(self, dleaves: List[DoubleLeaf]) -> List[Dict]:
        """Entries violating: 1 on the own test, 0 on every strictly smaller test."""
        failures = []
        tests = [(d.upper_test, d.lower_test) for d in dleaves]
        for a, d in enumerate(dleaves):
            values = self.pairing_eval(d.morphism, tests[:a + 1])
            if values[tests[a]] != 1:
                failures.append({'row': a, 'column': a, 'value': values[tests[a]].to_text()})
            for b in range(a):
                if values[tests[b]]:
                    failures.append({'row': b, 'column': a, 'value': values[tests[b]].to_text()})
        return failures

    def expand_in_dlb(self, f: Morphism, dleaves: List[DoubleLeaf]) -> DLBExpansion:
        """
        Unique left coefficients c with f = Σ c_d·d.

        Tests are grouped in blocks of equal j and |ī|. Earlier blocks are
        substituted forward; each block is a square scalar system.
        """
        scalars = self.ring.scalars
        tests = [(d.upper_test, d.lower_test) for d in dleaves]
        target = self.pairing_eval(f, tests)
        blocks: List[List[int]] = []
        for k, d in enumerate(dleaves):
            if blocks and dleaves[blocks[-1][0]].block_key == d.block_key:
                blocks[-1].append(k)
            else:
                blocks.append([k])

        coefficients: List[GradedPoly] = [self.ring.zero()] * len(dleaves)
        columns: Dict[int, Dict[Test, GradedPoly]] = {}
        for b_index, block in enumerate(blocks):
            later = [tests[k] for blk in blocks[b_index:] for k in blk]
            for k in block:
                columns[k] = self.pairing_eval(dleaves[k].morphism, later)
            rhs = []
            for t in (tests[k] for k in block):
                value = target[t]
                for earlier in blocks[:b_index]:
                    for k in earlier:
                        if coefficients[k]:
                            value = value - coefficients[k] * columns[k][t]
                rhs.append(value)
            matrix = []
            for t in (tests[k] for k in block):
                row = []
                for k in block:
                    entry = columns[k][t]
                    if not entry.is_constant():
                        raise TheoryViolation(
                            "Pairing inside a block is not scalar",
                            {'test': t, 'double_leaf': k, 'value': entry.to_text()},
                        )
                    row.append(entry.constant_term())
                matrix.append(row)
            try:
                inv = inverse(matrix, scalars)
            except NonUnitError:
                raise TheoryViolation("Pairing block is singular", {'block': [tests[k] for k in block]})
            for r, k in enumerate(block):
                value = self.ring.zero()
                for col, rhs_value in enumerate(rhs):
                    if inv[r][col] and rhs_value:
                        value = value + rhs_value.scale(inv[r][col])
                coefficients[k] = value

        expansion = DLBExpansion(dleaves, coefficients)
        residual = f - self.recombine(expansion, f)
        if not residual.is_zero():
            raise TheoryViolation(
                "DLB expansion leaves a nonzero residual",
                {'source': f.source.word, 'target': f.target.word},
            )
        return expansion

    def recombine(self, expansion: DLBExpansion, like: Morphism) -> Morphism:
        """Σ c_d·d as a morphism with the shape of `like`."""
        total = self.calculus.zero(like.source, like.target, like.degree)
        for _, d, c in expansion.nonzero():
            total = total + d.morphism.scale(c)
        return total
