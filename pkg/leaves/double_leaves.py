"""
Double leaves l_lower^a ∘ l_upper and their total order.

A double leaf is indexed by the j-pattern of its upper leaf and the complement
ī = 1 - i of the m-pattern of its lower leaf. These two patterns also name the
test elements the pairing evaluates it on.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from bimodules.morphisms import Morphism, compose
from bimodules.objects import Bits
from coxeter.datum import Word
from hecke.laurent import LaurentInt
from leaves.light_leaves import Leaf, LeafBuilder

logger = logging.getLogger(__name__)


@dataclass
class DoubleLeaf:
    """A pair of light leaves with a common target, and their composite"""
    upper: Leaf
    lower: Leaf
    morphism: Optional[Morphism] = field(default=None, repr=False)

    @property
    def degree(self) -> int:
        return self.upper.degree + self.lower.degree

    @property
    def upper_test(self) -> Bits:
        return self.upper.j

    @property
    def lower_test(self) -> Bits:
        return tuple(1 - b for b in self.lower.i)

    @property
    def order_key(self) -> Tuple:
        """j lexicographic, then |ī|, then ī read from the right."""
        lower = self.lower_test
        return (self.upper_test, sum(lower), tuple(reversed(lower)))

    @property
    def block_key(self) -> Tuple:
        return self.order_key[:2]

    def label(self, datum) -> str:
        return f"{self.lower.label(datum)}^a.{self.upper.label(datum)}"


def double_leaves(builder: LeafBuilder, upper_word: Word, lower_word: Word) -> List[DoubleLeaf]:
    """
    All double leaves B_upper → B_lower, sorted by the total order.

    Args:
        builder: Leaf builder of the calculus to work in
        upper_word: Source word
        lower_word: Target word

    Returns:
        Double leaves in increasing order
    """
    lower_by_target: Dict = {}
    for leaf in builder.light_leaves(lower_word):
        lower_by_target.setdefault(leaf.target, []).append(leaf)
    result = []
    for upper in builder.light_leaves(upper_word):
        for lower in lower_by_target.get(upper.target, []):
            morphism = compose(builder.adjoint(lower), upper.morphism)
            result.append(DoubleLeaf(upper, lower, morphism))
    result.sort(key=lambda d: d.order_key)
    return result


def p_double_leaves(builder: LeafBuilder, upper_word: Word, lower_word: Word,
                    projector_provider: Callable[[Word], Morphism]) -> List[DoubleLeaf]:
    """
    Double leaves with the favorite projector of the middle word inserted.

    projector_provider maps a canonical word to its projector morphism.
    """
    lower_by_target: Dict = {}
    for leaf in builder.light_leaves(lower_word):
        lower_by_target.setdefault(leaf.target, []).append(leaf)
    projectors: Dict[Word, Morphism] = {}
    result = []
    for upper in builder.light_leaves(upper_word):
        middle = upper.target_word
        if middle not in projectors:
            projectors[middle] = projector_provider(middle)
        through = compose(projectors[middle], upper.morphism)
        for lower in lower_by_target.get(upper.target, []):
            result.append(DoubleLeaf(upper, lower, compose(builder.adjoint(lower), through)))
    result.sort(key=lambda d: d.order_key)
    return result


def degree_polynomial(dleaves: List[DoubleLeaf]) -> LaurentInt:
    """Σ v^deg over a set of double leaves."""
    total = LaurentInt()
    for d in dleaves:
        total = total + LaurentInt.v(d.degree)
    return total


def shape_degree_polynomial(builder: LeafBuilder, upper_word: Word, lower_word: Word) -> LaurentInt:
    """Degree polynomial of the double leaves, computed from leaf shapes only."""
    lower = builder.graded_counts(lower_word)
    total = LaurentInt()
    for target, degrees in builder.graded_counts(upper_word).items():
        for d1, n1 in degrees.items():
            for d2, n2 in lower.get(target, {}).items():
                total = total + LaurentInt({d1 + d2: n1 * n2})
    return total
