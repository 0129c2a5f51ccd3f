"""
Elements of a Coxeter group and the Bruhat order.

Elements are enumerated breadth-first by length. Parents are visited in
ShortLex order of their words and generators in increasing order, so the first
word reaching an element is its ShortLex-minimal reduced word.
"""

import logging
import threading
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from coxeter.datum import CoxeterDatum, IntMatrix, Word, identity_matrix, matrix_product
from models.errors import DatumMismatchError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Element:
    """A group element: ShortLex-minimal reduced word plus its action matrix."""
    word: Word
    matrix: IntMatrix = field(repr=False)
    datum_key: str = field(repr=False)

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.datum_key == other.datum_key and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.datum_key, self.matrix))

    def sort_key(self) -> Tuple[int, Word]:
        return (len(self.word), self.word)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


class CoxeterGroup:
    """
    The group generated by the realization matrices of a datum.

    Layers are built lazily; a finite group is complete once a layer is empty.
    """

    def __init__(self, datum: CoxeterDatum):
        self.datum = datum
        self.key = datum.key
        self.rank = datum.rank
        ident = Element((), identity_matrix(datum.dimension), self.key)
        self._layers: List[List[Element]] = [[ident]]
        self._by_matrix: Dict[IntMatrix, Element] = {ident.matrix: ident}
        self._complete = datum.rank == 0
        self._right: Dict[Tuple[Element, int], Element] = {}
        self._bruhat: Dict[Tuple[Element, Element], bool] = {}
        self._lock = threading.Lock()

    # Enumeration
    def _extend_layers(self, length: int):
        with self._lock:
            while len(self._layers) <= length and not self._complete:
                previous = self._layers[-1]
                layer: List[Element] = []
                for parent in previous:
                    for s in range(self.rank):
                        matrix = matrix_product(parent.matrix, self.datum.reflection_matrices[s])
                        if matrix in self._by_matrix:
                            continue
                        child = Element(parent.word + (s,), matrix, self.key)
                        self._by_matrix[matrix] = child
                        layer.append(child)
                if not layer:
                    self._complete = True
                    logger.debug("Group %s is finite of order %d", self.datum.label, len(self._by_matrix))
                    break
                self._layers.append(layer)

    @property
    def identity(self) -> Element:
        return self._layers[0][0]

    @property
    def is_finite(self) -> bool:
        return self.datum.finite

    def elements_up_to(self, length: int) -> List[Element]:
        """All elements of length <= length, ordered by (length, ShortLex)."""
        self._extend_layers(length)
        return [x for layer in self._layers[:length + 1] for x in layer]

    def elements(self) -> List[Element]:
        """The whole group; only for finite data."""
        if not self.is_finite:
            raise PreconditionError(f"{self.datum.label} is infinite; use elements_up_to")
        while not self._complete:
            self._extend_layers(len(self._layers))
        return [x for layer in self._layers for x in layer]

    def longest_element(self) -> Element:
        return self.elements()[-1]

    # Words and products
    def _check(self, x: Element):
        if x.datum_key != self.key:
            raise DatumMismatchError(f"Element {x.word} does not belong to {self.datum.label}")

    def element_of(self, word: Word) -> Element:
        """Canonical element represented by a word."""
        word = tuple(word)
        for s in word:
            if not 0 <= s < self.rank:
                raise PreconditionError(f"Generator index {s} invalid for {self.datum.label}")
        matrix = self.datum.word_matrix(word)
        found = self._by_matrix.get(matrix)
        if found is None:
            self._extend_layers(len(word))
            found = self._by_matrix[matrix]
        return found

    def generator(self, s: int) -> Element:
        return self.element_of((s,))

    def right_multiply(self, x: Element, s: int) -> Element:
        key = (x, s)
        result = self._right.get(key)
        if result is None:
            result = self.element_of(x.word + (s,))
            self._right[key] = result
        return result

    def multiply(self, x: Element, y: Element) -> Element:
        self._check(x)
        self._check(y)
        return self.element_of(x.word + y.word)

    def inverse(self, x: Element) -> Element:
        return self.element_of(tuple(reversed(x.word)))

    def is_reduced(self, word: Word) -> bool:
        return self.element_of(word).length == len(word)

    def right_descents(self, x: Element) -> List[int]:
        return [s for s in range(self.rank) if self.right_multiply(x, s).length < x.length]

    def left_descents(self, x: Element) -> List[int]:
        return [s for s in range(self.rank) if self.element_of((s,) + x.word).length < x.length]

    def format(self, x: Element) -> str:
        return self.datum.format_word(x.word)

    # Bruhat order
    def bruhat_leq(self, x: Element, y: Element) -> bool:
        """x <= y, by the descent recursion: x <= y iff min(x, xs) <= ys for s a right descent of y."""
        self._check(x)
        self._check(y)
        key = (x, y)
        cached = self._bruhat.get(key)
        if cached is not None:
            return cached
        if x.length > y.length:
            result = False
        elif x.length == y.length:
            result = x == y
        elif x.length == 0:
            result = True
        else:
            s = y.word[-1]
            ys = self.right_multiply(y, s)
            xs = self.right_multiply(x, s)
            result = self.bruhat_leq(xs if xs.length < x.length else x, ys)
        self._bruhat[key] = result
        return result

    def bruhat_leq_by_subwords(self, x: Element, y: Element) -> bool:
        """Subword criterion on the canonical word of y; exponential, used as a cross-check."""
        word = y.word
        # a subword of length l(x) representing x is automatically reduced
        for positions in combinations(range(len(word)), x.length):
            if self.element_of(tuple(word[p] for p in positions)) == x:
                return True
        return False

    def bruhat_interval_below(self, y: Element) -> List[Element]:
        return [x for x in self.elements_up_to(y.length) if self.bruhat_leq(x, y)]
