"""
Reduced words, braid moves and canonical reduced words.

All searches are breadth-first with a fixed neighbour order (smallest move
position first, then smallest generator pair), so paths are reproducible and
safe to cache.
"""

import logging
import threading
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from coxeter.datum import Word
from coxeter.group import CoxeterGroup, Element
from models.errors import PreconditionError

logger = logging.getLogger(__name__)


def alternating(s: int, r: int, length: int) -> Word:
    """The word s r s r ... of the given length."""
    return tuple(s if k % 2 == 0 else r for k in range(length))


@dataclass(frozen=True)
class BraidMove:
    """Replace the alternating factor s r s... at position by r s r..."""
    position: int
    pair: Tuple[int, int]
    source: Word
    target: Word

    @property
    def length(self) -> int:
        """Length of the alternating factor, i.e. m(s, r)."""
        return sum(1 for a, b in zip(self.source, self.target) if a != b)


@dataclass
class ReducedWordGraph:
    """All reduced words of an element with braid-move edges."""
    element: Element
    nodes: List[Word] = field(default_factory=list)
    edges: List[BraidMove] = field(default_factory=list)

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        adjacency: Dict[Word, Set[Word]] = {w: set() for w in self.nodes}
        for move in self.edges:
            adjacency[move.source].add(move.target)
            adjacency[move.target].add(move.source)
        seen = {self.nodes[0]}
        queue = deque([self.nodes[0]])
        while queue:
            w = queue.popleft()
            for v in adjacency[w]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == len(self.nodes)


class WordCombinatorics:
    """
    Braid-move searches over the reduced words of a Coxeter group.

    Results are memoized per group; writes are serialized by a lock.
    """

    def __init__(self, group: CoxeterGroup):
        self.group = group
        self.datum = group.datum
        self._braid_paths: Dict[Tuple[int, Word], Tuple[BraidMove, ...]] = {}
        self._paths: Dict[Tuple[Word, Word], Tuple[BraidMove, ...]] = {}
        self._canonical: Dict[Element, Word] = {}
        self.palindrome_fallbacks: Set[Element] = set()
        self._lock = threading.Lock()

    # Moves
    def braid_moves(self, word: Word) -> List[BraidMove]:
        """Applicable braid moves, ordered by position then by pair."""
        moves = []
        n = len(word)
        for position in range(n - 1):
            s, r = word[position], word[position + 1]
            if s == r:
                continue
            m = self.datum.m(s, r)
            if m is None or position + m > n:
                continue
            if word[position:position + m] == alternating(s, r, m):
                target = word[:position] + alternating(r, s, m) + word[position + m:]
                moves.append(BraidMove(position, (s, r), word, target))
        return moves

    def gre_graph(self, x: Element) -> ReducedWordGraph:
        """Graph of reduced words of x; undirected edges recorded once."""
        start = self.group.element_of(x.word).word
        seen = {start}
        queue = deque([start])
        edges = []
        while queue:
            w = queue.popleft()
            for move in self.braid_moves(w):
                if move.target not in seen:
                    seen.add(move.target)
                    queue.append(move.target)
                if move.source < move.target:
                    edges.append(move)
        return ReducedWordGraph(x, sorted(seen), sorted(edges, key=lambda e: (e.source, e.position)))

    def _search(self, start: Word, accept) -> Tuple[BraidMove, ...]:
        parents: Dict[Word, Optional[BraidMove]] = {start: None}
        queue = deque([start])
        while queue:
            w = queue.popleft()
            if accept(w):
                path = []
                while parents[w] is not None:
                    move = parents[w]
                    path.append(move)
                    w = move.source
                return tuple(reversed(path))
            for move in self.braid_moves(w):
                if move.target not in parents:
                    parents[move.target] = move
                    queue.append(move.target)
        raise PreconditionError(f"No braid path from {self.datum.format_word(start)}")

    def braid_path(self, s: int, word: Word) -> Tuple[BraidMove, ...]:
        """
        Deterministic path from a reduced word to a reduced word ending in s.

        Args:
            s: Simple reflection that is a right descent of the element
            word: Reduced word of that element

        Returns:
            Sequence of braid moves (empty when word already ends in s)
        """
        word = tuple(word)
        key = (s, word)
        cached = self._braid_paths.get(key)
        if cached is not None:
            return cached
        x = self.group.element_of(word)
        if x.length != len(word):
            raise PreconditionError(f"{self.datum.format_word(word)} is not reduced")
        if self.group.right_multiply(x, s).length > x.length:
            raise PreconditionError(
                f"s{s + 1} is not a right descent of {self.datum.format_word(word)}"
            )
        path = self._search(word, lambda w: w[-1] == s)
        with self._lock:
            self._braid_paths[key] = path
        return path

    def path_between(self, source: Word, target: Word) -> Tuple[BraidMove, ...]:
        """Deterministic shortest braid path between two reduced words of one element."""
        source, target = tuple(source), tuple(target)
        key = (source, target)
        cached = self._paths.get(key)
        if cached is not None:
            return cached
        if self.group.element_of(source) != self.group.element_of(target):
            raise PreconditionError("Words represent different elements")
        path = self._search(source, lambda w: w == target)
        with self._lock:
            self._paths[key] = path
        return path

    # Canonical words
    def canonical_word(self, x: Element) -> Word:
        """
        Fixed reduced word with reverse(canonical_word(x)) = canonical_word(x^-1).

        Involutions get the ShortLex-minimal palindromic reduced word; when none
        exists the ShortLex word is used and the element is flagged.
        """
        cached = self._canonical.get(x)
        if cached is not None:
            return cached
        inv = self.group.inverse(x)
        if inv == x:
            palindromes = [w for w in self.gre_graph(x).nodes if w == tuple(reversed(w))]
            if palindromes:
                word = min(palindromes)
            else:
                word = x.word
                self.palindrome_fallbacks.add(x)
                logger.info("No palindromic reduced word for %s; using ShortLex", self.datum.format_word(x.word))
        elif x.word <= inv.word:
            word = x.word
        else:
            word = tuple(reversed(inv.word))
        with self._lock:
            self._canonical[x] = word
        return word

    def canonical_path(self, word: Word) -> Tuple[BraidMove, ...]:
        """The path F(word, canonical word) for a reduced word."""
        x = self.group.element_of(word)
        return self.path_between(word, self.canonical_word(x))

    def is_palindrome_fallback(self, x: Element) -> bool:
        self.canonical_word(x)
        return x in self.palindrome_fallbacks
