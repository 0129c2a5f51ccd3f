"""
Light leaves: the morphisms B_w → B_x read off the binary tree of a word.

At step k with letter s and current reduced word t:
    l(ts) > l(t): keep (identity, t becomes ts) or apply m_s (t stays)
    l(ts) < l(t): move t to a word ending in s by braid morphisms, apply j_s,
                  then keep (t stays) or apply m_s (t becomes ts)
Each branch ends with the braid path to the canonical word of its target.
Branches are visited with the identity choice first, so leaves come out in
binary-counter order of their m-bits.
"""

import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from bimodules.calculus import BimoduleCalculus
from bimodules.morphisms import GeneratorStep, Morphism, compose
from bimodules.objects import Bits
from coxeter.datum import Word
from coxeter.group import Element
from coxeter.words import BraidMove, WordCombinatorics

logger = logging.getLogger(__name__)


@dataclass
class Leaf:
    """A light leaf of a word"""
    source: Word
    i: Bits
    j: Bits
    target: Element
    target_word: Word
    morphism: Optional[Morphism] = field(default=None, repr=False)
    prefixes: Tuple[Element, ...] = field(default=(), repr=False)
    index: int = 0

    @property
    def degree(self) -> int:
        return sum(self.i) - sum(self.j)

    def label(self, datum) -> str:
        bits = ''.join(str(b) for b in self.i) or '-'
        return f"{datum.format_word(self.source)}[{bits}]"

    def to_dict(self, datum) -> Dict:
        return {
            'word': datum.format_word(self.source),
            'i': ''.join(str(b) for b in self.i),
            'j': ''.join(str(b) for b in self.j),
            'target': datum.format_word(self.target_word),
            'degree': self.degree,
        }


def move_step(move: BraidMove, m: int, suffix: Word) -> GeneratorStep:
    """The braid morphism realizing one braid move, framed by identities."""
    p = move.position
    return GeneratorStep(
        'f',
        move.source[p:p + m],
        move.source[:p],
        move.source[p + m:] + suffix,
    )


class LeafBuilder:
    """
    Builds light leaves and their adjoints for one calculus.

    Leaves and adjoints are memoized per word; writes are serialized.
    """

    def __init__(self, calculus: BimoduleCalculus, words: Optional[WordCombinatorics] = None):
        self.calculus = calculus
        self.group = calculus.group
        self.datum = calculus.datum
        self.words = words or WordCombinatorics(self.group)
        self._leaves: Dict[Word, List[Leaf]] = {}
        self._adjoints: Dict[Tuple[Word, Bits], Morphism] = {}
        self._lock = threading.Lock()

    def _path_steps(self, moves, suffix: Word) -> List[GeneratorStep]:
        return [move_step(mv, self.datum.m(*mv.pair), suffix) for mv in moves]

    def _grow(self, word: Word, build: bool) -> List[Leaf]:
        leaves: List[Leaf] = []
        n = len(word)

        def visit(k: int, t_word: Word, t: Element, f: Optional[Morphism],
                  i: Bits, j: Bits, prefixes: Tuple[Element, ...]):
            if k == n:
                canonical = self.words.canonical_word(t)
                if build:
                    steps = self._path_steps(self.words.path_between(t_word, canonical), ())
                    f = self._extend(f, steps)
                leaves.append(Leaf(word, i, j, t, canonical, f, prefixes, len(leaves)))
                return
            s = word[k]
            rest = word[k + 1:]
            ts = self.group.right_multiply(t, s)
            if ts.length > t.length:
                visit(k + 1, t_word + (s,), ts, f, i + (0,), j + (0,), prefixes + (ts,))
                g = self._extend(f, [GeneratorStep('m', (s,), t_word, rest)]) if build else None
                visit(k + 1, t_word, t, g, i + (1,), j + (0,), prefixes + (t,))
                return
            moves = self.words.braid_path(s, t_word)
            moved = moves[-1].target if moves else t_word
            steps = self._path_steps(moves, (s,) + rest)
            steps.append(GeneratorStep('j', (s,), moved[:-1], rest))
            g = self._extend(f, steps) if build else None
            visit(k + 1, moved, t, g, i + (0,), j + (1,), prefixes + (t,))
            h = self._extend(g, [GeneratorStep('m', (s,), moved[:-1], rest)]) if build else None
            visit(k + 1, moved[:-1], ts, h, i + (1,), j + (1,), prefixes + (ts,))

        start = self.calculus.identity(self.calculus.obj(word)) if build else None
        visit(0, (), self.group.identity, start, (), (), ())
        return leaves

    def _extend(self, f: Morphism, steps: List[GeneratorStep]) -> Morphism:
        for step in steps:
            f = compose(self.calculus.step_morphism(step), f)
        return f

    def light_leaves(self, word: Word) -> List[Leaf]:
        """All 2^n light leaves of a word, in binary-counter order of their m-bits."""
        word = tuple(word)
        cached = self._leaves.get(word)
        if cached is not None:
            return cached
        leaves = self._grow(word, build=True)
        with self._lock:
            self._leaves[word] = leaves
        logger.debug("Built %d light leaves for %s", len(leaves), self.datum.format_word(word))
        return leaves

    def leaf_shapes(self, word: Word) -> List[Leaf]:
        """Leaves without morphisms: bits, targets and degrees only."""
        return self._grow(tuple(word), build=False)

    def leaves_to(self, word: Word, x: Element, degree: Optional[int] = None) -> List[Leaf]:
        return [
            leaf for leaf in self.light_leaves(word)
            if leaf.target == x and (degree is None or leaf.degree == degree)
        ]

    def adjoint(self, leaf: Leaf) -> Morphism:
        """l^a: B_x → B_w."""
        key = (leaf.source, leaf.i)
        cached = self._adjoints.get(key)
        if cached is not None:
            return cached
        result = self.calculus.adjoint(leaf.morphism)
        with self._lock:
            self._adjoints[key] = result
        return result

    def graded_counts(self, word: Word) -> Dict[Element, Dict[int, int]]:
        """{target: {degree: number of leaves}}."""
        counts: Dict[Element, Dict[int, int]] = {}
        for leaf in self.leaf_shapes(word):
            per_degree = counts.setdefault(leaf.target, {})
            per_degree[leaf.degree] = per_degree.get(leaf.degree, 0) + 1
        return counts

    def distinct_targets_violations(self, word: Word) -> List[Tuple[Bits, Bits, Bits]]:
        """Triples (j, i, i') where two m-patterns with the same j-pattern reach one target."""
        seen: Dict[Tuple[Bits, Element], Bits] = {}
        violations = []
        for leaf in self.leaf_shapes(word):
            key = (leaf.j, leaf.target)
            if key in seen:
                violations.append((leaf.j, seen[key], leaf.i))
            else:
                seen[key] = leaf.i
        return violations
