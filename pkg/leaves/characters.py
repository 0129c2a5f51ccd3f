"""
Decategorification: graded ranks of Hom(Im p, R_x) and the character of a projector.
"""

import logging
import random
from typing import Dict, List, Optional, Tuple

from algebra.linear import SparseSystem, rank
from algebra.polynomial import GradedPoly, act
from bimodules.morphisms import Morphism, compose
from config import RANK_CHECK_SEED
from coxeter.datum import Word
from coxeter.group import Element
from hecke.algebra import HeckeElt
from hecke.laurent import LaurentInt
from leaves.light_leaves import Leaf, LeafBuilder
from models.errors import PreconditionError, TheoryViolation

logger = logging.getLogger(__name__)


class CharacterCalculator:
    """Leaves bases of Hom(B_w, R_x) and characters of idempotents."""

    def __init__(self, builder: LeafBuilder):
        self.builder = builder
        self.calculus = builder.calculus
        self.ring = self.calculus.ring
        self.scalars = self.ring.scalars
        self._beta: Dict[Word, Morphism] = {}
        rng = random.Random(RANK_CHECK_SEED)
        self.evaluation_point = [self.ring.constant(rng.randint(1, 97)) for _ in range(self.ring.nvars)]

    def _beta_of(self, word: Word) -> Morphism:
        if word not in self._beta:
            self._beta[word] = self.calculus.beta(word)
        return self._beta[word]

    def leaves_basis_Rx(self, word: Word, x: Element) -> List[Tuple[Leaf, Morphism]]:
        """{β∘l : l a light leaf of word with target x}; β∘l has the degree of l."""
        return [
            (leaf, compose(self._beta_of(leaf.target_word), leaf.morphism))
            for leaf in self.builder.leaves_to(word, x)
        ]

    def expand_in_leaves_basis(self, phi: Morphism, basis: List[Tuple[Leaf, Morphism]]) -> List[GradedPoly]:
        """
        Right coefficients r_b with phi = Σ φ_b·r_b.

        The right action on Hom(B_w, R_x) is (φ·r)(m) = φ(m)·x(r).
        """
        if phi.is_zero():
            return [self.ring.zero() for _ in basis]
        x = phi.target.twist
        unknowns: List[Tuple[int, tuple]] = []
        for b, (leaf, _) in enumerate(basis):
            gap = phi.degree - leaf.degree
            if gap >= 0 and gap % 2 == 0:
                unknowns.extend((b, mono) for mono in self.ring.monomials_of_degree(gap // 2))
        twisted = {}
        rows: Dict[Tuple, Dict[int, object]] = {}
        rhs: Dict[Tuple, object] = {}
        for u, (b, mono) in enumerate(unknowns):
            if mono not in twisted:
                twisted[mono] = act(x, GradedPoly(self.ring, {mono: self.scalars.one}))
            for e, img in basis[b][1].images.items():
                product = img.coefficient(()) * twisted[mono]
                for m, v in product.terms.items():
                    row = rows.setdefault((e, m), {})
                    row[u] = row.get(u, self.scalars.zero) + v
        for e, img in phi.images.items():
            for m, v in img.coefficient(()).terms.items():
                rhs[(e, m)] = v
                rows.setdefault((e, m), {})
        system = SparseSystem(self.scalars)
        for key, row in rows.items():
            system.add_equation(row, rhs.get(key, 0))
        values = system.unique_solution(len(unknowns))
        coefficients: List[Dict[tuple, object]] = [{} for _ in basis]
        for (b, mono), value in zip(unknowns, values):
            if value:
                coefficients[b][mono] = value
        return [GradedPoly(self.ring, terms) for terms in coefficients]

    def graded_ranks(self, p: Morphism, x: Element) -> Dict[int, int]:
        """
        Graded rank of Hom(Im p, R_x) as {degree: rank}.

        The matrix of φ ↦ φ∘p in the leaves basis is reduced modulo the
        positive-degree polynomials; each degree block is an idempotent whose
        rank equals its trace. The total rank must survive evaluating the
        variables at a seeded point.
        """
        basis = self.leaves_basis_Rx(p.source.word, x)
        by_degree: Dict[int, List[int]] = {}
        for b, (leaf, _) in enumerate(basis):
            by_degree.setdefault(leaf.degree, []).append(b)
        reduced: Dict[int, List[List]] = {d: [] for d in by_degree}
        evaluated: List[List] = []
        for a, (leaf, phi) in enumerate(basis):
            coefficients = self.expand_in_leaves_basis(compose(phi, p), basis)
            reduced[leaf.degree].append([coefficients[b].constant_term() for b in by_degree[leaf.degree]])
            evaluated.append([c.substitute(self.evaluation_point).constant_term() for c in coefficients])
        ranks = {}
        for d, matrix in sorted(reduced.items()):
            r = rank(matrix, self.scalars)
            trace = sum((matrix[k][k] for k in range(len(matrix))), self.scalars.zero)
            if trace != self.scalars(r):
                raise TheoryViolation(
                    "Reduced idempotent has trace different from rank",
                    {'x': self.builder.datum.format_word(x.word), 'degree': d, 'rank': r},
                )
            if r:
                ranks[d] = r
        generic = rank(evaluated, self.scalars) if evaluated else 0
        if generic != sum(ranks.values()):
            raise TheoryViolation(
                "Rank of the idempotent changes under evaluation",
                {'x': self.builder.datum.format_word(x.word), 'graded': ranks, 'evaluated': generic},
            )
        return ranks

    def character(self, p: Morphism, check_idempotent: bool = True) -> HeckeElt:
        """Σ_x (Σ_d rank_d v^d) T̃_x for the image of an idempotent p of End(B_w)."""
        if p.source != p.target:
            raise PreconditionError("Character needs an endomorphism")
        if check_idempotent and compose(p, p) != p:
            raise PreconditionError("Character needs an idempotent")
        targets = []
        for leaf in self.builder.leaf_shapes(p.source.word):
            if leaf.target not in targets:
                targets.append(leaf.target)
        terms: Dict[Element, LaurentInt] = {}
        for x in targets:
            ranks = self.graded_ranks(p, x)
            if ranks:
                terms[x] = LaurentInt(ranks)
        return HeckeElt(terms)
