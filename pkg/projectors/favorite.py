"""
Favorite projectors p_w ∈ End(B_w) with image the indecomposable B_x, x = w.

For w = w's:
    P   = p_{w'} ⊗ id_s
    Z   = {z : C'_z occurs in C'_{w'} C'_s besides C'_x}, with multiplicities m_z
    L_z = degree-0 leaves of w to z that survive P, reduced greedily to m_z
          leaves whose images P∘l^a∘p_z are independent
    λ_z = (coefficient of 1⊗...⊗1 in p_z∘l_j∘P∘l_i^a∘p_z)_{ij},  η_z = λ_z^-1
    p_z^i = Σ_j η_z^{ji} P∘l_i^a∘p_z∘l_j∘P
    p_w = P - Σ_z Σ_i p_z^i
"""

import logging
import threading
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional

from algebra.linear import determinant, identity, inverse, is_independent, matmul
from algebra.scalars import DyadicRing
from bimodules.morphisms import Morphism, compose
from coxeter.datum import Word
from coxeter.group import Element
from leaves.light_leaves import Leaf
from leaves.pairing import DLBExpansion
from models.data_models import LambdaRecord
from models.errors import NonUnitError, PreconditionError, TheoryViolation
from projectors.context import SoergelContext

logger = logging.getLogger(__name__)


@dataclass
class SummandData:
    """Provenance of one summand B_z split off from P"""
    z: Element
    z_word: Word
    multiplicity: int
    candidates: List[Leaf]
    selected: List[Leaf]
    lam: List[List]
    eta: List[List]
    det: object
    simplified: Optional[List[List]] = None
    pieces: List[Morphism] = field(default_factory=list, repr=False)

    @property
    def strategies_agree(self) -> Optional[bool]:
        if self.simplified is None:
            return None
        return self.simplified == self.lam

    def to_record(self, datum, scalars) -> LambdaRecord:
        def text(matrix):
            return [[scalars.to_text(v) for v in row] for row in matrix] if matrix is not None else None

        dyadic = DyadicRing()
        return LambdaRecord(
            z=datum.format_word(self.z_word),
            multiplicity=self.multiplicity,
            candidates=len(self.candidates),
            selected=[leaf.label(datum) for leaf in self.selected],
            lambda_matrix=text(self.lam),
            eta_matrix=text(self.eta),
            determinant=scalars.to_text(self.det),
            simplified_matrix=text(self.simplified),
            strategies_agree=self.strategies_agree,
            dyadic_integral=scalars.characteristic != 0 or all(dyadic.contains(v) for row in self.lam for v in row),
        )


@dataclass
class Projector:
    """An idempotent of End(B_word) with its construction record"""
    word: Word
    target: Element
    morphism: Morphism = field(repr=False)
    prefix: Optional["Projector"] = field(default=None, repr=False)
    frame: Optional[Morphism] = field(default=None, repr=False)
    summands: List[SummandData] = field(default_factory=list, repr=False)
    scalars_name: str = "QQ"
    # Coefficients in the double leaves basis of End(B_word); filled on first use
    dlb: Optional[DLBExpansion] = field(default=None, repr=False, compare=False)

    def chain(self) -> Iterator["Projector"]:
        """This projector and the projectors of its prefixes."""
        current = self
        while current is not None:
            yield current
            current = current.prefix

    def records(self, datum, scalars) -> List[LambdaRecord]:
        return [s.to_record(datum, scalars) for s in self.summands]


class FavoriteProjectorBuilder:
    """
    Builds favorite projectors over one context.

    Projectors are memoized by word. Recursion only descends to shorter
    words; re-entering a word under construction is a fatal error.
    """

    def __init__(self, context: SoergelContext, reverse_selection: bool = False):
        self.context = context
        self.group = context.group
        self.datum = context.datum
        self.calculus = context.calculus
        self.leaves = context.leaves
        self.hecke = context.hecke
        self.scalars = self.calculus.scalars
        self.reverse_selection = reverse_selection
        self._projectors: Dict[Word, Projector] = {}
        self._in_progress: set = set()
        self._lock = threading.Lock()

    def favorite_projector(self, word: Word) -> Projector:
        """
        The favorite projector of a reduced word.

        Args:
            word: Reduced word

        Returns:
            Projector whose morphism is an idempotent of End(B_word)
        """
        word = tuple(word)
        cached = self._projectors.get(word)
        if cached is not None:
            return cached
        if not self.group.is_reduced(word):
            raise PreconditionError(f"{self.datum.format_word(word)} is not reduced")
        if word in self._in_progress:
            raise TheoryViolation("Cyclic projector dependency", {'word': self.datum.format_word(word)})
        self._in_progress.add(word)
        try:
            projector = self._build(word)
        finally:
            self._in_progress.discard(word)
        with self._lock:
            self._projectors[word] = projector
        return projector

    def _build(self, word: Word) -> Projector:
        x = self.group.element_of(word)
        obj = self.calculus.obj(word)
        if len(word) <= 1:
            return Projector(word, x, self.calculus.identity(obj), scalars_name=str(self.scalars))

        prefix_word, s = word[:-1], word[-1]
        prefix = self.favorite_projector(prefix_word)
        frame = self.calculus.tensor3((), prefix.morphism, (s,))
        y = self.group.element_of(prefix_word)
        multiplicities = self.hecke.kl_multiplicities(y, s)

        p = frame
        summands = []
        for z, multiplicity in multiplicities.items():
            data = self._split_off(word, z, multiplicity, frame)
            if self.simplification_applies(prefix_word, s, z, x):
                data.simplified = self.simplified_lambda_matrix(data.selected, data.z_word)
                if data.simplified != data.lam:
                    raise TheoryViolation(
                        "Simplified intersection scalars disagree",
                        {'word': self.datum.format_word(word), 'z': self.datum.format_word(data.z_word)},
                    )
            if self.scalars.characteristic == 0 and not data.to_record(self.datum, self.scalars).dyadic_integral:
                logger.warning(
                    "Intersection scalars of %s at %s leave ZZ[1/2]",
                    self.datum.format_word(word), self.datum.format_word(data.z_word),
                )
            for piece in data.pieces:
                p = p - piece
            summands.append(data)

        if compose(p, p) != p:
            raise TheoryViolation("Projector is not idempotent", {'word': self.datum.format_word(word)})
        logger.info(
            "Projector %s: %d summands removed",
            self.datum.format_word(word), sum(d.multiplicity for d in summands),
        )
        return Projector(word, x, p, prefix, frame, summands, str(self.scalars))

    def _split_off(self, word: Word, z: Element, multiplicity: int, frame: Morphism) -> SummandData:
        z_word = self.context.words.canonical_word(z)
        p_z = self.favorite_projector(z_word).morphism
        candidates = self.degree_zero_leaves_to(word, z, frame)
        selected = self.select_L_oplus(candidates, frame, z_word, multiplicity)
        lam = self.lambda_matrix(selected, frame, z_word)
        try:
            eta = inverse(lam, self.scalars)
        except NonUnitError:
            raise TheoryViolation(
                "Intersection scalar matrix is singular",
                {'word': self.datum.format_word(word), 'z': self.datum.format_word(z_word)},
            )
        if matmul(lam, eta, self.scalars) != identity(len(lam), self.scalars):
            raise TheoryViolation("λ·η is not the identity", {'z': self.datum.format_word(z_word)})

        ups = [compose(frame, compose(self.leaves.adjoint(l), p_z)) for l in selected]
        downs = [compose(p_z, compose(l.morphism, frame)) for l in selected]
        pieces = []
        for i in range(len(selected)):
            piece = None
            for j in range(len(selected)):
                if not eta[j][i]:
                    continue
                term = compose(ups[i], downs[j]).scale(eta[j][i])
                piece = term if piece is None else piece + term
            pieces.append(piece if piece is not None else self.calculus.zero(frame.source, frame.target))
        return SummandData(
            z=z,
            z_word=z_word,
            multiplicity=multiplicity,
            candidates=candidates,
            selected=selected,
            lam=lam,
            eta=eta,
            det=determinant(lam, self.scalars),
            pieces=pieces,
        )

    # Leaves to a summand
    def degree_zero_leaves_to(self, word: Word, z: Element, frame: Morphism) -> List[Leaf]:
        """Degree-0 leaves l to z with p_z∘l∘P != 0."""
        p_z = self.favorite_projector(self.context.words.canonical_word(z)).morphism
        return [
            leaf for leaf in self.leaves.leaves_to(word, z, degree=0)
            if not compose(p_z, compose(leaf.morphism, frame)).is_zero()
        ]

    def select_L_oplus(self, candidates: List[Leaf], frame: Morphism, z_word: Word,
                       multiplicity: int) -> List[Leaf]:
        """Greedy choice of leaves whose images P∘l^a∘p_z(1⊗...⊗1) are independent."""
        if multiplicity == 0:
            return []
        p_z = self.favorite_projector(z_word).morphism
        start = self.calculus.one_tensor(self.calculus.obj(z_word))
        ordered = list(reversed(candidates)) if self.reverse_selection else list(candidates)
        selected, vectors = [], []
        for leaf in ordered:
            image = compose(frame, compose(self.leaves.adjoint(leaf), p_z)).apply(start)
            vector = image.coordinates()
            if vector and is_independent(vectors + [vector], self.scalars):
                selected.append(leaf)
                vectors.append(vector)
                if len(selected) == multiplicity:
                    break
        if len(selected) < multiplicity:
            raise TheoryViolation(
                "Too few independent degree-0 leaves",
                {'z': self.datum.format_word(z_word), 'needed': multiplicity, 'found': len(selected)},
            )
        logger.debug("Selected %d of %d leaves to %s", len(selected), len(candidates), self.datum.format_word(z_word))
        return selected

    # Intersection scalars
    def _scalar_multiple(self, composite: Morphism, p_z: Morphism, context: Dict):
        start = self.calculus.one_tensor(p_z.source)
        zero_bits = (0,) * p_z.source.length
        value = composite.apply(start).coefficient(zero_bits).constant_term()
        if composite != p_z.scale(value):
            raise TheoryViolation("Composite is not a scalar multiple of the projector", context)
        return value

    def lambda_matrix(self, selected: List[Leaf], frame: Morphism, z_word: Word) -> List[List]:
        """λ^{ij}: the scalar with p_z∘l_j∘P∘l_i^a∘p_z = λ^{ij}·p_z."""
        p_z = self.favorite_projector(z_word).morphism
        ups = [compose(frame, compose(self.leaves.adjoint(l), p_z)) for l in selected]
        downs = [compose(p_z, l.morphism) for l in selected]
        return [
            [
                self._scalar_multiple(compose(downs[j], ups[i]), p_z, {'z': self.datum.format_word(z_word), 'i': i, 'j': j})
                for j in range(len(selected))
            ]
            for i in range(len(selected))
        ]

    def simplified_lambda_matrix(self, selected: List[Leaf], z_word: Word) -> List[List]:
        """The same scalars with P dropped: p_z∘l_j∘l_i^a∘p_z."""
        p_z = self.favorite_projector(z_word).morphism
        ups = [compose(self.leaves.adjoint(l), p_z) for l in selected]
        downs = [compose(p_z, l.morphism) for l in selected]
        return [
            [
                self._scalar_multiple(compose(downs[j], ups[i]), p_z, {'z': self.datum.format_word(z_word), 'i': i, 'j': j})
                for j in range(len(selected))
            ]
            for i in range(len(selected))
        ]

    def simplification_applies(self, prefix_word: Word, s: int, z: Element, x: Element) -> bool:
        """True when (C'_{w'} - C'_y)·C'_s has no degree-0 C'_z or C'_x term."""
        h = self.hecke
        y = self.group.element_of(prefix_word)
        kernel = h.C_word(prefix_word) - h.kl_element(y)
        if kernel.is_zero():
            return True
        expansion = h.kl_expand(h.mul(kernel, h.C_generator(s)))
        return all(expansion[w].constant_term() == 0 for w in (z, x) if w in expansion)

    def intersection_scalar(self, leaf: Leaf, other: Leaf):
        """Coefficient of 1⊗...⊗1 in (l∘l'^a)(1⊗...⊗1) of B_y, for degree-0 leaves w → y."""
        if leaf.degree != 0 or other.degree != 0:
            raise PreconditionError("Intersection scalars need degree-0 leaves")
        if leaf.source != other.source or leaf.target != other.target:
            raise PreconditionError("Leaves must share source and target")
        composite = compose(leaf.morphism, self.leaves.adjoint(other))
        start = self.calculus.one_tensor(composite.source)
        zero_bits = (0,) * composite.source.length
        return composite.apply(start).coefficient(zero_bits).constant_term()

