"""
Morphisms between Bott-Samelson and twisted bimodules.

A morphism is stored by the images of the left basis of its source. It may also
carry the sequence of generator steps it was composed from; that sequence is what
the adjoint works on. Linear combinations lose it.
"""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from algebra.polynomial import GradedPoly, PolynomialRing
from bimodules.objects import Bits, BSElement
from coxeter.datum import Word
from coxeter.words import alternating
from models.errors import ShapeMismatchError

GENERATOR_KINDS = ('m', 'j', 'eps', 'p', 'f')
_ADJOINT_KIND = {'m': 'eps', 'eps': 'm', 'j': 'p', 'p': 'j', 'f': 'f'}


@dataclass(frozen=True)
class GeneratorStep:
    """
    One generating morphism framed by identities: id_left ⊗ g ⊗ id_right.

    letters holds (s,) for m, j, eps, p and the alternating source factor
    s r s ... for a braid morphism f.
    """
    kind: str
    letters: Word
    left: Word = ()
    right: Word = ()

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"Unknown generator kind '{self.kind}'")

    @property
    def middle_source(self) -> Word:
        s = self.letters[0]
        if self.kind == 'm':
            return (s,)
        if self.kind == 'eps':
            return ()
        if self.kind == 'j':
            return (s, s)
        if self.kind == 'p':
            return (s,)
        return self.letters

    @property
    def middle_target(self) -> Word:
        s = self.letters[0]
        if self.kind == 'm':
            return ()
        if self.kind == 'eps':
            return (s,)
        if self.kind == 'j':
            return (s,)
        if self.kind == 'p':
            return (s, s)
        return alternating(self.letters[1], self.letters[0], len(self.letters))

    @property
    def source_word(self) -> Word:
        return self.left + self.middle_source + self.right

    @property
    def target_word(self) -> Word:
        return self.left + self.middle_target + self.right

    @property
    def degree(self) -> int:
        return {'m': 1, 'eps': 1, 'j': -1, 'p': -1, 'f': 0}[self.kind]

    def adjoint(self) -> "GeneratorStep":
        letters = self.letters
        if self.kind == 'f':
            letters = alternating(letters[1], letters[0], len(letters))
        return GeneratorStep(_ADJOINT_KIND[self.kind], letters, self.left, self.right)

    def to_text(self, datum=None) -> str:
        fmt = datum.format_word if datum is not None else (lambda w: '.'.join(str(s + 1) for s in w) or 'e')
        name = f"{self.kind}[{fmt(self.letters)}]"
        parts = []
        if self.left:
            parts.append(f"id[{fmt(self.left)}]")
        parts.append(name)
        if self.right:
            parts.append(f"id[{fmt(self.right)}]")
        return '⊗'.join(parts)


@dataclass
class Morphism:
    """Left-linear map given on the source basis; images live in the target."""
    source: object
    target: object
    degree: int
    images: Dict[Bits, BSElement]
    steps: Optional[Tuple[GeneratorStep, ...]] = field(default=None)

    @property
    def ring(self) -> PolynomialRing:
        return next(iter(self.images.values())).ring

    # Construction
    @classmethod
    def identity(cls, obj, ring: PolynomialRing) -> "Morphism":
        images = {e: BSElement(obj, ring, {e: ring.one()}) for e in obj.basis()}
        return cls(obj, obj, 0, images, ())

    @classmethod
    def zero(cls, source, target, ring: PolynomialRing, degree: int = 0) -> "Morphism":
        images = {e: BSElement(target, ring) for e in source.basis()}
        return cls(source, target, degree, images, None)

    # Evaluation
    def apply(self, element: BSElement) -> BSElement:
        if element.obj != self.source:
            raise ShapeMismatchError(f"Cannot apply a morphism from {self.source} to an element of {element.obj}")
        result = BSElement(self.target, element.ring)
        for e, c in element.coeffs.items():
            result = result + self.images[e].scale(c)
        return result

    # Linear structure
    def _check_shape(self, other: "Morphism"):
        if self.source != other.source or self.target != other.target:
            raise ShapeMismatchError("Morphisms have different sources or targets")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._check_shape(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ShapeMismatchError(f"Cannot add morphisms of degrees {self.degree} and {other.degree}")
        images = {e: self.images[e] + other.images[e] for e in self.images}
        return Morphism(self.source, self.target, self.degree, images, None)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def scale(self, factor) -> "Morphism":
        """Left multiplication of every image by a scalar or a polynomial."""
        degree = self.degree
        if isinstance(factor, GradedPoly) and factor and not factor.is_constant():
            degree += factor.degree()
        images = {e: img.scale(factor) for e, img in self.images.items()}
        return Morphism(self.source, self.target, degree, images, None)

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images.values())

    def change_ring(self, ring: PolynomialRing) -> "Morphism":
        images = {e: img.change_ring(ring) for e, img in self.images.items()}
        return Morphism(self.source, self.target, self.degree, images, self.steps)

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and all(self.images[e] == other.images[e] for e in self.images)
        )

    def __hash__(self):
        return hash((self.source, self.target, self.degree))

    def describe(self, datum=None) -> str:
        if self.steps is None:
            return "<linear combination>"
        if not self.steps:
            return "id"
        return " ; ".join(step.to_text(datum) for step in self.steps)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g ∘ f; the generator steps concatenate when both are known."""
    if f.target != g.source:
        raise ShapeMismatchError(f"Cannot compose: target {f.target} is not source {g.source}")
    images = {e: g.apply(img) for e, img in f.images.items()}
    steps = None
    if f.steps is not None and g.steps is not None:
        steps = f.steps + g.steps
    return Morphism(f.source, g.target, f.degree + g.degree, images, steps)


def compose_all(*morphisms: Morphism) -> Morphism:
    """compose_all(h, g, f) = h ∘ g ∘ f."""
    result = morphisms[-1]
    for g in reversed(morphisms[:-1]):
        result = compose(g, result)
    return result
