"""
Normal forms and the generating morphisms of Bott-Samelson bimodules.

A raw tensor f_0 ⊗ f_1 ⊗ ... ⊗ f_n is rewritten right to left: the content g of
slot k splits as g = g⁺ + x_s·∂_s(g) with s = s_k and both parts s-invariant, the
invariant factors slide into slot k-1, and slot k keeps 1 or x_s.
"""

import logging
import threading
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.linear import SparseSystem
from algebra.polynomial import GradedPoly, act, demazure_split
from bimodules.morphisms import GeneratorStep, Morphism, compose
from bimodules.objects import Bits, BSElement, BSObject, TwistedModule
from coxeter.datum import Word
from coxeter.group import CoxeterGroup, Element
from coxeter.words import alternating
from models.errors import (
    MissingDecompositionError,
    PreconditionError,
    ShapeMismatchError,
    TheoryViolation,
)

logger = logging.getLogger(__name__)


class BimoduleCalculus:
    """
    Bott-Samelson calculus over one datum and one scalar ring.

    Generator and braid morphisms are memoized; the memo accepts concurrent
    reads and serializes writes.
    """

    def __init__(self, group: CoxeterGroup, scalars=None):
        self.group = group
        self.datum = group.datum
        self.ring = self.datum.polynomial_ring(scalars)
        self.scalars = self.ring.scalars
        self._reflections = [group.generator(s) for s in range(group.rank)]
        self._roots = [self.ring.gen(s) for s in range(group.rank)]
        self._steps: Dict[GeneratorStep, Morphism] = {}
        self._braids: Dict[Tuple[int, int], Morphism] = {}
        self._lock = threading.Lock()

    # Objects and elements
    def obj(self, word: Sequence[int]) -> BSObject:
        return BSObject(tuple(word))

    def twisted(self, x: Element) -> TwistedModule:
        return TwistedModule(x)

    def element(self, obj, coeffs: Dict[Bits, GradedPoly]) -> BSElement:
        return BSElement(obj, self.ring, coeffs)

    def basis_element(self, obj, e: Bits) -> BSElement:
        return BSElement(obj, self.ring, {tuple(e): self.ring.one()})

    def one_tensor(self, obj) -> BSElement:
        """1 ⊗ 1 ⊗ ... ⊗ 1, the element of minimal degree."""
        return self.basis_element(obj, (0,) * obj.length)

    def root_power(self, s: int, exponent: int) -> GradedPoly:
        return self._roots[s] if exponent else self.ring.one()

    def _poly(self, value) -> GradedPoly:
        return value if isinstance(value, GradedPoly) else self.ring.constant(value)

    # Normal form
    def split(self, s: int, g: GradedPoly) -> Tuple[GradedPoly, GradedPoly]:
        """(g⁺, ∂_s g) with g = g⁺ + x_s·∂_s g."""
        if g.is_constant():
            return g, self.ring.zero()
        if g == self._roots[s]:
            return self.ring.zero(), self.ring.one()
        return demazure_split(self._reflections[s], g)

    def normal_form(self, obj, slots: Sequence) -> BSElement:
        """
        Express a pure tensor on the basis β^e.

        Args:
            obj: Target Bott-Samelson (or twisted) module
            slots: n + 1 polynomials f_0, ..., f_n

        Returns:
            The element f_0 ⊗ ... ⊗ f_n in normal form
        """
        word = obj.word
        if len(slots) != len(word) + 1:
            raise ShapeMismatchError(f"{len(slots)} slots for a word of length {len(word)}")
        coeffs: Dict[Bits, GradedPoly] = {}
        pending: List[Tuple[Tuple[GradedPoly, ...], Bits]] = [(tuple(self._poly(v) for v in slots), ())]
        while pending:
            head, tail = pending.pop()
            k = len(head) - 1
            if k == 0:
                coeffs[tail] = coeffs[tail] + head[0] if tail in coeffs else head[0]
                continue
            if not head[k] or not head[k - 1]:
                continue
            plus, minus = self.split(word[k - 1], head[k])
            for bit, part in ((0, plus), (1, minus)):
                if part:
                    pending.append((head[:k - 1] + (head[k - 1] * part,), (bit,) + tail))
        return BSElement(obj, self.ring, coeffs)

    def right_mult(self, m: BSElement, r: GradedPoly) -> BSElement:
        """m·r: multiply the last slot by r and renormalize."""
        obj = m.obj
        if obj.is_twisted:
            twisted_r = act(obj.twist, r)
            return BSElement(obj, self.ring, {e: c * twisted_r for e, c in m.coeffs.items()})
        result = BSElement(obj, self.ring)
        for e, c in m.coeffs.items():
            slots = [c] + [self.root_power(s, bit) for s, bit in zip(obj.word, e)]
            slots[-1] = slots[-1] * r
            result = result + self.normal_form(obj, slots)
        return result

    # Checks
    def check_right_linearity(self, f: Morphism) -> List[Tuple[Bits, int]]:
        """Pairs (basis index, variable) where f(β^e·x_k) != f(β^e)·x_k."""
        failures = []
        for e in f.source.basis():
            b = self.basis_element(f.source, e)
            for k, x in enumerate(self.ring.gens()):
                if f.apply(self.right_mult(b, x)) != self.right_mult(f.images[e], x):
                    failures.append((e, k))
        return failures

    def check_homogeneous(self, f: Morphism) -> bool:
        for e, img in f.images.items():
            expected = f.source.degree_of(e) + f.degree
            if any(d != expected for d in img.degrees()):
                return False
        return True

    def _certify(self, f: Morphism, name: str) -> Morphism:
        failures = self.check_right_linearity(f)
        if failures:
            raise TheoryViolation(
                f"{name} is not right-linear",
                {'datum': self.datum.label, 'failures': failures[:5]},
            )
        return f

    # Identity and zero
    def identity(self, obj) -> Morphism:
        return Morphism.identity(obj, self.ring)

    def zero(self, source, target, degree: int = 0) -> Morphism:
        return Morphism.zero(source, target, self.ring, degree)

    # Generators
    def gen_m(self, s: int) -> Morphism:
        """m_s: B_s → R, p ⊗ q ↦ pq."""
        source, target = self.obj((s,)), self.obj(())
        images = {
            (0,): self.element(target, {(): self.ring.one()}),
            (1,): self.element(target, {(): self._roots[s]}),
        }
        f = Morphism(source, target, 1, images, (GeneratorStep('m', (s,)),))
        return self._certify(f, f"m_s{s + 1}")

    def gen_j(self, s: int) -> Morphism:
        """j_s: B_sB_s → B_s, p ⊗ q ⊗ r ↦ p ∂_s(q) ⊗ r."""
        source, target = self.obj((s, s)), self.obj((s,))
        images = {}
        for e1, e2 in source.basis():
            coeffs = {(e2,): self.ring.one()} if e1 else {}
            images[(e1, e2)] = self.element(target, coeffs)
        f = Morphism(source, target, -1, images, (GeneratorStep('j', (s,)),))
        return self._certify(f, f"j_s{s + 1}")

    def gen_eps(self, s: int) -> Morphism:
        """ε_s: R → B_s, 1 ↦ x_s ⊗ 1 + 1 ⊗ x_s."""
        source, target = self.obj(()), self.obj((s,))
        images = {(): self.element(target, {(0,): self._roots[s], (1,): self.ring.one()})}
        f = Morphism(source, target, 1, images, (GeneratorStep('eps', (s,)),))
        return self._certify(f, f"eps_s{s + 1}")

    def gen_p(self, s: int) -> Morphism:
        """p_s: B_s → B_sB_s, a ⊗ b ↦ a ⊗ 1 ⊗ b."""
        source, target = self.obj((s,)), self.obj((s, s))
        images = {(e,): self.element(target, {(0, e): self.ring.one()}) for e in (0, 1)}
        f = Morphism(source, target, -1, images, (GeneratorStep('p', (s,)),))
        return self._certify(f, f"p_s{s + 1}")

    def braid_morphism(self, s: int, r: int) -> Morphism:
        """
        The degree 0 map X_sr → X_rs fixing 1 ⊗ ... ⊗ 1.

        Solved as a linear system: the coefficient of β^{e'} in the image of β^e
        is an unknown homogeneous polynomial of exponent |e| - |e'|, subject to
        right-linearity against every variable.
        """
        key = (s, r)
        cached = self._braids.get(key)
        if cached is not None:
            return cached
        m = self.datum.m(s, r)
        if s == r or m is None:
            raise PreconditionError(f"No braid relation between s{s + 1} and s{r + 1}")
        source = self.obj(alternating(s, r, m))
        target = self.obj(alternating(r, s, m))
        f = self._solve_braid(source, target)
        f.steps = (GeneratorStep('f', source.word),)
        self._certify(f, f"f_s{s + 1}s{r + 1}")
        with self._lock:
            self._braids[key] = f
        logger.debug("Solved braid morphism for (s%d, s%d) in %s", s + 1, r + 1, self.datum.label)
        return f

    def _solve_braid(self, source: BSObject, target: BSObject) -> Morphism:
        source_basis, target_basis = source.basis(), target.basis()
        unknowns: Dict[Tuple[Bits, Bits, tuple], int] = {}
        by_source: Dict[Bits, List[Tuple[Bits, tuple, int]]] = {e: [] for e in source_basis}
        for e in source_basis:
            for e2 in target_basis:
                gap = sum(e) - sum(e2)
                if gap < 0:
                    continue
                for mono in self.ring.monomials_of_degree(gap):
                    u = len(unknowns)
                    unknowns[(e, e2, mono)] = u
                    by_source[e].append((e2, mono, u))

        # Pre-computed normal forms of β^e·x_k in source and target.
        gens = self.ring.gens()
        source_products = {
            (e, k): self.right_mult(self.basis_element(source, e), x)
            for e in source_basis for k, x in enumerate(gens)
        }
        target_products = {
            (e2, k): self.right_mult(self.basis_element(target, e2), x)
            for e2 in target_basis for k, x in enumerate(gens)
        }

        system = SparseSystem(self.scalars)

        def shifted(mono, extra):
            return tuple(a + b for a, b in zip(mono, extra))

        for e in source_basis:
            for k in range(len(gens)):
                rows: Dict[Tuple[Bits, tuple], Dict[int, object]] = {}

                def add(row_key, u, value):
                    row = rows.setdefault(row_key, {})
                    row[u] = row.get(u, self.scalars.zero) + value

                # f(β^e·x_k) = Σ_{e''} a_{e''} f(β^{e''})
                for e3, a in source_products[(e, k)].coeffs.items():
                    for ue2, mono, u in by_source[e3]:
                        for am, av in a.terms.items():
                            add((ue2, shifted(mono, am)), u, av)
                # f(β^e)·x_k = Σ_{e'} c_{e,e'} (β^{e'}·x_k)
                for ue2, mono, u in by_source[e]:
                    for e4, b in target_products[(ue2, k)].coeffs.items():
                        for bm, bv in b.terms.items():
                            add((e4, shifted(mono, bm)), u, -bv)
                for row in rows.values():
                    system.add_equation(row, 0)

        zero_bits = (0,) * source.length
        zero_mono = (0,) * self.ring.nvars
        system.add_equation({unknowns[(zero_bits, zero_bits, zero_mono)]: self.scalars.one}, 1)
        try:
            values = system.unique_solution(len(unknowns))
        except PreconditionError as e:
            raise TheoryViolation(
                "Braid morphism is not unique; realization invalid for this pair",
                {'datum': self.datum.label, 'source': self.datum.format_word(source.word), 'detail': str(e)},
            )
        logger.debug("Braid system: %d unknowns, %d equations", len(unknowns), system.equations_seen)

        images = {}
        for e in source_basis:
            coeffs: Dict[Bits, Dict[tuple, object]] = {}
            for ue2, mono, u in by_source[e]:
                if values[u]:
                    coeffs.setdefault(ue2, {})[mono] = values[u]
            images[e] = self.element(target, {
                e2: GradedPoly(self.ring, terms) for e2, terms in coeffs.items()
            })
        return Morphism(source, target, 0, images, None)

    # Tensoring and generator words
    def tensor3(self, left: Word, f: Morphism, right: Word) -> Morphism:
        """id_left ⊗ f ⊗ id_right."""
        left, right = tuple(left), tuple(right)
        if not left and not right:
            return f
        if f.source.is_twisted or f.target.is_twisted:
            raise ShapeMismatchError("Only maps between Bott-Samelson bimodules can be tensored")
        source = self.obj(left + f.source.word + right)
        target = self.obj(left + f.target.word + right)
        a, b = len(left), f.source.length
        images = {}
        for e in source.basis():
            e_left, e_mid, e_right = e[:a], e[a:a + b], e[a + b:]
            image = f.images[e_mid]
            if not left:
                images[e] = self.element(target, {e2 + e_right: c for e2, c in image.coeffs.items()})
                continue
            frame = [self.ring.one()] + [self.root_power(s, bit) for s, bit in zip(left, e_left)]
            tail = [self.root_power(s, bit) for s, bit in zip(right, e_right)]
            total = BSElement(target, self.ring)
            for e2, c in image.coeffs.items():
                # the left coefficient crosses into the last slot of the left frame
                slots = frame[:-1] + [frame[-1] * c]
                slots += [self.root_power(s, bit) for s, bit in zip(f.target.word, e2)] + tail
                total = total + self.normal_form(target, slots)
            images[e] = total
        steps = None
        if f.steps is not None:
            steps = tuple(replace(st, left=left + st.left, right=st.right + right) for st in f.steps)
        return Morphism(source, target, f.degree, images, steps)

    def generator(self, kind: str, letters: Word) -> Morphism:
        s = letters[0]
        if kind == 'm':
            return self.gen_m(s)
        if kind == 'j':
            return self.gen_j(s)
        if kind == 'eps':
            return self.gen_eps(s)
        if kind == 'p':
            return self.gen_p(s)
        return self.braid_morphism(letters[0], letters[1])

    def step_morphism(self, step: GeneratorStep) -> Morphism:
        cached = self._steps.get(step)
        if cached is not None:
            return cached
        f = self.tensor3(step.left, self.generator(step.kind, step.letters), step.right)
        with self._lock:
            self._steps[step] = f
        return f

    def from_steps(self, word: Word, steps: Sequence[GeneratorStep]) -> Morphism:
        """Compose generator steps starting from B_word."""
        f = self.identity(self.obj(word))
        for step in steps:
            if step.source_word != f.target.word:
                raise ShapeMismatchError(
                    f"Step {step.to_text(self.datum)} does not start at {self.datum.format_word(f.target.word)}"
                )
            f = compose(self.step_morphism(step), f)
        return f

    def adjoint(self, f: Morphism) -> Morphism:
        """Reverse the generator word and swap m/eps, j/p and f_sr/f_rs."""
        if f.steps is None or f.source.is_twisted or f.target.is_twisted:
            raise MissingDecompositionError("Morphism has no generator decomposition")
        result = self.from_steps(f.target.word, [step.adjoint() for step in reversed(f.steps)])
        if result.degree != f.degree:
            raise TheoryViolation("Adjoint changed the degree", {'morphism': f.describe(self.datum)})
        return result

    # Twisted modules
    def beta(self, word: Word) -> Morphism:
        """β: B_x → R_x, p_0 ⊗ ... ⊗ p_n ↦ p_0·s_1(p_1)·(s_1s_2)(p_2)···1_x."""
        word = tuple(word)
        x = self.group.element_of(word)
        if x.length != len(word):
            raise PreconditionError(f"{self.datum.format_word(word)} is not reduced")
        source, target = self.obj(word), self.twisted(x)
        images = {}
        for e in source.basis():
            value = self.ring.one()
            prefix = self.group.identity
            for s, bit in zip(word, e):
                if bit:
                    value = value * (-act(prefix, self._roots[s]))
                prefix = self.group.right_multiply(prefix, s)
            images[e] = self.element(target, {(): value})
        return Morphism(source, target, 0, images, None)

    # Adjunction
    def adjunction_scalars(self, s: int) -> Dict[str, object]:
        """
        Scalars of the two zig-zag composites built from cap = m∘j and cup = p∘ε.

        Both composites B_s → B_s must be scalar multiples of the identity.
        """
        cap = compose(self.gen_m(s), self.gen_j(s))
        cup = compose(self.gen_p(s), self.gen_eps(s))
        ident = self.identity(self.obj((s,)))
        result = {}
        for name, zig in (
            ('left', compose(self.tensor3((), cap, (s,)), self.tensor3((s,), cup, ()))),
            ('right', compose(self.tensor3((s,), cap, ()), self.tensor3((), cup, (s,)))),
        ):
            scalar = zig.images[(0,)].coefficient((0,)).constant_term()
            if zig != ident.scale(scalar):
                raise TheoryViolation("Zig-zag composite is not scalar", {'s': s + 1, 'side': name})
            result[name] = scalar
        return result
