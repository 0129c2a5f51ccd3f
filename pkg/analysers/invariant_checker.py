"""
The verify suite: structural invariants checked exactly on a region.
"""

import logging
from itertools import combinations, product
from typing import Callable, List, Optional

from algebra.linear import identity, matmul
from bimodules.morphisms import compose
from coxeter.datum import Word
from coxeter.group import Element
from coxeter.region import validate_realization
from hecke.laurent import LaurentInt
from leaves.double_leaves import degree_polynomial, double_leaves, p_double_leaves, shape_degree_polynomial
from models.data_models import NotLiftable, VerificationReport
from models.errors import SoergelError
from projectors.context import SoergelContext
from projectors.favorite import FavoriteProjectorBuilder, Projector
from projectors.reduction import reduce_mod_p

logger = logging.getLogger(__name__)


class InvariantChecker:
    """Runs every invariant check and records one CheckResult per subject"""

    def __init__(self, context: SoergelContext, pair_max_length: int = 3,
                 bruteforce_max_length: Optional[int] = None):
        self.context = context
        self.datum = context.datum
        self.group = context.group
        self.hecke = context.hecke
        self.builder = FavoriteProjectorBuilder(context)
        self.pair_max_length = pair_max_length
        self.bruteforce_max_length = bruteforce_max_length

    def _run(self, report: VerificationReport, check: str, subject: str, test: Callable[[], object],
             conditional: bool = False):
        """Record the outcome of test(): a bool, or a (passed, detail) pair."""
        try:
            outcome = test()
        except SoergelError as e:
            logger.warning("%s failed on %s: %s", check, subject, e)
            report.add(check, subject, False, str(e), conditional)
            return
        if isinstance(outcome, tuple):
            passed, detail = outcome
        else:
            passed, detail = bool(outcome), ''
        if not passed:
            logger.warning("%s failed on %s: %s", check, subject, detail)
        report.add(check, subject, passed, detail, conditional)

    def verify(self, region: List[Element], primes: Optional[List[int]] = None) -> VerificationReport:
        """
        Run the suite on a region.

        Args:
            region: Bruhat ideal of the group
            primes: Odd primes for the mod-p reduction checks

        Returns:
            VerificationReport with one result per (check, subject)
        """
        report = VerificationReport(self.datum.label)
        words = [self.context.words.canonical_word(x) for x in region]

        print("Step 1: Hecke algebra checks")
        self.check_kl(report, region)
        if not self.datum.finite:
            self._run(report, 'realization', self.datum.label, lambda: self._realization(region))

        print("Step 2: Generators")
        self.check_generators(report)

        print("Step 3: Light and double leaves")
        self.check_leaves(report, words)

        print("Step 4: Favorite projectors")
        projectors = self.check_projectors(report, words)

        if primes:
            print(f"Step 5: Reduction modulo {primes}")
            self.check_mod_p(report, projectors, primes)

        print(f"  - {len(report.results)} checks, {sum(not r.passed for r in report.results)} failures")
        return report

    # Hecke algebra
    def _realization(self, region):
        result = validate_realization(self.group, region)
        return result.passed, f"{len(result.failures)} failing pairs"

    def check_kl(self, report: VerificationReport, region: List[Element]):
        for x in region:
            if self.bruteforce_max_length is not None and x.length > self.bruteforce_max_length:
                continue
            self._run(
                report, 'kl-bruteforce', self.group.format(x),
                lambda x=x: self.hecke.kl_element(x) == self.hecke.kl_element_bruteforce(x),
            )

    # Generators
    def check_generators(self, report: VerificationReport):
        calculus = self.context.calculus
        for s, r in combinations(range(self.group.rank), 2):
            if self.datum.m(s, r) is None:
                continue
            for a, b in ((s, r), (r, s)):
                subject = f"s{a + 1},s{b + 1}"
                self._run(
                    report, 'braid-right-linearity', subject,
                    lambda a=a, b=b: not calculus.check_right_linearity(calculus.braid_morphism(a, b)),
                )
        for s in range(self.group.rank):
            self._run(report, 'adjunction', f"s{s + 1}", lambda s=s: self._adjunction(s))

    def _adjunction(self, s: int):
        values = self.context.calculus.adjunction_scalars(s)
        scalars = self.context.calculus.scalars
        detail = ', '.join(f"{k}={scalars.to_text(v)}" for k, v in values.items())
        return all(scalars.is_unit(v) for v in values.values()), detail

    # Leaves
    def check_leaves(self, report: VerificationReport, words: List[Word]):
        leaves = self.context.leaves
        fmt = self.datum.format_word
        for word in words:
            self._run(report, 'leaf-targets', fmt(word), lambda w=word: not leaves.distinct_targets_violations(w))
            self._run(report, 'leaf-counts', fmt(word), lambda w=word: self._leaf_counts(w))

        short = [w for w in words if len(w) <= self.pair_max_length]
        for upper, lower in product(short, repeat=2):
            subject = f"{fmt(upper)} -> {fmt(lower)}"
            self._run(report, 'degree-certificate', subject, lambda u=upper, l=lower: self._degrees(u, l))
            self._run(report, 'unitriangularity', subject, lambda u=upper, l=lower: self._unitriangular(u, l))
            self._run(report, 'p-degree-certificate', subject, lambda u=upper, l=lower: self._p_degrees(u, l))

    def _leaf_counts(self, word: Word):
        counts = self.context.leaves.graded_counts(word)
        expected = self.hecke.C_word(word)
        for x in set(counts) | set(expected.support()):
            found = LaurentInt(counts.get(x, {}))
            if found != self.hecke.tau(x, expected):
                return False, f"target {self.group.format(x)}: {found.to_text()}"
        return True

    def _degrees(self, upper: Word, lower: Word):
        found = shape_degree_polynomial(self.context.leaves, upper, lower)
        expected = self.hecke.dlb_degree_oracle(upper, lower)
        return found == expected, f"{found.to_text()} vs {expected.to_text()}"

    def _projector_morphism(self, word: Word):
        return self.builder.favorite_projector(word).morphism

    def _p_degrees(self, upper: Word, lower: Word):
        dleaves = p_double_leaves(self.context.leaves, upper, lower, self._projector_morphism)
        found = degree_polynomial(dleaves)
        expected = self.hecke.dlb_degree_oracle(upper, lower)
        return found == expected, f"{found.to_text()} vs {expected.to_text()}"

    def _unitriangular(self, upper: Word, lower: Word):
        failures = self.context.pairing.unitriangularity_failures(
            double_leaves(self.context.leaves, upper, lower)
        )
        return not failures, f"{len(failures)} entries off"

    # Projectors
    def check_projectors(self, report: VerificationReport, words: List[Word]) -> List[Projector]:
        projectors = []
        fmt = self.datum.format_word
        for word in words:
            try:
                projector = self.builder.favorite_projector(word)
            except SoergelError as e:
                report.add('projector-idempotent', fmt(word), False, str(e))
                continue
            projectors.append(projector)
            p = projector.morphism
            subject = fmt(word)
            self._run(report, 'projector-idempotent', subject, lambda p=p: compose(p, p) == p)
            self._run(report, 'projector-absorption', subject, lambda pr=projector: self._absorption(pr))
            self._run(report, 'projector-orthogonality', subject, lambda pr=projector: self._orthogonality(pr))
            for data in projector.summands:
                z_subject = f"{subject} / {fmt(data.z_word)}"
                self._run(
                    report, 'lambda-eta', z_subject,
                    lambda d=data: self._lambda_eta(d),
                )
                self._run(
                    report, 'strategy-agreement', z_subject,
                    lambda d=data: d.strategies_agree is not False,
                    conditional=data.simplified is None,
                )
            self._run(
                report, 'character', subject,
                lambda pr=projector: self._character(pr),
            )
        return projectors

    def _absorption(self, projector: Projector):
        p, frame = projector.morphism, projector.frame
        if frame is None:
            return True
        if compose(p, frame) != p or compose(frame, p) != p:
            return False, "p∘P or P∘p differs from p"
        for data in projector.summands:
            for piece in data.pieces:
                if not compose(p, piece).is_zero():
                    return False, f"p∘p_z nonzero for z = {self.datum.format_word(data.z_word)}"
        return True

    def _orthogonality(self, projector: Projector):
        for data in projector.summands:
            for i, a in enumerate(data.pieces):
                for j, b in enumerate(data.pieces):
                    expected = a if i == j else None
                    composite = compose(a, b)
                    if (expected is None and not composite.is_zero()) or (expected is not None and composite != a):
                        return False, f"z = {self.datum.format_word(data.z_word)}, i = {i}, j = {j}"
        return True

    def _lambda_eta(self, data):
        scalars = self.context.calculus.scalars
        return matmul(data.lam, data.eta, scalars) == identity(len(data.lam), scalars)

    def _character(self, projector: Projector):
        found = self.context.characters.character(projector.morphism)
        expected = self.hecke.kl_element(projector.target)
        fmt = self.datum.format_word
        return found == expected, found.to_text(fmt)

    # Reduction
    def check_mod_p(self, report: VerificationReport, projectors: List[Projector], primes: List[int]):
        for prime in primes:
            contextp = self.context.with_characteristic(prime)
            for projector in projectors:
                subject = f"{self.datum.format_word(projector.word)} mod {prime}"
                self._run(
                    report, 'mod-p', subject,
                    lambda pr=projector, q=prime, c=contextp: self._reduce(pr, q, c),
                )

    def _reduce(self, projector: Projector, prime: int, contextp: SoergelContext):
        result = reduce_mod_p(projector, prime, self.context, contextp)
        if isinstance(result, NotLiftable):
            return False, f"not liftable: {len(result.offending)} coefficients"
        return True
