"""
Intersection-scalar determinants over a region and the set of bad primes.
"""

import logging
import multiprocessing as mp
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from sympy import factorint

from algebra.scalars import DyadicRing
from coxeter.datum import CoxeterDatum, Word
from coxeter.group import Element
from models.data_models import BadPrimeReport, DeterminantEntry
from models.errors import ConfigError, NonUnitError, TheoryViolation
from projectors.context import SoergelContext
from projectors.favorite import FavoriteProjectorBuilder
from utils.cache import ResultCache, cache_key

logger = logging.getLogger(__name__)


def odd_primes(value) -> Tuple[List[int], bool]:
    """
    Odd primes of a rational determinant.

    Returns:
        (sorted odd primes of numerator and denominator, True if the value is in ZZ[1/2])
    """
    value = Fraction(value)
    primes = set()
    if value.numerator:
        primes.update(factorint(abs(value.numerator)))
    odd_denominator = set(factorint(value.denominator)) - {2}
    primes.update(odd_denominator)
    primes.discard(2)
    return sorted(int(p) for p in primes), not odd_denominator


def d_determinant(builder: FavoriteProjectorBuilder, x: Element, y: Element):
    """
    det of the intersection scalars of the leaves selected for y while building p_x.

    y = x and y outside the split summands give the empty matrix, determinant 1.
    Over QQ the 2-power denominator is cleared and the result is an integer.
    """
    if not builder.group.bruhat_leq(y, x):
        raise ConfigError(f"{builder.group.format(y)} is not below {builder.group.format(x)}")
    det = builder.scalars.one
    if y != x:
        projector = builder.favorite_projector(builder.context.words.canonical_word(x))
        for data in projector.summands:
            if data.z == y:
                det = data.det
    if builder.scalars.characteristic != 0:
        return det
    try:
        return DyadicRing().clear_denominator(det)
    except NonUnitError:
        raise TheoryViolation(
            "Determinant of intersection scalars is not in ZZ[1/2]",
            {'x': builder.group.format(x), 'y': builder.group.format(y), 'det': builder.scalars.to_text(det)},
        )


def element_entries(builder: FavoriteProjectorBuilder, word: Word) -> Dict:
    """Serializable determinant entries of one element of the region."""
    datum = builder.datum
    projector = builder.favorite_projector(word)
    x_text = datum.format_word(word)
    entries, violations = [], []
    agree = True
    for data in projector.summands:
        primes, dyadic = odd_primes(data.det)
        det_text = builder.scalars.to_text(data.det)
        entries.append({'x': x_text, 'z': datum.format_word(data.z_word), 'det': det_text, 'primes': primes})
        if not dyadic:
            violations.append({'x': x_text, 'z': datum.format_word(data.z_word), 'det': det_text})
        if data.strategies_agree is False:
            agree = False
    return {'x': x_text, 'entries': entries, 'violations': violations, 'strategies_agree': agree}


_WORKER: Dict[str, FavoriteProjectorBuilder] = {}


def _worker_init(datum: CoxeterDatum, reverse_selection: bool):
    context = SoergelContext.build(datum)
    _WORKER['builder'] = FavoriteProjectorBuilder(context, reverse_selection)


def _worker_run(word: Word) -> Dict:
    return element_entries(_WORKER['builder'], word)


class BadPrimeAnalyser:
    """Sweep a region with favorite projectors and collect the bad primes"""

    def __init__(self, context: SoergelContext, jobs: int = 1, cache: Optional[ResultCache] = None,
                 check_selection_order: bool = True, reverse_selection: bool = False):
        if context.characteristic != 0:
            raise ConfigError("Bad primes are computed from char-0 projectors; use --char 0")
        self.context = context
        self.datum = context.datum
        self.jobs = jobs
        self.cache = cache or ResultCache()
        self.check_selection_order = check_selection_order
        # Order of the reported sweep; the cross-check runs the other one
        self.reverse_selection = reverse_selection
        self._builders: Dict[bool, FavoriteProjectorBuilder] = {}

    def builder(self, reverse_selection: bool = False) -> FavoriteProjectorBuilder:
        if reverse_selection not in self._builders:
            self._builders[reverse_selection] = FavoriteProjectorBuilder(self.context, reverse_selection)
        return self._builders[reverse_selection]

    def _key(self, word: Word, reverse_selection: bool) -> str:
        return cache_key('badprimes_entry', {'word': list(word), 'reverse': reverse_selection}, self.datum.key)

    def sweep(self, region: List[Element], reverse_selection: bool = False) -> List[Dict]:
        """Entries of every element in region order; cached per element."""
        words = [self.context.words.canonical_word(x) for x in region]
        results: Dict[Word, Dict] = {}
        missing = []
        for word in words:
            cached = self.cache.get(self._key(word, reverse_selection))
            if cached is not None:
                results[word] = cached
            else:
                missing.append(word)
        logger.info("Bad-prime sweep: %d cached, %d to compute", len(words) - len(missing), len(missing))

        if self.jobs > 1 and len(missing) > 1:
            with mp.Pool(self.jobs, initializer=_worker_init, initargs=(self.datum, reverse_selection)) as pool:
                computed = pool.map(_worker_run, missing)
        else:
            builder = self.builder(reverse_selection)
            computed = [element_entries(builder, word) for word in missing]
        for word, value in zip(missing, computed):
            self.cache.put(self._key(word, reverse_selection), value)
            results[word] = value
        return [results[word] for word in words]

    def analyse(self, region: List[Element], region_top: str) -> BadPrimeReport:
        """
        Determinants and bad primes of a region.

        Args:
            region: Bruhat ideal to sweep
            region_top: Label of the region for the report

        Returns:
            BadPrimeReport with D = odd primes of all determinants
        """
        print(f"Sweeping {len(region)} elements of {self.datum.label}...")
        sweep = self.sweep(region, self.reverse_selection)
        entries = [DeterminantEntry(**e) for item in sweep for e in item['entries']]
        primes = sorted({p for e in entries for p in e.primes})

        words = self.context.words
        fallbacks = [self.datum.format_word(x.word) for x in region if words.is_palindrome_fallback(x)]
        flags = {
            'excluded_primes': [2],
            'selection_order': 'reverse' if self.reverse_selection else 'forward',
            'palindrome_fallbacks': fallbacks,
            'integrality_violations': [v for item in sweep for v in item['violations']],
            'strategies_agree': all(item['strategies_agree'] for item in sweep),
        }
        if self.check_selection_order:
            other_sweep = self.sweep(region, not self.reverse_selection)
            other_primes = sorted({p for item in other_sweep for e in item['entries'] for p in e['primes']})
            flags['selection_order_invariant'] = other_primes == primes
            if other_primes != primes:
                logger.warning("Bad primes depend on the leaf selection order: %s vs %s", primes, other_primes)
        for v in flags['integrality_violations']:
            logger.warning("Determinant %s at (%s, %s) is not in ZZ[1/2]", v['det'], v['x'], v['z'])

        print(f"  - {len(entries)} determinants, D = {primes}")
        return BadPrimeReport(
            datum=self.datum.label,
            region_top=region_top,
            characteristic=0,
            entries=entries,
            primes=primes,
            flags=flags,
        )
