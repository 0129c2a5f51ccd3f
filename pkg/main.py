#!/usr/bin/env python3
"""
Soergel Engine - Main Workflow
Exact computations with Soergel bimodules: KL basis, light leaves, favorite
projectors, characters, bad primes and the invariant suite
"""

import argparse
import contextlib
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from config import (
    CACHE_DIR,
    COMMANDS,
    DEFAULT_JOBS,
    DEFAULT_REGION_MAX_LENGTH,
    EXIT_OK,
    EXIT_THEORY_VIOLATION,
    EXIT_USAGE,
    LOG_FORMAT,
    LOG_LEVEL,
    NAMED_TYPES_HELP,
    OUTPUT_FORMATS,
)
from analysers.bad_prime_analyser import BadPrimeAnalyser
from analysers.invariant_checker import InvariantChecker
from coxeter.datum import CoxeterDatum, Word
from coxeter.group import Element
from coxeter.region import w_circle
from models.data_models import JobConfig, NotLiftable
from models.errors import ConfigError, PreconditionError, TheoryViolation
from projectors.context import SoergelContext
from projectors.favorite import FavoriteProjectorBuilder
from projectors.reduction import dlb_expansion, reduce_mod_p
from utils.cache import ResultCache, cache_key
from utils.report_writer import write_report

logger = logging.getLogger(__name__)

Report = Tuple[Dict, List[Dict]]


class SoergelEngine:
    """Main workflow orchestrator"""

    def __init__(self, config: JobConfig):
        self.config = config
        if config.cartan_file:
            self.datum = CoxeterDatum.from_file(config.cartan_file)
        elif config.type_name:
            self.datum = CoxeterDatum.from_type(config.type_name)
        else:
            raise ConfigError("Either --type or --cartan-file is required")
        config.validate(self.datum.finite)

        # Projectors are built over QQ; F_p work goes through reduction
        self.context = SoergelContext.build(self.datum)
        self.group = self.context.group
        self.builder = FavoriteProjectorBuilder(self.context, config.reverse_selection)
        self._contextp: Optional[SoergelContext] = None

        cache_dir = config.cache_dir or (str(CACHE_DIR) if config.command == 'badprimes' else None)
        if cache_dir:
            Path(cache_dir).mkdir(parents=True, exist_ok=True)
        self.cache = ResultCache(cache_dir)

    @property
    def contextp(self) -> SoergelContext:
        if self._contextp is None:
            self._contextp = self.context.with_characteristic(self.config.characteristic)
        return self._contextp

    def run(self) -> Tuple[int, str]:
        """
        Run the configured command

        Returns:
            Exit status and the report text
        """
        handlers = {
            'kl': self.run_kl,
            'leaves': self.run_leaves,
            'projector': self.run_projector,
            'character': self.run_character,
            'badprimes': self.run_badprimes,
            'verify': self.run_verify,
        }
        print(f"\n{'='*60}")
        print(f"Soergel Engine: {self.config.command}")
        print(f"Datum: {self.datum.label} (char {self.config.characteristic})")
        print(f"{'='*60}\n")

        payload, rows = handlers[self.config.command]()
        text = write_report(self.config.command, payload, rows, self.config.output_format, self.config.out)
        status = EXIT_OK
        if self.config.command == 'verify' and not payload['passed']:
            status = EXIT_THEORY_VIOLATION
        return status, text

    # Inputs
    def region(self) -> List[Element]:
        top = None
        if self.config.top:
            top = self.group.element_of(self.datum.parse_word(self.config.top))
        region = w_circle(self.group, top, self.config.region_max_length)
        print(f"  - Region of {len(region)} elements")
        return region

    @property
    def region_label(self) -> str:
        if self.config.top:
            return self.config.top
        if self.config.region_max_length is not None:
            return f"l<={self.config.region_max_length}"
        return 'w0'

    def words(self) -> List[Word]:
        """Words from the command line, or the canonical words of the region."""
        if self.config.words:
            return [self.datum.parse_word(w) for w in self.config.words]
        return [self.context.words.canonical_word(x) for x in self.region()]

    # Commands
    def run_kl(self) -> Report:
        print("Step 1: Building the region...")
        region = self.region()
        print("Step 2: Computing the Kazhdan-Lusztig basis...")
        key = cache_key('kl_table', {'region': [list(x.word) for x in region]}, self.datum.key)
        table = self.cache.get_or_compute(key, lambda: self._kl_table(region))
        fmt = self.datum.format_word
        rows = [
            {'x': fmt(tuple(e['x'])), 'y': fmt(tuple(e['y'])), 'polynomial': e['polynomial']}
            for e in table
        ]
        payload = {
            'datum': self.datum.label,
            'region_top': self.region_label,
            'entries': [dict(r, q_polynomial=e['q_polynomial']) for r, e in zip(rows, table)],
        }
        return payload, rows

    def _kl_table(self, region: List[Element]) -> List[Dict]:
        hecke = self.context.hecke
        table = []
        for x in region:
            c = hecke.kl_element(x)
            for y in sorted(c.support(), key=lambda y: y.sort_key()):
                table.append({
                    'x': list(x.word),
                    'y': list(y.word),
                    'polynomial': c.coefficient(y).to_text(),
                    'q_polynomial': {str(k): v for k, v in hecke.kl_polynomial(y, x).items()},
                })
        return table

    def run_leaves(self) -> Report:
        print("Step 1: Enumerating light leaves...")
        rows = []
        for word in self.words():
            leaves = self.context.leaves.leaf_shapes(word)
            rows.extend(leaf.to_dict(self.datum) for leaf in leaves)
            print(f"  - {self.datum.format_word(word)}: {len(leaves)} leaves")
        return {'datum': self.datum.label, 'leaves': rows}, rows

    def _projector(self, word: Word):
        """The projector of a word, reduced mod p when a prime is configured."""
        projector = self.builder.favorite_projector(word)
        if self.config.characteristic == 0:
            return projector
        return reduce_mod_p(projector, self.config.characteristic, self.context, self.contextp)

    def run_projector(self) -> Report:
        print("Step 1: Building favorite projectors...")
        fmt = self.datum.format_word
        documents, rows = [], []
        for word in self.words():
            projector = self.builder.favorite_projector(word)
            expansion = dlb_expansion(projector, self.context)
            document = {
                'word': fmt(word),
                'target': fmt(self.context.words.canonical_word(projector.target)),
                'lambda': [r.to_dict() for r in projector.records(self.datum, self.context.calculus.scalars)],
                'dlb': expansion.to_dict(self.datum),
            }
            for index, entry in document['dlb'].items():
                rows.append({'index': index, 'double_leaf': entry['double_leaf'], 'coefficient': entry['coefficient']})
            if self.config.characteristic:
                reduced = self._projector(word)
                document['reduction'] = (
                    reduced.to_dict() if isinstance(reduced, NotLiftable)
                    else {'prime': self.config.characteristic, 'liftable': True}
                )
            documents.append(document)
            print(f"  - {fmt(word)}: {len(projector.summands)} summands split off")
        return {'datum': self.datum.label, 'char': self.config.characteristic, 'projectors': documents}, rows

    def run_character(self) -> Report:
        print("Step 1: Computing characters of favorite projectors...")
        fmt = self.datum.format_word
        documents, rows = [], []
        for word in self.words():
            projector = self._projector(word)
            if isinstance(projector, NotLiftable):
                documents.append({'word': fmt(word), 'not_liftable': projector.to_dict()})
                continue
            ctx = self.context if self.config.characteristic == 0 else self.contextp
            character = ctx.characters.character(projector.morphism)
            expected = self.context.hecke.kl_element(projector.target)
            terms = {fmt(x.word): character.coefficient(x).to_text() for x in character.support()}
            rows.extend({'x': x, 'rank': r} for x, r in terms.items())
            documents.append({'word': fmt(word), 'character': terms, 'equals_kl': character == expected})
        return {'datum': self.datum.label, 'char': self.config.characteristic, 'characters': documents}, rows

    def run_badprimes(self) -> Report:
        print("Step 1: Building the region...")
        region = self.region()
        print("Step 2: Computing intersection scalars...")
        analyser = BadPrimeAnalyser(self.context, self.config.jobs, self.cache,
                                    reverse_selection=self.config.reverse_selection)
        report = analyser.analyse(region, self.region_label)
        rows = [
            {'x': e.x, 'z': e.z, 'det': e.det, 'primes': ','.join(str(p) for p in e.primes)}
            for e in report.entries
        ]
        return report.to_dict(), rows

    def run_verify(self) -> Report:
        print("Building the region...")
        region = self.region()
        checker = InvariantChecker(self.context)
        report = checker.verify(region, self.config.primes)
        rows = [
            {'check': r.check, 'subject': r.subject, 'passed': r.passed, 'detail': r.detail}
            for r in report.results
        ]
        return report.to_dict(), rows


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Soergel Engine")
    parser.add_argument('--log-level', default=LOG_LEVEL, help='Logging level (default: %(default)s)')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--type', help=f'Named Cartan type: {NAMED_TYPES_HELP}')
    common.add_argument('--cartan-file', help='JSON file {"label", "cartan", "affine"}')
    common.add_argument('--char', type=int, default=0, help='0 for QQ or an odd prime')
    common.add_argument('--top', help="Top element of the region, e.g. 's1.s2.s1'")
    common.add_argument('--region-max-length', type=int, default=DEFAULT_REGION_MAX_LENGTH,
                        help='Use all elements up to this length')
    common.add_argument('--out', help='Write the report here instead of stdout')
    common.add_argument('--format', choices=OUTPUT_FORMATS, default='json')
    common.add_argument('--cache-dir', help='Directory of the result cache')
    common.add_argument('--jobs', type=int, default=DEFAULT_JOBS, help='Worker processes for region sweeps')

    subparsers = parser.add_subparsers(dest='command', help='Commands')
    helps = {
        'kl': 'Kazhdan-Lusztig basis of the region',
        'leaves': 'Light leaves of words',
        'projector': 'Favorite projectors and their intersection scalars',
        'character': 'Characters of favorite projectors',
        'badprimes': 'Determinants of intersection scalars and bad primes',
        'verify': 'Run the invariant suite on the region',
    }
    for command in COMMANDS:
        sub = subparsers.add_parser(command, parents=[common], help=helps[command])
        if command in ('leaves', 'projector', 'character'):
            sub.add_argument('words', nargs='*', help="Words such as 's1.s2.s1'; the region when omitted")
        if command in ('projector', 'badprimes'):
            sub.add_argument('--reverse-selection', action='store_true',
                             help='Scan candidate leaves in reverse order')
        if command == 'verify':
            sub.add_argument('--primes', type=int, nargs='+', help='Odd primes for the reduction checks')
            sub.add_argument('--mod-p', action='store_true', help='Reduction checks at the default primes')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING), format=LOG_FORMAT)
    config = JobConfig.from_args(args)

    try:
        # Progress goes to stderr when the report itself goes to stdout
        progress = sys.stdout if config.out else sys.stderr
        with contextlib.redirect_stdout(progress):
            engine = SoergelEngine(config)
            status, text = engine.run()
    except (ConfigError, PreconditionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except TheoryViolation as e:
        print(f"theory violation: {e}", file=sys.stderr)
        return EXIT_THEORY_VIOLATION

    if config.out:
        print(f"\n✓ Report saved to: {config.out}")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
