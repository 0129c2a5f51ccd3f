"""
Crystallographic Coxeter data and their realizations.

A datum is a generalized Cartan matrix plus one integer matrix per simple
reflection acting on V*. Finite types act on the span of the simple roots
x_s; a singular (affine) Cartan matrix is realized in dimension
2n - rank(A) by adjoining variables y_k whose coroot pairings complete the
matrix to full rank.
"""

import hashlib
import json
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational

from algebra.polynomial import LinForm, PolynomialRing
from config import BRAID_PATH_VERSION
from models.errors import ConfigError

logger = logging.getLogger(__name__)

IntMatrix = Tuple[Tuple[int, ...], ...]
Word = Tuple[int, ...]

# a_ij * a_ji -> m(s_i, s_j); larger products give infinite order
_BOND_ORDERS = {0: 2, 1: 3, 2: 4, 3: 6}


def matrix_product(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _chain(n: int) -> List[List[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _named_block(letter: str, n: int, affine: bool) -> List[List[int]]:
    if affine:
        if letter != 'A':
            raise ConfigError(f"Only affine type A~n is built in, got {letter}~{n}")
        if n == 1:
            return [[2, -2], [-2, 2]]
        a = _chain(n + 1)
        a[0][n] = a[n][0] = -1
        return a
    if letter == 'A' and n >= 1:
        return _chain(n)
    if letter == 'B' and n >= 2:
        a = _chain(n)
        a[n - 1][n - 2] = -2
        return a
    if letter == 'C' and n >= 2:
        a = _chain(n)
        a[n - 2][n - 1] = -2
        return a
    if letter == 'D' and n >= 4:
        a = _chain(n - 1)
        for row in a:
            row.append(0)
        a.append([0] * n)
        a[n - 1][n - 1] = 2
        a[n - 1][n - 3] = a[n - 3][n - 1] = -1
        return a
    if letter == 'G' and n == 2:
        return [[2, -1], [-3, 2]]
    if letter == 'F' and n == 4:
        return [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    raise ConfigError(f"Unknown Cartan type {letter}{n}")


def _block_diagonal(blocks: Sequence[List[List[int]]]) -> List[List[int]]:
    size = sum(len(b) for b in blocks)
    result = [[0] * size for _ in range(size)]
    offset = 0
    for block in blocks:
        for i, row in enumerate(block):
            for j, value in enumerate(row):
                result[offset + i][offset + j] = value
        offset += len(block)
    return result


def parse_type(name: str) -> Tuple[List[List[int]], bool]:
    """Cartan matrix and affine flag for a named type such as 'B2', 'A~1' or 'A1xA1'."""
    text = name.strip().replace('Ã', 'A~')
    blocks = []
    affine = False
    for part in text.split('x'):
        match = re.fullmatch(r'([A-G])(~?)(\d+)', part.strip())
        if not match:
            raise ConfigError(f"Cannot parse Cartan type '{name}'. Expected {part!r} like A2, B3 or A~1")
        letter, tilde, n = match.group(1), bool(match.group(2)), int(match.group(3))
        blocks.append(_named_block(letter, n, tilde))
        affine = affine or tilde
    return _block_diagonal(blocks), affine


def _realization_extension(cartan: List[List[int]]) -> Tuple[Tuple[int, ...], ...]:
    """Coroot pairings of extra variables that complete the Cartan matrix to full rank."""
    n = len(cartan)
    current = Matrix(cartan)
    columns: List[int] = []
    for i in range(n):
        if current.rank() == n:
            break
        unit = Matrix([[1 if r == i else 0] for r in range(n)])
        candidate = current.row_join(unit)
        if candidate.rank() > current.rank():
            current = candidate
            columns.append(i)
    return tuple(tuple(1 if r == c else 0 for c in columns) for r in range(n))


@dataclass(frozen=True)
class CoxeterDatum:
    """Generalized Cartan matrix with its realization."""
    label: str
    cartan: IntMatrix
    affine: bool = False

    @classmethod
    def from_type(cls, name: str) -> "CoxeterDatum":
        cartan, affine = parse_type(name)
        return cls.from_cartan(cartan, label=name.replace('Ã', 'A~'), affine=affine)

    @classmethod
    def from_cartan(cls, cartan: Sequence[Sequence[int]], label: str = "custom",
                    affine: Optional[bool] = None) -> "CoxeterDatum":
        matrix = tuple(tuple(int(v) for v in row) for row in cartan)
        if affine is None:
            affine = Matrix(matrix).det() == 0 if matrix else False
        datum = cls(label=label, cartan=matrix, affine=bool(affine))
        datum.validate()
        return datum

    @classmethod
    def from_file(cls, path: str) -> "CoxeterDatum":
        """Load {"label": ..., "cartan": [[...]], "affine": optional} from JSON."""
        try:
            with open(Path(path), 'r', encoding='utf-8') as f:
                payload = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"Cannot read Cartan file {path}: {e}")
        if 'cartan' not in payload:
            raise ConfigError(f"Cartan file {path} has no 'cartan' entry")
        return cls.from_cartan(payload['cartan'], payload.get('label', Path(path).stem), payload.get('affine'))

    def validate(self):
        n = self.rank
        for i, row in enumerate(self.cartan):
            if len(row) != n:
                raise ConfigError(f"Cartan matrix of {self.label} is not square")
            for j, value in enumerate(row):
                if i == j and value != 2:
                    raise ConfigError(f"Diagonal entry a[{i}][{i}] = {value}, expected 2")
                if i != j and value > 0:
                    raise ConfigError(f"Off-diagonal entry a[{i}][{j}] = {value} is positive")
                if i != j and (value == 0) != (self.cartan[j][i] == 0):
                    raise ConfigError(f"a[{i}][{j}] and a[{j}][{i}] must vanish together")
        failures = self.check_braid_relations()
        if failures:
            raise ConfigError(f"Realization of {self.label} violates Coxeter relations: {failures}")

    # Shape
    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def extension(self) -> Tuple[Tuple[int, ...], ...]:
        if not self.affine:
            return tuple(() for _ in range(self.rank))
        return _realization_extension([list(r) for r in self.cartan])

    @property
    def dimension(self) -> int:
        return self.rank + (len(self.extension[0]) if self.rank else 0)

    @property
    def generator_names(self) -> Tuple[str, ...]:
        return tuple(f"s{i + 1}" for i in range(self.rank))

    @property
    def variable_names(self) -> Tuple[str, ...]:
        extra = self.dimension - self.rank
        return tuple(f"x_{i + 1}" for i in range(self.rank)) + tuple(f"y_{k + 1}" for k in range(extra))

    @cached_property
    def symmetrizer(self) -> Optional[Tuple[Fraction, ...]]:
        """Positive d with d_i a_ij = d_j a_ji, or None if the matrix is not symmetrizable."""
        n = self.rank
        d: List[Optional[Fraction]] = [None] * n
        for root in range(n):
            if d[root] is not None:
                continue
            d[root] = Fraction(1)
            stack = [root]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if j != i and self.cartan[i][j] and d[j] is None:
                        d[j] = d[i] * self.cartan[i][j] / self.cartan[j][i]
                        stack.append(j)
        for i in range(n):
            for j in range(n):
                if d[i] * self.cartan[i][j] != d[j] * self.cartan[j][i]:
                    return None
        return tuple(d)

    @cached_property
    def finite(self) -> bool:
        """W is finite iff the symmetrized Cartan matrix is positive definite."""
        if self.affine:
            return False
        if not self.rank:
            return True
        d = self.symmetrizer
        if d is None:
            return False
        form = Matrix([
            [Rational(d[i].numerator, d[i].denominator) * self.cartan[i][j] for j in range(self.rank)]
            for i in range(self.rank)
        ])
        return bool(form.is_positive_definite)

    # Coxeter matrix
    def m(self, s: int, r: int) -> Optional[int]:
        """Order of s*r; None for infinite order."""
        if s == r:
            return 1
        return _BOND_ORDERS.get(self.cartan[s][r] * self.cartan[r][s])

    # Realization
    @cached_property
    def reflection_matrices(self) -> Tuple[IntMatrix, ...]:
        """Matrix of s_i on V*: s_i(b_c) = b_c - <coroot_i, b_c> x_i, column c = image of b_c."""
        mats = []
        dim = self.dimension
        for i in range(self.rank):
            pairing = tuple(self.cartan[i]) + tuple(self.extension[i])
            rows = [list(r) for r in identity_matrix(dim)]
            for c in range(dim):
                rows[i][c] -= pairing[c]
            mats.append(tuple(tuple(r) for r in rows))
        return tuple(mats)

    def word_matrix(self, word: Word) -> IntMatrix:
        result = identity_matrix(self.dimension)
        for s in word:
            result = matrix_product(result, self.reflection_matrices[s])
        return result

    def simple_root(self, s: int) -> LinForm:
        return LinForm(tuple(1 if i == s else 0 for i in range(self.dimension)))

    def check_braid_relations(self) -> List[str]:
        failures = []
        dim = self.dimension
        ident = identity_matrix(dim)
        mats = self.reflection_matrices
        for s in range(self.rank):
            if matrix_product(mats[s], mats[s]) != ident:
                failures.append(f"s{s + 1} is not an involution")
            for r in range(s + 1, self.rank):
                order = self.m(s, r)
                if order is None:
                    continue
                product = matrix_product(mats[s], mats[r])
                power = ident
                for _ in range(order):
                    power = matrix_product(power, product)
                if power != ident:
                    failures.append(f"(s{s + 1} s{r + 1})^{order} != 1")
        return failures

    def polynomial_ring(self, scalars=None) -> PolynomialRing:
        return PolynomialRing(self.variable_names, scalars, datum_key=self.key)

    # Identity
    @cached_property
    def key(self) -> str:
        """Content hash of the datum, its realization and the braid-path rule."""
        payload = {
            'label': self.label,
            'cartan': self.cartan,
            'affine': self.affine,
            'extension': self.extension,
            'braid_paths': BRAID_PATH_VERSION,
        }
        encoded = json.dumps(payload, sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(encoded.encode('utf-8')).hexdigest()[:16]

    def format_word(self, word: Word) -> str:
        """Serialize a word as 's1.s2.s1'; the empty word is 'e'."""
        if not word:
            return 'e'
        return '.'.join(self.generator_names[s] for s in word)

    def parse_word(self, text: str) -> Word:
        text = text.strip()
        if text in ('', 'e'):
            return ()
        word = []
        for token in re.split(r'[.,\s]+', text):
            match = re.fullmatch(r's?(\d+)', token)
            if not match:
                raise ConfigError(f"Cannot parse word '{text}'")
            index = int(match.group(1)) - 1
            if not 0 <= index < self.rank:
                raise ConfigError(f"Generator {token} out of range for {self.label}")
            word.append(index)
        return tuple(word)

    def to_dict(self) -> Dict:
        return {
            'label': self.label,
            'cartan': [list(r) for r in self.cartan],
            'affine': self.affine,
            'dimension': self.dimension,
            'key': self.key,
        }
