"""
Exact linear algebra over a scalar field.

SparseSystem performs incremental Gauss-Jordan elimination on equations stored
as {unknown: coefficient} dicts; it is what the braid-morphism solver runs on.
The dense helpers below handle the small matrices of intersection scalars.
"""

import logging
from typing import Dict, List, Optional, Sequence, Set, Tuple

from models.errors import NonUnitError, PreconditionError

logger = logging.getLogger(__name__)


class InconsistentSystem(PreconditionError):
    """The equations have no solution."""


class SparseSystem:
    """
    Linear system Σ a_u·u = b with sparse rows, reduced as equations arrive.

    Every stored pivot row contains its pivot unknown with coefficient 1 and
    no other pivot unknown.
    """

    def __init__(self, field):
        self.field = field
        self.rows: Dict[int, Tuple[Dict[int, object], object]] = {}
        self._occurs: Dict[int, Set[int]] = {}
        self.equations_seen = 0

    def _reduce(self, coeffs: Dict[int, object], rhs):
        coeffs = {u: c for u, c in coeffs.items() if c}
        for u in [u for u in coeffs if u in self.rows]:
            factor = coeffs.get(u)
            if not factor:
                continue
            row, row_rhs = self.rows[u]
            for v, c in row.items():
                value = coeffs.get(v, self.field.zero) - factor * c
                if value:
                    coeffs[v] = value
                else:
                    coeffs.pop(v, None)
            rhs = rhs - factor * row_rhs
        return coeffs, rhs

    def add_equation(self, coeffs: Dict[int, object], rhs=0):
        """Add one equation; raises InconsistentSystem on 0 = nonzero."""
        self.equations_seen += 1
        coeffs, rhs = self._reduce(coeffs, self.field(rhs))
        if not coeffs:
            if rhs:
                raise InconsistentSystem(f"Equation reduced to 0 = {rhs}")
            return
        pivot = min(coeffs)
        scale = self.field.inverse(coeffs[pivot])
        row = {u: c * scale for u, c in coeffs.items()}
        rhs = rhs * scale

        # Gauss-Jordan: clear the new pivot from the existing rows.
        for other in list(self._occurs.get(pivot, ())):
            other_row, other_rhs = self.rows[other]
            factor = other_row.get(pivot)
            if not factor:
                continue
            for v, c in row.items():
                value = other_row.get(v, self.field.zero) - factor * c
                if value:
                    if v not in other_row:
                        self._occurs.setdefault(v, set()).add(other)
                    other_row[v] = value
                else:
                    other_row.pop(v, None)
                    self._occurs.get(v, set()).discard(other)
            self.rows[other] = (other_row, other_rhs - factor * rhs)

        self.rows[pivot] = (row, rhs)
        for v in row:
            if v != pivot:
                self._occurs.setdefault(v, set()).add(pivot)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def free_unknowns(self, n_unknowns: int) -> List[int]:
        return [u for u in range(n_unknowns) if u not in self.rows]

    def unique_solution(self, n_unknowns: int) -> List:
        """Solution vector; raises PreconditionError if it is not unique."""
        free = self.free_unknowns(n_unknowns)
        if free:
            raise PreconditionError(
                f"Solution space has dimension {len(free)} ({n_unknowns} unknowns, rank {self.rank})"
            )
        return [self.rows[u][1] for u in range(n_unknowns)]


def row_reduce(matrix: Sequence[Sequence], field) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form and pivot columns of a dense matrix."""
    rows = [[field(c) for c in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = field.inverse(rows[r][col])
        rows[r] = [c * inv for c in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence], field) -> int:
    return len(row_reduce(matrix, field)[1])


def determinant(matrix: Sequence[Sequence], field):
    """Determinant by elimination; the empty matrix has determinant 1."""
    n = len(matrix)
    rows = [[field(c) for c in row] for row in matrix]
    det = field.one
    for col in range(n):
        pivot_row = next((i for i in range(col, n) if rows[i][col]), None)
        if pivot_row is None:
            return field.zero
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = field.inverse(rows[col][col])
        for i in range(col + 1, n):
            if rows[i][col]:
                factor = rows[i][col] * inv
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[col])]
    return det


def inverse(matrix: Sequence[Sequence], field) -> List[List]:
    """Inverse of a square matrix; raises NonUnitError when singular."""
    n = len(matrix)
    augmented = [
        list(row) + [field.one if i == j else field.zero for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    reduced, pivots = row_reduce(augmented, field)
    if pivots[:n] != list(range(n)):
        raise NonUnitError("Matrix is singular")
    return [row[n:] for row in reduced]


def identity(n: int, field) -> List[List]:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], field) -> List[List]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [
        [sum((a[i][k] * b[k][j] for k in range(inner)), field.zero) for j in range(cols)]
        for i in range(len(a))
    ]


def is_independent(vectors: Sequence[Dict], field) -> bool:
    """Linear independence of sparse coordinate vectors."""
    system = SparseSystem(field)
    keys: Dict[object, int] = {}
    for vec in vectors:
        for k in vec:
            keys.setdefault(k, len(keys))
    columns = [{keys[k]: field(c) for k, c in vec.items()} for vec in vectors]
    for vec in columns:
        before = system.rank
        try:
            system.add_equation(vec, 0)
        except InconsistentSystem:
            return False
        if system.rank == before:
            return False
    return True
