"""
Working regions and validation of the realization on them.

A region is a Bruhat ideal: every element below a top element, or every
element up to a length bound. Affine data always need one of the two.
"""

import logging
from itertools import combinations
from typing import Dict, List, Optional, Set, Tuple

from sympy import Matrix

from coxeter.group import CoxeterGroup, Element
from models.data_models import ValidationReport
from models.errors import ConfigError, TheoryViolation

logger = logging.getLogger(__name__)


def w_circle(group: CoxeterGroup, top: Optional[Element] = None,
             max_length: Optional[int] = None) -> List[Element]:
    """
    The region {w | w <= top} (or all w with l(w) <= max_length).

    Args:
        group: Coxeter group of the datum
        top: Top element; defaults to the longest element of a finite group
        max_length: Length bound used instead of a top element

    Returns:
        Elements ordered by (length, ShortLex)
    """
    if top is None and max_length is None:
        if not group.is_finite:
            raise ConfigError(
                f"Infinite datum {group.datum.label} needs a top element or a region length bound"
            )
        region = group.elements()
    elif top is None:
        region = group.elements_up_to(max_length)
    else:
        region = group.bruhat_interval_below(top)
        if max_length is not None:
            region = [w for w in region if w.length <= max_length]
    check_ideal(group, region)
    return region


def check_ideal(group: CoxeterGroup, region: List[Element]):
    """Raise unless the region is closed under going down in the Bruhat order."""
    members = set(region)
    longest = max((w.length for w in region), default=0)
    ball = group.elements_up_to(longest)
    for w in region:
        for y in ball:
            if y.length < w.length and y not in members and group.bruhat_leq(y, w):
                raise TheoryViolation(
                    "Region is not a Bruhat ideal",
                    {'element': group.format(w), 'missing': group.format(y)},
                )


def reflections_up_to(group: CoxeterGroup, length: int) -> Set[Element]:
    """All reflections w s w^-1 of length <= length."""
    found: Set[Element] = set()
    frontier = [group.generator(s) for s in range(group.rank)]
    found.update(frontier)
    while frontier:
        nxt = []
        for t in frontier:
            for s in range(group.rank):
                conj = group.element_of((s,) + t.word + (s,))
                if conj.length <= length and conj not in found:
                    found.add(conj)
                    nxt.append(conj)
        frontier = nxt
    return found


def _dual_matrix(group: CoxeterGroup, x: Element) -> Matrix:
    """Action of x on V: the inverse transpose of its action on V*."""
    inv = group.inverse(x)
    return Matrix(inv.matrix).T


def _kernel_key(basis: List[Matrix]) -> Tuple:
    if not basis:
        return ()
    rref, _ = Matrix.hstack(*basis).T.rref()
    return tuple(tuple(row) for row in rref.tolist())


def validate_realization(group: CoxeterGroup, region: List[Element]) -> ValidationReport:
    """
    Check the reflection conditions on every pair of the region.

    1. dim ker(x - y) = dim V - 1 exactly when x^-1 y is a reflection.
    2. No three distinct x, y, z have ker(x - y) = ker(z - y) of codimension one.
    """
    dim = group.datum.dimension
    longest = max((w.length for w in region), default=0)
    reflections = reflections_up_to(group, 2 * longest + 1)
    matrices: Dict[Element, Matrix] = {w: _dual_matrix(group, w) for w in region}
    failures = []
    checks = 0
    hyperplanes: Dict[Element, Dict[Tuple, List[Element]]] = {y: {} for y in region}

    for x, y in combinations(region, 2):
        checks += 1
        kernel = (matrices[x] - matrices[y]).nullspace()
        codim_one = len(kernel) == dim - 1
        is_reflection = group.multiply(group.inverse(x), y) in reflections
        if codim_one != is_reflection:
            failures.append({
                'condition': 'reflection-kernel',
                'x': group.format(x),
                'y': group.format(y),
                'kernel_dimension': len(kernel),
                'reflection': is_reflection,
            })
        if codim_one:
            key = _kernel_key(kernel)
            hyperplanes[y].setdefault(key, []).append(x)
            hyperplanes[x].setdefault(key, []).append(y)

    for y, groups in hyperplanes.items():
        for key, partners in groups.items():
            if len(partners) > 1:
                failures.append({
                    'condition': 'shared-hyperplane',
                    'y': group.format(y),
                    'partners': [group.format(w) for w in partners],
                })

    report = ValidationReport(
        datum=group.datum.label,
        region_size=len(region),
        pairs_checked=checks,
        passed=not failures,
        failures=failures,
    )
    if failures:
        logger.warning("Realization of %s fails on %d witnesses", group.datum.label, len(failures))
    return report
