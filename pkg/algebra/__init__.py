from .scalars import DyadicRing, ModP, PrimeField, RationalField, is_p_integral, scalar_ring
from .polynomial import GradedPoly, LinForm, PolynomialRing, act, demazure, demazure_split
from .linear import SparseSystem, determinant, inverse, is_independent, rank, row_reduce

__all__ = [
    'DyadicRing',
    'ModP',
    'PrimeField',
    'RationalField',
    'is_p_integral',
    'scalar_ring',
    'GradedPoly',
    'LinForm',
    'PolynomialRing',
    'act',
    'demazure',
    'demazure_split',
    'SparseSystem',
    'determinant',
    'inverse',
    'is_independent',
    'rank',
    'row_reduce',
]
