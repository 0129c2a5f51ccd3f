from .datum import CoxeterDatum, parse_type
from .group import CoxeterGroup, Element
from .words import BraidMove, ReducedWordGraph, WordCombinatorics
from .region import reflections_up_to, validate_realization, w_circle

__all__ = [
    'CoxeterDatum',
    'parse_type',
    'CoxeterGroup',
    'Element',
    'BraidMove',
    'ReducedWordGraph',
    'WordCombinatorics',
    'reflections_up_to',
    'validate_realization',
    'w_circle',
]
