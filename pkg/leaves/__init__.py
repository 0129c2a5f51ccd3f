from .light_leaves import Leaf, LeafBuilder
from .double_leaves import DoubleLeaf, double_leaves, p_double_leaves, degree_polynomial, shape_degree_polynomial
from .pairing import DLBExpansion, PairingEvaluator
from .characters import CharacterCalculator

__all__ = [
    'Leaf',
    'LeafBuilder',
    'DoubleLeaf',
    'double_leaves',
    'p_double_leaves',
    'degree_polynomial',
    'shape_degree_polynomial',
    'DLBExpansion',
    'PairingEvaluator',
    'CharacterCalculator',
]
