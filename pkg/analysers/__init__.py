from .bad_prime_analyser import BadPrimeAnalyser, d_determinant, element_entries, odd_primes
from .invariant_checker import InvariantChecker

__all__ = [
    'BadPrimeAnalyser',
    'InvariantChecker',
    'd_determinant',
    'element_entries',
    'odd_primes',
]
