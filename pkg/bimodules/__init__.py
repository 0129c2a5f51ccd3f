from .objects import BSElement, BSObject, TwistedModule
from .morphisms import GeneratorStep, Morphism, compose, compose_all
from .calculus import BimoduleCalculus

__all__ = [
    'BSElement',
    'BSObject',
    'TwistedModule',
    'GeneratorStep',
    'Morphism',
    'compose',
    'compose_all',
    'BimoduleCalculus',
]
