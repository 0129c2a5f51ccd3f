from .laurent import LaurentInt
from .algebra import HeckeAlgebra, HeckeElt

__all__ = ['LaurentInt', 'HeckeAlgebra', 'HeckeElt']
