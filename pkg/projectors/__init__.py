from .context import SoergelContext
from .favorite import FavoriteProjectorBuilder, Projector, SummandData
from .reduction import dlb_expansion, reduce_mod_p

__all__ = [
    'SoergelContext',
    'FavoriteProjectorBuilder',
    'Projector',
    'SummandData',
    'dlb_expansion',
    'reduce_mod_p',
]
