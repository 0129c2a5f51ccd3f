"""
Reduction of char-0 projectors to F_p through their double leaves expansion.
"""

import logging
from typing import Dict, Optional, Tuple, Union

from algebra.scalars import is_p_integral
from bimodules.morphisms import compose
from leaves.double_leaves import double_leaves
from leaves.pairing import DLBExpansion
from models.data_models import NotLiftable
from models.errors import PreconditionError, TheoryViolation
from projectors.context import SoergelContext
from projectors.favorite import Projector

logger = logging.getLogger(__name__)


def dlb_expansion(projector: Projector, context: SoergelContext) -> DLBExpansion:
    """Coefficients of a projector in the double leaves basis of End(B_word); stored on the projector."""
    if projector.dlb is None:
        dleaves = double_leaves(context.leaves, projector.word, projector.word)
        projector.dlb = context.pairing.expand_in_dlb(projector.morphism, dleaves)
    return projector.dlb


def _leaf_key(d) -> Tuple:
    return (d.upper.i, d.lower.i)


def reduce_mod_p(projector: Projector, prime: int, context0: SoergelContext,
                 contextp: Optional[SoergelContext] = None) -> Union[Projector, NotLiftable]:
    """
    Reduce a char-0 projector modulo an odd prime.

    Args:
        projector: Projector built over QQ
        prime: Odd prime
        context0: Context the projector was built in
        contextp: Context over F_p; built from context0 when omitted

    Returns:
        The reduced Projector, or NotLiftable listing the coefficients with p
        in a denominator
    """
    if prime == 2 or prime < 2:
        raise PreconditionError(f"Reduction needs an odd prime, got {prime}")
    if context0.characteristic != 0:
        raise PreconditionError("Only char-0 projectors can be reduced")
    datum = context0.datum
    word_text = datum.format_word(projector.word)

    expansion = dlb_expansion(projector, context0)
    offending = []
    for k, d, c in expansion.nonzero():
        bad = [v for v in c.terms.values() if not is_p_integral(v, prime)]
        if bad:
            offending.append({
                'index': k,
                'double_leaf': d.label(datum),
                'coefficient': c.to_text(),
            })
    if offending:
        logger.info("Projector %s is not liftable at p = %d", word_text, prime)
        return NotLiftable(word_text, prime, offending)

    contextp = contextp or context0.with_characteristic(prime)
    calculus = contextp.calculus
    by_key: Dict[Tuple, object] = {
        _leaf_key(d): d for d in double_leaves(contextp.leaves, projector.word, projector.word)
    }
    obj = calculus.obj(projector.word)
    reduced = calculus.zero(obj, obj)
    for _, d, c in expansion.nonzero():
        dp = by_key[_leaf_key(d)]
        reduced = reduced + dp.morphism.scale(c.change_scalars(calculus.ring))

    if compose(reduced, reduced) != reduced:
        raise TheoryViolation("Reduced projector is not idempotent", {'word': word_text, 'p': prime})
    char0 = context0.characters.character(projector.morphism, check_idempotent=False)
    charp = contextp.characters.character(reduced, check_idempotent=False)
    if char0 != charp:
        raise TheoryViolation(
            "Character changes under reduction",
            {'word': word_text, 'p': prime, 'char0': char0.to_text(), 'charp': charp.to_text()},
        )
    logger.debug("Reduced projector %s to GF(%d)", word_text, prime)
    return Projector(projector.word, projector.target, reduced, scalars_name=str(calculus.scalars))
