from dataclasses import dataclass
from typing import Optional

from algebra.scalars import scalar_ring
from bimodules.calculus import BimoduleCalculus
from coxeter.datum import CoxeterDatum
from coxeter.group import CoxeterGroup
from coxeter.words import WordCombinatorics
from hecke.algebra import HeckeAlgebra
from leaves.characters import CharacterCalculator
from leaves.light_leaves import LeafBuilder
from leaves.pairing import PairingEvaluator


@dataclass
class SoergelContext:
    """Everything computed over one datum and one coefficient ring"""
    group: CoxeterGroup
    words: WordCombinatorics
    hecke: HeckeAlgebra
    calculus: BimoduleCalculus
    leaves: LeafBuilder
    pairing: PairingEvaluator
    characters: CharacterCalculator
    characteristic: int = 0

    @classmethod
    def build(cls, datum: CoxeterDatum, characteristic: int = 0,
              group: Optional[CoxeterGroup] = None,
              words: Optional[WordCombinatorics] = None,
              hecke: Optional[HeckeAlgebra] = None) -> "SoergelContext":
        group = group or CoxeterGroup(datum)
        words = words or WordCombinatorics(group)
        hecke = hecke or HeckeAlgebra(group)
        calculus = BimoduleCalculus(group, scalar_ring(characteristic))
        leaves = LeafBuilder(calculus, words)
        return cls(
            group=group,
            words=words,
            hecke=hecke,
            calculus=calculus,
            leaves=leaves,
            pairing=PairingEvaluator(calculus),
            characters=CharacterCalculator(leaves),
            characteristic=characteristic,
        )

    @property
    def datum(self) -> CoxeterDatum:
        return self.group.datum

    def with_characteristic(self, characteristic: int) -> "SoergelContext":
        """Same group, words and Hecke algebra over another coefficient ring."""
        return SoergelContext.build(self.datum, characteristic, self.group, self.words, self.hecke)
