"""Laurent polynomials in v with integer coefficients."""

from typing import Dict, Optional


class LaurentInt:
    """Immutable element of Z[v, v^-1]; zero coefficients are never stored."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Optional[Dict[int, int]] = None):
        self.coeffs = {k: int(c) for k, c in (coeffs or {}).items() if c}
        self._hash = None

    @classmethod
    def v(cls, power: int = 1) -> "LaurentInt":
        return cls({power: 1})

    @classmethod
    def constant(cls, value: int) -> "LaurentInt":
        return cls({0: value})

    @staticmethod
    def _coerce(other) -> Optional["LaurentInt"]:
        if isinstance(other, LaurentInt):
            return other
        if isinstance(other, int):
            return LaurentInt({0: other})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        coeffs = dict(self.coeffs)
        for k, c in other.coeffs.items():
            coeffs[k] = coeffs.get(k, 0) + c
        return LaurentInt(coeffs)

    __radd__ = __add__

    def __neg__(self):
        return LaurentInt({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        coeffs: Dict[int, int] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                coeffs[k1 + k2] = coeffs.get(k1 + k2, 0) + c1 * c2
        return LaurentInt(coeffs)

    __rmul__ = __mul__

    def bar(self) -> "LaurentInt":
        """The involution v -> v^-1."""
        return LaurentInt({-k: c for k, c in self.coeffs.items()})

    def coefficient(self, power: int) -> int:
        return self.coeffs.get(power, 0)

    def constant_term(self) -> int:
        return self.coefficient(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def min_degree(self) -> Optional[int]:
        return min(self.coeffs) if self.coeffs else None

    def max_degree(self) -> Optional[int]:
        return max(self.coeffs) if self.coeffs else None

    def in_v_positive(self) -> bool:
        """True for elements of vZ[v]."""
        return all(k > 0 for k in self.coeffs)

    def has_nonnegative_coefficients(self) -> bool:
        return all(c > 0 for c in self.coeffs.values())

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def to_text(self, variable: str = 'v') -> str:
        if not self.coeffs:
            return '0'
        pieces = []
        for k in sorted(self.coeffs, reverse=True):
            c = self.coeffs[k]
            magnitude = abs(c)
            if k == 0:
                body = str(magnitude)
            else:
                power = variable if k == 1 else f"{variable}^{k}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            if not pieces:
                pieces.append(('-' if c < 0 else '') + body)
            else:
                pieces.append((' - ' if c < 0 else ' + ') + body)
        return ''.join(pieces)

    def __repr__(self):
        return self.to_text()
