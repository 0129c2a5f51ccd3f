"""
Exact coefficient rings.

Three rings are supported: the rationals, the integers with 2 inverted and
prime fields F_p with p odd. Values of the first two are fractions.Fraction;
prime-field values are ModP. No floating point appears anywhere.
"""

from fractions import Fraction
from functools import wraps
from typing import Union

from sympy import isprime

from models.errors import ConfigError, NonUnitError


def extgcd(a: int, b: int):
    """Extended Euclid: returns (x, y, d) with a*x + b*y = d."""
    if abs(b) > abs(a):
        (x, y, d) = extgcd(b, a)
        return y, x, d

    if abs(b) == 0:
        return 1, 0, a

    x1, x2, y1, y2 = 0, 1, 1, 0
    while abs(b) > 0:
        q, r = divmod(a, b)
        x = x2 - q * x1
        y = y2 - q * y1
        a, b, x2, x1, y2, y1 = b, r, x1, x, y1, y

    return x2, y2, a


def _check(func):
    @wraps(func)
    def method(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"Mixing F_{self.p} and F_{other.p}")
        elif isinstance(other, (int, Fraction)):
            other = ModP.coerce(other, self.p)
        else:
            return NotImplemented
        return func(self, other)

    return method


class ModP:
    """An element x of F_p."""

    __slots__ = ("x", "p")

    def __init__(self, x: int, p: int):
        self.x = x % p
        self.p = p

    @staticmethod
    def coerce(value: Union[int, Fraction], p: int) -> "ModP":
        if isinstance(value, ModP):
            return value
        value = Fraction(value)
        if value.denominator % p == 0:
            raise NonUnitError(f"{value} has a denominator divisible by {p}")
        inv, _, _ = extgcd(value.denominator % p, p)
        return ModP(value.numerator * inv, p)

    @_check
    def __add__(self, other):
        return ModP(self.x + other.x, self.p)

    @_check
    def __radd__(self, other):
        return self + other

    @_check
    def __sub__(self, other):
        return ModP(self.x - other.x, self.p)

    @_check
    def __rsub__(self, other):
        return ModP(other.x - self.x, self.p)

    def __neg__(self):
        return ModP(-self.x, self.p)

    @_check
    def __mul__(self, other):
        return ModP(self.x * other.x, self.p)

    @_check
    def __rmul__(self, other):
        return self * other

    def inverse(self) -> "ModP":
        if self.x == 0:
            raise NonUnitError(f"0 is not invertible in F_{self.p}")
        x, _, _ = extgcd(self.x, self.p)
        return ModP(x, self.p)

    @_check
    def __truediv__(self, other):
        return self * other.inverse()

    @_check
    def __rtruediv__(self, other):
        return other * self.inverse()

    def __bool__(self):
        return self.x != 0

    def __int__(self):
        return self.x

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.x == other.x and self.p == other.p
        if isinstance(other, int):
            return self.x == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.x, self.p))

    def signed(self) -> int:
        """Representative in (-p/2, p/2]."""
        return self.x - self.p if self.x > self.p // 2 else self.x

    def __repr__(self):
        return str(self.signed())


class RationalField:
    """The field Q, with Fraction values."""

    name = "QQ"
    characteristic = 0
    is_field = True

    def __call__(self, value) -> Fraction:
        if isinstance(value, ModP):
            raise NonUnitError(f"Cannot lift {value} from F_{value.p} to {self.name}")
        return Fraction(value)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_unit(self, a) -> bool:
        return a != 0

    def inverse(self, a):
        if not self.is_unit(a):
            raise NonUnitError(f"{a} is not a unit of {self.name}")
        return 1 / Fraction(a)

    def divide(self, a, b):
        return self(a) * self.inverse(b)

    def contains(self, value) -> bool:
        try:
            self(value)
        except (NonUnitError, TypeError, ValueError):
            return False
        return True

    def to_text(self, a) -> str:
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def fingerprint(self) -> str:
        return self.name

    def __eq__(self, other):
        return type(other) is type(self)

    def __hash__(self):
        return hash(self.fingerprint())

    def __repr__(self):
        return self.name


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


class DyadicRing(RationalField):
    """The ring Z[1/2]: fractions whose denominators are powers of 2."""

    name = "ZZ[1/2]"
    is_field = False

    def __call__(self, value) -> Fraction:
        value = super().__call__(value)
        if not _is_power_of_two(value.denominator):
            raise NonUnitError(f"{value} is not in {self.name}")
        return value

    def is_unit(self, a) -> bool:
        a = Fraction(a)
        return a != 0 and _is_power_of_two(abs(a.numerator))

    def clear_denominator(self, a) -> int:
        """a times its 2-power denominator."""
        a = self(a)
        return int(a * a.denominator)


class PrimeField:
    """The prime field F_p for an odd prime p."""

    is_field = True

    def __init__(self, p: int):
        if p == 2:
            raise ConfigError("Characteristic 2 is outside scope (half-Demazure denominators)")
        if p < 2 or not isprime(p):
            raise ConfigError(f"{p} is not a prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, value) -> ModP:
        return ModP.coerce(value, self.p)

    @property
    def zero(self):
        return ModP(0, self.p)

    @property
    def one(self):
        return ModP(1, self.p)

    def is_unit(self, a) -> bool:
        return bool(self(a))

    def inverse(self, a):
        return self(a).inverse()

    def divide(self, a, b):
        return self(a) * self.inverse(b)

    def contains(self, value) -> bool:
        try:
            self(value)
        except NonUnitError:
            return False
        return True

    def to_text(self, a) -> str:
        return str(self(a).signed())

    def fingerprint(self) -> str:
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(self.fingerprint())

    def __repr__(self):
        return self.name


def scalar_ring(characteristic: int = 0):
    """Return the coefficient ring for a characteristic (0 means QQ)."""
    if characteristic == 0:
        return RationalField()
    return PrimeField(characteristic)


def is_p_integral(value, p: int) -> bool:
    """True when the rational value has no p in its denominator."""
    return Fraction(value).denominator % p != 0
