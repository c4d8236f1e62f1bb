"""Exact coefficient arithmetic over the rationals or a prime field.

No floating point appears anywhere in the package; rationals are Fraction
values in lowest terms, prime-field elements are ints stored as symmetric
representatives in [-(p-1)/2, (p-1)/2].
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """The ground field: Q for characteristic 0, F_p for prime p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c < 0:
            raise InputError(f"negative characteristic {c}")
        if c != 0 and not _is_prime(c):
            raise InputError(f"characteristic {c} is not prime")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime field"

    def coerce(self, value):
        """Normalize an int/Fraction into this field's canonical form."""
        if self.characteristic == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.characteristic == 0:
                raise InputError(
                    f"denominator {value.denominator} not invertible mod {self.characteristic}"
                )
            return self.mul(self._sym(value.numerator), self.inv(self._sym(value.denominator)))
        return self._sym(int(value))

    def _sym(self, n: int) -> int:
        p = self.characteristic
        h = (p - 1) // 2
        return (n + h) % p - h

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a, b):
        return a + b if self.characteristic == 0 else self._sym(a + b)

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else self._sym(a - b)

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else self._sym(a * b)

    def neg(self, a):
        return -a if self.characteristic == 0 else self._sym(-a)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return self._sym(pow(int(a) % self.characteristic, -1, self.characteristic))

    def div(self, a, b):
        return a / b if self.characteristic == 0 else self.mul(a, self.inv(b))

    def coeff_str(self, a) -> str:
        return str(a)
