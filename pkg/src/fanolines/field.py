"""Exact coefficient fields: the rationals and prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field, ``characteristic == 0`` meaning QQ.

    Elements are plain Python objects: ``int`` or ``Fraction`` over QQ
    (reduced, integral values stored as ``int``), and ints in ``[0, p)``
    over GF(p).
    """

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accept ``q``/``QQ`` or ``fp:P``."""
        t = text.strip().lower()
        if t in ("q", "qq", "0"):
            return cls(0)
        if t.startswith("fp:"):
            return cls(int(t[3:]))
        raise ValueError(f"unknown field {text!r}; expected 'q' or 'fp:P'")

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    def __str__(self):
        return "q" if self.characteristic == 0 else f"fp:{self.characteristic}"

    # -- element arithmetic ------------------------------------------------

    def norm(self, x):
        p = self.characteristic
        if p:
            return x % p
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def convert(self, x):
        """Bring an int, Fraction or literal string into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        p = self.characteristic
        if p:
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise ValueError(f"{x} is not representable over GF({p})")
                return x.numerator * pow(x.denominator, -1, p) % p
            return int(x) % p
        return self.norm(Fraction(x)) if isinstance(x, Fraction) else int(x)

    def inv(self, x):
        p = self.characteristic
        if p:
            if x % p == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(x, -1, p)
        return self.norm(Fraction(1) / x)

    def div(self, a, b):
        return self.norm(a * self.inv(b))

    def format(self, x) -> str:
        return str(x)

    def random_element(self, rng, bound: int = 9):
        """A random element; over QQ an integer in ``[-bound, bound]``."""
        p = self.characteristic
        if p:
            return int(rng.integers(0, p))
        return int(rng.integers(-bound, bound + 1))


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)
