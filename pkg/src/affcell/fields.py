"""Exact ground fields: the rationals and prime fields.

Rational scalars are :class:`fractions.Fraction`; prime-field scalars are
:class:`Mod` residues. Both support the usual arithmetic operators, so the
rest of the package never branches on the field kind.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


def is_prime(n: int) -> bool:
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


@total_ordering
class Mod:
    """Canonical residue modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError(f"mixing residues mod {self.p} and mod {other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.p)

    def inverse(self) -> "Mod":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return Mod(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * Mod(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Mod(pow(self.v, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.v == other.v
        if isinstance(other, (int, Fraction)):
            try:
                return self.v == self._other(other) % self.p
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __lt__(self, other):
        return self.v < self._other(other)

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: ``FieldSpec.rationals()`` or ``FieldSpec.prime(p)``."""

    kind: str
    characteristic: int

    def __post_init__(self):
        if self.kind == "Q":
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "Fp":
            if not is_prime(self.characteristic):
                raise ValueError(f"characteristic {self.characteristic} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("Q", 0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("Fp", p)

    @property
    def is_rational(self) -> bool:
        return self.kind == "Q"

    @property
    def is_perfect(self) -> bool:
        return True

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce an int, Fraction, residue or numeric string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.kind == "Q":
            if isinstance(x, Mod):
                raise TypeError("cannot coerce a residue into the rationals")
            return Fraction(x)
        if isinstance(x, Mod):
            if x.p != self.characteristic:
                raise ValueError(f"residue mod {x.p} is not in F_{self.characteristic}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.characteristic == 0:
                raise ZeroDivisionError(
                    f"{x} has a denominator divisible by {self.characteristic}")
            return Mod(x.numerator, self.characteristic) / x.denominator
        return Mod(int(x), self.characteristic)

    def format(self, c) -> str:
        return str(c)

    def __str__(self):
        return "Q" if self.kind == "Q" else f"Fp {self.characteristic}"


QQ = FieldSpec.rationals()


def GF(p: int) -> FieldSpec:
    return FieldSpec.prime(p)
