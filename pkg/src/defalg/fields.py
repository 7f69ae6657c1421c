"""Exact coefficient fields: prime fields GF(p) and the rationals.

Scalars are plain Python objects: ints in ``range(p)`` for GF(p),
``fractions.Fraction`` for the rationals.  A field object bundles the
arithmetic so matrices and polynomials can stay field-agnostic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

Scalar = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """GF(p) with elements represented as ints in ``range(p)``."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        # (p-1)^2 must fit in int64 for the numpy/numba kernels
        if not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        if p >= 2**31:
            raise ValueError(f"modulus {p} too large for int64 kernels")
        self.p = p

    @property
    def name(self) -> str:
        return f"F{self.p}"

    @property
    def char(self) -> int:
        return self.p

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in " + self.name)
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def elements(self):
        return range(self.p)

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))


class RationalField:
    """The rationals; scalars are ``Fraction`` (always in lowest terms)."""

    __slots__ = ()

    name = "Q"
    char = 0

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / a

    def div(self, a: Fraction, b: Fraction) -> Fraction:
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("RationalField")


Field = Union[PrimeField, RationalField]

QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


_FIELD_NAMES = {"Q": lambda: QQ, "QQ": lambda: QQ}


def field_by_name(name: str) -> Field:
    """Resolve "F2", "F3", "F5", ..., "Q" to a field object."""
    key = name.strip()
    if key in _FIELD_NAMES:
        return _FIELD_NAMES[key]()
    if key.startswith("F") and key[1:].isdigit():
        return GF(int(key[1:]))
    if key.startswith("GF(") and key.endswith(")") and key[3:-1].isdigit():
        return GF(int(key[3:-1]))
    raise ValueError(f"unknown field name {name!r}")
