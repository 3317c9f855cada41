"""Exact arithmetic over prime fields F_p and the rationals.

Elements are immutable and canonical: an F_p value is stored as an int in
[0, p), a rational as a reduced Fraction with positive denominator, so
equal elements always have identical representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ZeroInverse

Value = Union[int, Fraction]

_MR_BASES = (2, 3, 5, 7)  # deterministic Miller-Rabin witnesses for n < 3.2e9


def is_prime(n: int) -> bool:
    """Deterministic primality test, exact for n < 3,215,031,751."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True, slots=True)
class FieldSpec:
    """A prime field F_p (p prime) or the rationals (p is None)."""

    p: int | None

    def __post_init__(self) -> None:
        if self.p is not None:
            if self.p >= 2**31:
                raise ValueError(f"prime modulus too large: {self.p}")
            if not is_prime(self.p):
                raise ValueError(f"modulus is not prime: {self.p}")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @property
    def is_rationals(self) -> bool:
        return self.p is None

    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def element(self, value) -> "FieldElement":
        """Canonical element from an int, Fraction or another element."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise ValueError(f"element of {value.spec} used in {self}")
            return value
        if self.p is None:
            return FieldElement(Fraction(value), self)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ValueError(f"denominator not invertible mod {self.p}")
            num = value.numerator % self.p
            den = pow(value.denominator % self.p, self.p - 2, self.p)
            return FieldElement(num * den % self.p, self)
        return FieldElement(int(value) % self.p, self)

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def parse(self, text: str) -> "FieldElement":
        """Parse the text encoding: decimal for F_p, "a/b" or decimal for Q."""
        text = text.strip()
        if self.p is None:
            return self.element(Fraction(text))
        return self.element(int(text))

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"


@dataclass(frozen=True, slots=True)
class FieldElement:
    """An exact element of a FieldSpec; arithmetic never mixes specs."""

    value: Value
    spec: FieldSpec

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError(f"mixed field arithmetic: {self.spec} vs {other.spec}")
            return other
        if isinstance(other, int):
            return self.spec.element(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.spec.p is None:
            return FieldElement(self.value + other.value, self.spec)
        return FieldElement((self.value + other.value) % self.spec.p, self.spec)

    __radd__ = __add__

    def __sub__(self, other) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.spec.p is None:
            return FieldElement(self.value - other.value, self.spec)
        return FieldElement((self.value - other.value) % self.spec.p, self.spec)

    def __rsub__(self, other) -> "FieldElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.spec.p is None:
            return FieldElement(self.value * other.value, self.spec)
        return FieldElement((self.value * other.value) % self.spec.p, self.spec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "FieldElement":
        other = self._coerce(other)
        return self * other.inv()

    def __neg__(self) -> "FieldElement":
        if self.spec.p is None:
            return FieldElement(-self.value, self.spec)
        return FieldElement((-self.value) % self.spec.p, self.spec)

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            return self.inv() ** (-n)
        if self.spec.p is not None:
            return FieldElement(pow(self.value, n, self.spec.p), self.spec)
        return FieldElement(self.value**n, self.spec)

    def __bool__(self) -> bool:
        return self.value != 0

    def inv(self) -> "FieldElement":
        if not self:
            raise ZeroInverse(f"zero has no inverse in {self.spec}")
        if self.spec.p is None:
            return FieldElement(1 / Fraction(self.value), self.spec)
        return FieldElement(pow(self.value, self.spec.p - 2, self.spec.p), self.spec)

    def text(self) -> str:
        """Canonical text form: decimal in [0,p) for F_p, "a/b" for Q."""
        if self.spec.p is None:
            f = Fraction(self.value)
            return f"{f.numerator}/{f.denominator}"
        return str(self.value)

    def __repr__(self) -> str:
        return f"{self.text()}:{self.spec}"


def embed_int(n: int, spec: FieldSpec) -> FieldElement:
    """Canonical image of an integer; embed_int(p, F_p) = 0."""
    return spec.element(n)


def inv(x: FieldElement) -> FieldElement:
    """Multiplicative inverse; raises ZeroInverse on 0."""
    return x.inv()
