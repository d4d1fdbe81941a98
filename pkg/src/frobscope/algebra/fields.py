"""Scalar elements of F_p and F_{p^2} = F_p(theta), theta^2 = n.

These are the reference implementations; the point-counting kernels in
``frobscope.frobenius`` use vectorised numpy equivalents and are tested
against them.
"""

from __future__ import annotations

from dataclasses import dataclass

from frobscope.algebra.numtheory import is_prime, least_nonresidue
from frobscope.errors import InputError


@dataclass(frozen=True)
class PrimeFieldElement:
    residue: int
    modulus: int

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise InputError(f"modulus {self.modulus} is not prime")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise InputError("mixed moduli")
            return other.residue
        return other % self.modulus

    def __add__(self, other):
        return PrimeFieldElement(self.residue + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElement(self.residue - self._coerce(other), self.modulus)

    def __mul__(self, other):
        return PrimeFieldElement(self.residue * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.modulus)

    def __pow__(self, k: int):
        return PrimeFieldElement(pow(self.residue, k, self.modulus), self.modulus)

    def inverse(self):
        if self.residue == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return PrimeFieldElement(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        return self * PrimeFieldElement(self._coerce(other), self.modulus).inverse()

    def __int__(self):
        return self.residue


@dataclass(frozen=True)
class QuadExtElement:
    """a + b*theta in F_{p^2}; theta**2 is the least non-residue mod p."""

    a: int
    b: int
    p: int

    def __post_init__(self):
        if self.p % 2 == 0:
            raise InputError("F_{p^2} model needs odd p")
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)

    @property
    def nonresidue(self) -> int:
        return least_nonresidue(self.p)

    def __add__(self, o: QuadExtElement) -> QuadExtElement:
        return QuadExtElement(self.a + o.a, self.b + o.b, self.p)

    def __sub__(self, o: QuadExtElement) -> QuadExtElement:
        return QuadExtElement(self.a - o.a, self.b - o.b, self.p)

    def __mul__(self, o: QuadExtElement) -> QuadExtElement:
        n = self.nonresidue
        return QuadExtElement(
            self.a * o.a + n * self.b * o.b, self.a * o.b + self.b * o.a, self.p
        )

    def __pow__(self, k: int) -> QuadExtElement:
        result = QuadExtElement(1, 0, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def norm(self) -> int:
        return (self.a * self.a - self.nonresidue * self.b * self.b) % self.p

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0
