"""Canonical identifiers for Frobenius fields.

Quadratic fields are keyed exactly by a squarefree integer d. Larger
splitting fields are Galois, and a Galois number field is determined by the
set of primes that split completely in it, so they are keyed by a 64-bit
sample of that set over auxiliary primes >= 101. Two polynomials are
compared on the first 64 such primes dividing neither discriminant; a
key's own bit-vector uses the primes not dividing its own discriminant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from frobscope.algebra.numtheory import is_prime, squarefree_kernel
from frobscope.algebra.polynomial import (
    IntPolynomial,
    discriminant,
    radical,
    splits_completely_mod,
)
from frobscope.errors import InputError
from frobscope.frobenius.curves import WeilPolynomial

FINGERPRINT_BITS = 64
AUX_START = 101


def auxiliary_primes(*discs: int, count: int = FINGERPRINT_BITS) -> tuple[int, ...]:
    """First `count` primes >= 101 dividing none of `discs`, ascending."""
    out = []
    ell = AUX_START
    while len(out) < count:
        if is_prime(ell) and all(d % ell for d in discs):
            out.append(ell)
        ell += 1
    return tuple(out)


@dataclass(frozen=True)
class FieldKey:
    kind: str  # "quadratic" or "fingerprint"
    d: int | None = None
    degree: int | None = None
    bits: tuple[bool, ...] = ()
    primes: tuple[int, ...] = ()
    # defining polynomial, kept so two fingerprints can be re-sampled on a common list
    poly: IntPolynomial | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind == "quadratic":
            if self.d is None or self.d == 1 or squarefree_kernel(self.d) != self.d:
                raise InputError(f"quadratic key needs squarefree d != 1, got {self.d}")
        elif self.kind == "fingerprint":
            if len(self.bits) != FINGERPRINT_BITS or len(self.primes) != FINGERPRINT_BITS:
                raise InputError("fingerprint keys carry exactly 64 bits")
        else:
            raise InputError(f"unknown key kind {self.kind!r}")

    @property
    def label(self) -> str:
        if self.kind == "quadratic":
            return f"Q(sqrt({self.d}))"
        word = sum(1 << i for i, b in enumerate(self.bits) if b)
        return f"deg{self.degree}:{word:016x}"

    def defining_polynomial(self) -> IntPolynomial:
        if self.kind == "quadratic":
            return IntPolynomial((-self.d, 0, 1))
        return self.poly

    def __str__(self) -> str:
        return self.label


def _fingerprint(f: IntPolynomial, primes) -> tuple[bool, ...]:
    return tuple(splits_completely_mod(f, ell) for ell in primes)


def fingerprint_key(f: IntPolynomial) -> FieldKey:
    """Fingerprint of the splitting field of f (computed from its radical)."""
    g = radical(f)
    if g.degree < 1:
        raise InputError(f"constant polynomial {f} has no splitting field")
    primes = auxiliary_primes(discriminant(g) * g.leading)
    return FieldKey("fingerprint", degree=g.degree, bits=_fingerprint(g, primes), primes=primes, poly=g)


def frobenius_field_key(w: WeilPolynomial) -> FieldKey:
    """Key of the splitting field of the Frobenius polynomial."""
    if w.g == 1:
        disc = w.trace**2 - 4 * w.q
        if disc == 0:
            raise InputError(f"a^2 = 4p for {w}: Frobenius field is Q")
        return FieldKey("quadratic", d=squarefree_kernel(disc), poly=w.coefficients)
    return fingerprint_key(w.coefficients)


def field_key_of_target(m: IntPolynomial) -> FieldKey:
    """Key of the target field M, given by a defining polynomial."""
    if m.degree < 1:
        raise InputError("target polynomial must have positive degree")
    if m.degree == 1:
        raise InputError(
            "Frobenius fields of non-CM abelian varieties here are never Q at good "
            "ordinary primes; comparison with Q unsupported"
        )
    if m.degree == 2:
        c, b, a = m.coefficients
        disc = b * b - 4 * a * c
        if disc == 0:
            raise InputError(f"{m} is a square; not a quadratic field")
        d = squarefree_kernel(disc)
        if d == 1:
            raise InputError(f"{m} splits over Q; not a quadratic field")
        return FieldKey("quadratic", d=d, poly=m)
    return fingerprint_key(m)


def same_field(a: FieldKey, b: FieldKey) -> bool:
    """Test F_a = F_b. Exact for two quadratic keys; otherwise compared on
    the first 64 primes >= 101 dividing neither discriminant."""
    if a.kind == b.kind == "quadratic":
        return a.d == b.d
    fa, fb = radical(a.defining_polynomial()), radical(b.defining_polynomial())
    primes = auxiliary_primes(discriminant(fa) * fa.leading, discriminant(fb) * fb.leading)
    return _fingerprint(fa, primes) == _fingerprint(fb, primes)
