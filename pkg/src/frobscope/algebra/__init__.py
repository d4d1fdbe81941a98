from frobscope.algebra.fields import PrimeFieldElement, QuadExtElement
from frobscope.algebra.numtheory import (
    is_prime,
    least_nonresidue,
    legendre_symbol,
    prime_factors,
    primes_up_to,
    squarefree_kernel,
)
from frobscope.algebra.polynomial import (
    IntPolynomial,
    discriminant,
    factor_degrees_mod,
    radical,
    resultant,
    splits_completely_mod,
)

__all__ = [
    "IntPolynomial",
    "PrimeFieldElement",
    "QuadExtElement",
    "discriminant",
    "factor_degrees_mod",
    "is_prime",
    "least_nonresidue",
    "legendre_symbol",
    "prime_factors",
    "primes_up_to",
    "radical",
    "resultant",
    "splits_completely_mod",
    "squarefree_kernel",
]
