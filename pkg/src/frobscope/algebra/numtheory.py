"""Elementary integer routines: primality, sieving, residue symbols, kernels."""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

import numpy as np

from frobscope.errors import IncompleteFactorizationError, InputError, ResourceError

PRIMES_GUARD = 10**8

# trial-division ceiling used by squarefree_kernel
TRIAL_BOUND = 1 << 20


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, plenty for our ranges."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
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


def primes_up_to(X: int) -> list[int]:
    """All primes <= X in ascending order (sieve of Eratosthenes)."""
    if X < 2:
        raise InputError(f"primes_up_to needs X >= 2, got {X}")
    if X > PRIMES_GUARD:
        raise ResourceError(f"primes_up_to: X = {X} exceeds guard {PRIMES_GUARD}")
    return _sieve(int(X)).tolist()


@lru_cache(maxsize=8)
def _sieve(X: int) -> np.ndarray:
    flags = np.ones(X + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for q in range(3, isqrt(X) + 1, 2):
        if flags[q]:
            flags[q * q :: 2 * q] = False
    out = np.flatnonzero(flags)
    out.flags.writeable = False
    return out


def _require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise InputError(f"{p} is not an odd prime")


def legendre_symbol(a: int, p: int) -> int:
    _require_odd_prime(p)
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def least_nonresidue(p: int) -> int:
    """Smallest n in 2, 3, ... that is a quadratic non-residue mod p."""
    _require_odd_prime(p)
    n = 2
    while legendre_symbol(n, p) != -1:
        n += 1
    return n


def squarefree_kernel(n: int, bound: int = TRIAL_BOUND) -> int:
    """Return the squarefree d with n = d * m**2 and sign(d) = sign(n).

    Trial division runs up to ``bound``. A leftover cofactor c has every
    prime factor above ``bound``; when c < bound**3 it is a prime, a
    product of two distinct primes, or a prime square, and a perfect-square
    test settles which. Larger cofactors raise rather than guess.
    """
    if n == 0:
        raise InputError("squarefree_kernel(0) is undefined")
    sign = -1 if n < 0 else 1
    m = abs(n)
    d = 1
    q = 2
    while q * q <= m and q <= bound:
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            if e % 2:
                d *= q
        q += 1 if q == 2 else 2
    if m > 1:
        if q * q > m:
            d *= m
        elif m < bound**3:
            r = isqrt(m)
            if r * r != m:
                d *= m
        else:
            raise IncompleteFactorizationError(
                f"cofactor {m} of {n} not resolved by trial division to {bound}"
            )
    return sign * d


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of a nonzero integer by trial division."""
    n = abs(n)
    if n == 0:
        raise InputError("prime_factors(0) is undefined")
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out.append(n)
    return out


def p_part_free(n: int, p: int) -> int:
    """n with every factor of p removed."""
    while n % p == 0:
        n //= p
    return n
