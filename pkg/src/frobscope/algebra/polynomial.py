"""Integer polynomials and the small amount of F_l[x] arithmetic we need.

Coefficient lists are stored lowest degree first throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from frobscope.errors import InputError, RamifiedPrimeError


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


@dataclass(frozen=True)
class IntPolynomial:
    coefficients: tuple[int, ...]

    def __init__(self, coefficients):
        cs = _trim(int(c) for c in coefficients)
        object.__setattr__(self, "coefficients", tuple(cs))

    @classmethod
    def parse(cls, text: str) -> IntPolynomial:
        """Parse a comma-separated coefficient list, lowest degree first."""
        try:
            return cls(int(t) for t in text.replace(" ", "").split(",") if t != "")
        except ValueError as exc:
            raise InputError(f"bad polynomial coefficients {text!r}") from exc

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return IntPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coefficients)

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(i * c for i, c in enumerate(self.coefficients) if i)

    def content(self) -> int:
        g = 0
        for c in self.coefficients:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPolynomial:
        """Divide out the content and make the leading coefficient positive."""
        g = self.content()
        if g == 0:
            return self
        if self.leading < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coefficients)

    def reflect(self) -> IntPolynomial:
        """f(-x), used when comparing Weil polynomials up to T -> -T."""
        return IntPolynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coefficients))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}{'*' if mono else ''}{mono}"
            terms.append(("-" if c < 0 else "+", s))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, s in terms[1:]:
            out += f" {sign} {s}"
        return out


# --- rational polynomial helpers (lists of Fractions, lowest first) --------


def _q_divmod(a, b):
    a = _trim(Fraction(c) for c in a)
    b = _trim(Fraction(c) for c in b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        coef = a[-1] / b[-1]
        q[shift] = coef
        for i, c in enumerate(b):
            a[i + shift] -= coef * c
        a = _trim(a)
    return _trim(q), a


def _q_gcd(a, b):
    a = _trim(Fraction(c) for c in a)
    b = _trim(Fraction(c) for c in b)
    while b:
        _, r = _q_divmod(a, b)
        a, b = b, r
    return a


def _to_int_primitive(cs) -> IntPolynomial:
    den = 1
    for c in cs:
        den = den * c.denominator // gcd(den, c.denominator)
    return IntPolynomial(int(c * den) for c in cs).primitive()


def radical(f: IntPolynomial) -> IntPolynomial:
    """Squarefree part f / gcd(f, f') as a primitive integer polynomial."""
    if f.degree < 1:
        return f
    g = _q_gcd(f.coefficients, f.derivative().coefficients)
    if len(g) <= 1:
        return f.primitive()
    q, r = _q_divmod(f.coefficients, g)
    assert not r
    return _to_int_primitive(q)


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Resultant via the Euclidean recursion over Q."""
    a = [Fraction(c) for c in f.coefficients]
    b = [Fraction(c) for c in g.coefficients]
    if not a or not b:
        return 0
    res = Fraction(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            res *= b[0] ** da
            break
        _, r = _q_divmod(a, b)
        if not r:
            return 0
        dr = len(r) - 1
        res *= b[-1] ** (da - dr)
        if da % 2 == 1 and db % 2 == 1:
            res = -res
        a, b = b, r
    assert res.denominator == 1
    return int(res)


def discriminant(f: IntPolynomial) -> int:
    n = f.degree
    if n < 1:
        raise InputError("discriminant of a constant polynomial")
    if n == 1:
        return 1
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    lc = f.leading
    assert r % lc == 0
    return sign * r // lc


# --- F_l[x] ----------------------------------------------------------------


def reduce_mod(f, ell: int) -> list[int]:
    cs = f.coefficients if isinstance(f, IntPolynomial) else f
    return _trim(c % ell for c in cs)


def _monic(a, ell):
    inv = pow(a[-1], -1, ell)
    return [c * inv % ell for c in a]


def divmod_mod(a, b, ell):
    a = list(a)
    inv = pow(b[-1], -1, ell)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 1)
    for shift in range(len(a) - 1 - db, -1, -1):
        coef = a[shift + db] * inv % ell
        if coef:
            q[shift] = coef
            for i, c in enumerate(b):
                a[i + shift] = (a[i + shift] - coef * c) % ell
    return _trim(q), _trim(a[:db])


def gcd_mod(a, b, ell):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, divmod_mod(a, b, ell)[1]
    return _monic(a, ell) if a else a


def mulmod(a, b, m, ell):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return divmod_mod([c % ell for c in out], m, ell)[1]


def powmod_x(k: int, m, ell):
    """x**k reduced modulo m over F_l."""
    result = [1]
    base = divmod_mod([0, 1], m, ell)[1]
    while k:
        if k & 1:
            result = mulmod(result, base, m, ell)
        base = mulmod(base, base, m, ell)
        k >>= 1
    return result


def _sub(a, b, ell):
    n = max(len(a), len(b))
    return _trim(
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % ell for i in range(n)
    )


def is_squarefree_mod(f, ell: int) -> bool:
    a = reduce_mod(f, ell)
    if len(a) <= 2:
        return bool(a)
    da = _trim((i * c) % ell for i, c in enumerate(a) if i)
    return len(gcd_mod(a, da, ell)) == 1


def factor_degrees_mod(f, ell: int) -> list[int]:
    """Degrees of the irreducible factors of f mod l (distinct-degree factorization).

    The result is sorted ascending.
    """
    a = reduce_mod(f, ell)
    if not a:
        raise InputError(f"polynomial vanishes mod {ell}")
    if len(a) == 1:
        return []
    if not is_squarefree_mod(a, ell):
        raise RamifiedPrimeError(f"{f} is not squarefree mod {ell}")
    a = _monic(a, ell)
    degrees = []
    h = [0, 1]
    d = 0
    while len(a) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod_poly(h, ell, a, ell)
        g = gcd_mod(a, _sub(h, [0, 1], ell), ell)
        k = len(g) - 1
        if k:
            degrees.extend([d] * (k // d))
            a = divmod_mod(a, g, ell)[0]
            h = divmod_mod(h, a, ell)[1]
    if len(a) > 1:
        degrees.append(len(a) - 1)
    return sorted(degrees)


def _powmod_poly(base, k, m, ell):
    result = [1]
    base = divmod_mod(base, m, ell)[1]
    while k:
        if k & 1:
            result = mulmod(result, base, m, ell)
        base = mulmod(base, base, m, ell)
        k >>= 1
    return result


def splits_completely_mod(f, ell: int) -> bool:
    return all(d == 1 for d in factor_degrees_mod(f, ell))
