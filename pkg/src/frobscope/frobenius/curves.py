"""Curves over Q and their Frobenius polynomials at good primes.

Point counts are naive Legendre sums: O(p) for an elliptic curve, O(p^2)
for the F_{p^2} count a genus-2 curve needs. Both are vectorized with
numpy, one prime at a time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from frobscope.algebra.numtheory import least_nonresidue
from frobscope.algebra.polynomial import IntPolynomial, discriminant
from frobscope.errors import ConsistencyError, InputError

_LINE = re.compile(r"^\s*(elliptic|genus2)\s+(.*?)\s*$")


@dataclass(frozen=True)
class CurveSpec:
    """y^2 = f(x) over Q. For elliptic curves f = x^3 + a x + b."""

    kind: str
    f: IntPolynomial
    source: str = ""

    def __post_init__(self):
        if self.kind not in ("elliptic", "genus2"):
            raise InputError(f"unknown curve kind {self.kind!r}")
        deg = self.f.degree
        if self.kind == "elliptic" and (deg != 3 or self.f.leading != 1 or self.f.coefficients[2] != 0):
            raise InputError("elliptic curves are given in short form x^3 + a*x + b")
        if self.kind == "genus2" and deg not in (5, 6):
            raise InputError(f"genus-2 model needs deg f in {{5, 6}}, got {deg}")
        if self.disc == 0:
            raise InputError(f"singular model: disc({self.f}) = 0")

    @classmethod
    def elliptic(cls, a: int, b: int) -> CurveSpec:
        return cls("elliptic", IntPolynomial((b, a, 0, 1)), f"elliptic a={a} b={b}")

    @classmethod
    def genus2(cls, coeffs) -> CurveSpec:
        f = IntPolynomial(tuple(coeffs))
        return cls("genus2", f, "genus2 f=" + ",".join(map(str, f.coefficients)))

    @classmethod
    def parse(cls, line: str) -> CurveSpec:
        """Read `elliptic a=1 b=1` or `genus2 f=1,0,0,0,0,1` (lowest degree first)."""
        m = _LINE.match(line)
        if not m:
            raise InputError(f"malformed curve line: {line!r}")
        kind, rest = m.groups()
        fields = {}
        for tok in rest.split():
            key, sep, val = tok.partition("=")
            if not sep or key in fields:
                raise InputError(f"malformed curve line: {line!r}")
            fields[key] = val
        try:
            if kind == "elliptic":
                if set(fields) != {"a", "b"}:
                    raise InputError(f"elliptic line needs a= and b=: {line!r}")
                return cls.elliptic(int(fields["a"]), int(fields["b"]))
            if set(fields) != {"f"}:
                raise InputError(f"genus2 line needs f=: {line!r}")
            return cls.genus2(int(c) for c in fields["f"].split(","))
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise InputError(f"{exc} (line: {line!r})") from exc
            raise InputError(f"malformed curve line: {line!r}") from exc

    @property
    def genus(self) -> int:
        return 1 if self.kind == "elliptic" else 2

    @cached_property
    def disc(self) -> int:
        return discriminant(self.f)

    def is_good(self, p: int) -> bool:
        """p >= 5 and p divides neither 2*disc(f) nor the leading coefficient.

        The model discriminant stands in for the conductor, so this excludes
        a finite superset of the bad primes.
        """
        if p < 5:
            return False
        return (2 * self.disc * self.f.leading) % p != 0

    def __str__(self) -> str:
        return self.source or f"{self.kind} f={self.f}"


@dataclass(frozen=True)
class WeilPolynomial:
    """Characteristic polynomial of Frobenius, lowest degree first."""

    coefficients: IntPolynomial
    q: int
    g: int

    def __post_init__(self):
        c = self.coefficients.coefficients
        if len(c) != 2 * self.g + 1 or c[-1] != 1:
            raise InputError(f"Weil polynomial of genus {self.g} must be monic of degree {2 * self.g}")
        if c[0] != self.q**self.g:
            raise InputError(f"constant term {c[0]} != q^g = {self.q ** self.g}")
        for i in range(self.g):
            if c[i] != self.q ** (self.g - i) * c[2 * self.g - i]:
                raise InputError(f"functional equation fails at T^{i}")

    @classmethod
    def elliptic(cls, a: int, p: int) -> WeilPolynomial:
        return cls(IntPolynomial((p, -a, 1)), p, 1)

    @classmethod
    def genus2(cls, a1: int, a2: int, p: int) -> WeilPolynomial:
        return cls(IntPolynomial((p * p, -p * a1, a2, -a1, 1)), p, 2)

    @property
    def trace(self) -> int:
        return -self.coefficients.coefficients[-2]

    def roots(self) -> np.ndarray:
        return np.roots(self.coefficients.coefficients[::-1])

    def __str__(self) -> str:
        return str(self.coefficients).replace("x", "T")


def _chi_table(p: int) -> np.ndarray:
    """Legendre symbol of every residue mod p as an int8 array."""
    x = np.arange(p, dtype=np.int64)
    chi = np.full(p, -1, dtype=np.int8)
    chi[x * x % p] = 1
    chi[0] = 0
    return chi


def _eval_mod(coeffs, x: np.ndarray, p: int) -> np.ndarray:
    acc = np.zeros_like(x)
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def ec_trace(curve: CurveSpec, p: int) -> int:
    """a_p = p + 1 - #E(F_p) by a Legendre sum over x mod p."""
    if curve.kind != "elliptic":
        raise InputError("ec_trace needs an elliptic curve")
    if not curve.is_good(p):
        raise InputError(f"p = {p} is bad or too small for {curve}")
    b, a4 = curve.f.coefficients[0] % p, curve.f.coefficients[1] % p
    x = np.arange(p, dtype=np.int64)
    sq = x * x % p
    chi = np.full(p, -1, dtype=np.int8)
    chi[sq] = 1
    chi[0] = 0
    a = -int(chi[((sq + a4) * x + b) % p].sum(dtype=np.int64))
    if a * a > 4 * p:
        raise ConsistencyError(f"|a_{p}| = {abs(a)} violates the Hasse bound")
    return a


def count_points_fp(f: IntPolynomial, p: int) -> int:
    """#C(F_p) on the smooth model of y^2 = f(x), points at infinity included."""
    chi = _chi_table(p)
    x = np.arange(p, dtype=np.int64)
    affine = p + int(chi[_eval_mod(f.coefficients, x, p)].sum(dtype=np.int64))
    return affine + _points_at_infinity(f, p, square_lead=chi[f.leading % p] == 1)


def _points_at_infinity(f: IntPolynomial, p: int, square_lead: bool) -> int:
    if f.degree % 2:
        return 1
    return 2 if square_lead else 0


def count_points_fp2(f: IntPolynomial, p: int, block: int = 1 << 21) -> int:
    """#C(F_{p^2}). z in F_{p^2} is a square iff its norm is a square in F_p."""
    chi = _chi_table(p)
    n = least_nonresidue(p)
    coeffs = [c % p for c in f.coefficients]
    a = np.arange(p, dtype=np.int64)
    rows = max(1, block // p)
    total = 0
    for b0 in range(0, p, rows):
        b = np.arange(b0, min(p, b0 + rows), dtype=np.int64)
        xa = np.broadcast_to(a, (len(b), p)).ravel()
        xb = np.repeat(b, p)
        # Horner in F_p[theta], theta^2 = n
        ra = np.zeros_like(xa)
        rb = np.zeros_like(xa)
        for c in reversed(coeffs):
            ra, rb = (ra * xa + n * (rb * xb % p) + c) % p, (ra * xb + rb * xa) % p
        norm = (ra * ra - n * (rb * rb % p)) % p
        total += int(chi[norm].sum(dtype=np.int64))
    affine = p * p + total
    # the leading coefficient lies in F_p, hence is a square in F_{p^2}
    return affine + _points_at_infinity(f, p * p, square_lead=True)


def genus2_lpoly(curve: CurveSpec, p: int) -> WeilPolynomial:
    """T^4 - a1 T^3 + a2 T^2 - p a1 T + p^2 from #C(F_p) and #C(F_{p^2}).

    With s_k = p^k + 1 - #C(F_{p^k}) = sum of k-th powers of the Frobenius
    roots, Newton's identities give a1 = s_1 and a2 = (s_1^2 - s_2) / 2.
    """
    if curve.kind != "genus2":
        raise InputError("genus2_lpoly needs a genus-2 curve")
    if not curve.is_good(p):
        raise InputError(f"p = {p} is bad or too small for {curve}")
    s1 = p + 1 - count_points_fp(curve.f, p)
    s2 = p * p + 1 - count_points_fp2(curve.f, p)
    if (s1 * s1 - s2) % 2:
        raise ConsistencyError(f"odd s1^2 - s2 at p = {p}")
    w = WeilPolynomial.genus2(s1, (s1 * s1 - s2) // 2, p)
    check_weil_bound(w)
    return w


def check_weil_bound(w: WeilPolynomial) -> None:
    """Raise ConsistencyError unless every root has absolute value sqrt(q).

    Exact integer test. In genus 2 the quartic equals T^2 h(T + q/T) with
    h(y) = y^2 - a1 y + (a2 - 2q), and the roots lie on |T| = sqrt(q) iff both
    roots of h are real and lie in [-2 sqrt(q), 2 sqrt(q)].
    """
    q = w.q
    a1 = w.trace
    if w.g == 1:
        if a1 * a1 > 4 * q:
            raise ConsistencyError(f"|a| = {abs(a1)} exceeds 2*sqrt({q})")
        return
    a2 = w.coefficients.coefficients[2]
    c = a2 - 2 * q
    ok = (
        a1 * a1 - 4 * c >= 0  # real roots
        and a1 * a1 <= 16 * q  # vertex inside the interval
        and 2 * q + a2 >= 0  # h(+-2 sqrt q) = 2q + a2 -+ 2 a1 sqrt q >= 0
        and (2 * q + a2) ** 2 >= 4 * a1 * a1 * q
    )
    if not ok:
        raise ConsistencyError(f"{w} has a root off the circle |T| = sqrt({q})")


def frobenius_polynomial(curve: CurveSpec, p: int) -> WeilPolynomial:
    if curve.kind == "elliptic":
        return WeilPolynomial.elliptic(ec_trace(curve, p), p)
    return genus2_lpoly(curve, p)
