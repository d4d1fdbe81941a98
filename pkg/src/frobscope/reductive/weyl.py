"""Weyl-group classes of split groups and the maximal tori they label.

A split group's F_p-classes of maximal tori are in bijection with the
conjugacy classes of its Weyl group. For GL_n, SL_n and PGL_n that group is
S_n acting on the cocharacter lattice; for Sp_2g it is the hyperoctahedral
group B_g of signed permutations.

Weyl elements are stored as signed images: ``images[i] = s*(j+1)`` means
``e_i -> s*e_j``.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from math import factorial, lcm, prod

from frobscope.algebra.numtheory import is_prime
from frobscope.errors import InputError, ResourceError

FAMILIES = ("GL", "SL", "PGL", "Sp")

ENUMERATION_GUARD = 10**6


def enumeration_guard() -> int:
    raw = os.environ.get("FROBSCOPE_GUARD_OVERRIDE")
    if raw:
        try:
            return max(int(float(raw)), ENUMERATION_GUARD)
        except ValueError as exc:
            raise InputError(f"FROBSCOPE_GUARD_OVERRIDE={raw!r} is not a number") from exc
    return ENUMERATION_GUARD


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    p: int

    def __post_init__(self):
        fam = {"gl": "GL", "sl": "SL", "pgl": "PGL", "sp": "Sp"}.get(str(self.family).lower())
        if fam is None:
            raise InputError(f"unsupported family {self.family!r}; expected one of {FAMILIES}")
        object.__setattr__(self, "family", fam)
        if self.n < 1:
            raise InputError("matrix size n must be >= 1")
        if fam == "Sp" and self.n % 2:
            raise InputError("Sp needs even n = 2g")
        if not is_prime(self.p):
            raise InputError(f"p = {self.p} is not prime")

    @property
    def rank(self) -> int:
        """Rank of the maximal torus (dimension of the cocharacter lattice)."""
        if self.family == "GL":
            return self.n
        if self.family == "Sp":
            return self.n // 2
        return self.n - 1

    @property
    def weyl_rank(self) -> int:
        """Number of letters the Weyl group permutes."""
        return self.n // 2 if self.family == "Sp" else self.n

    @property
    def label(self) -> str:
        return f"{self.family}_{self.n}(F_{self.p})"

    def order(self) -> int:
        """|G(F_p)| from the standard order formulas."""
        p, n = self.p, self.n
        gl = prod(p**n - p**i for i in range(n))
        if self.family == "GL":
            return gl
        if self.family in ("SL", "PGL"):
            return gl // (p - 1)
        g = n // 2
        return p ** (g * g) * prod(p ** (2 * i) - 1 for i in range(1, g + 1))

    def borel_order(self) -> int:
        p, n = self.p, self.n
        if self.family == "GL":
            return (p - 1) ** n * p ** (n * (n - 1) // 2)
        if self.family in ("SL", "PGL"):
            return (p - 1) ** (n - 1) * p ** (n * (n - 1) // 2)
        g = n // 2
        return (p - 1) ** g * p ** (g * g)

    def is_abelian(self) -> bool:
        return self.n == 1


@dataclass(frozen=True)
class WeylElement:
    family: str
    images: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.images)

    def __matmul__(self, other: WeylElement) -> WeylElement:
        # (self o other)(e_i) = self(other(e_i))
        out = []
        for v in other.images:
            s = 1 if v > 0 else -1
            w = self.images[abs(v) - 1]
            out.append(s * w)
        return WeylElement(self.family, tuple(out))

    def inverse(self) -> WeylElement:
        out = [0] * self.size
        for i, v in enumerate(self.images):
            s = 1 if v > 0 else -1
            out[abs(v) - 1] = s * (i + 1)
        return WeylElement(self.family, tuple(out))

    def signed_cycle_type(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(positive cycle lengths, negative cycle lengths), each descending."""
        seen = [False] * self.size
        pos, neg = [], []
        for start in range(self.size):
            if seen[start]:
                continue
            i, length, sign = start, 0, 1
            while not seen[i]:
                seen[i] = True
                v = self.images[i]
                sign *= 1 if v > 0 else -1
                i = abs(v) - 1
                length += 1
            (pos if sign > 0 else neg).append(length)
        return tuple(sorted(pos, reverse=True)), tuple(sorted(neg, reverse=True))

    def lattice_matrix(self) -> list[list[int]]:
        """Action on the cocharacter lattice, as an integer matrix in a fixed basis."""
        n = self.size
        full = [[0] * n for _ in range(n)]
        for i, v in enumerate(self.images):
            full[abs(v) - 1][i] = 1 if v > 0 else -1
        if self.family in ("GL", "Sp"):
            return full
        if n == 1:
            return []
        if self.family == "SL":
            # sum-zero sublattice, basis b_i = e_i - e_{i+1}; coordinate c_j = v_1 + ... + v_j
            cols = []
            for i in range(n - 1):
                v = [full[r][i] - full[r][i + 1] for r in range(n)]
                cols.append([sum(v[: j + 1]) for j in range(n - 1)])
            return [[cols[c][r] for c in range(n - 1)] for r in range(n - 1)]
        # PGL: Z^n / Z(1,...,1), basis images of e_1..e_{n-1}; e_n = -(e_1+...+e_{n-1})
        cols = []
        for i in range(n - 1):
            v = [full[r][i] for r in range(n)]
            cols.append([v[j] - v[n - 1] for j in range(n - 1)])
        return [[cols[c][r] for c in range(n - 1)] for r in range(n - 1)]


@dataclass(frozen=True)
class TorusClassRecord:
    weyl_rep: WeylElement
    cycle_type: tuple
    relative_weyl_order: int
    torus_order: int
    torus_regular_count: int | None = field(default=None, compare=False)


def _det(mat: list[list[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def torus_order(weyl_rep: WeylElement, p: int) -> int:
    """|T_w(F_p)| = |det(p*w - 1)| on the cocharacter lattice."""
    m = weyl_rep.lattice_matrix()
    r = len(m)
    shifted = [[p * m[i][j] - (1 if i == j else 0) for j in range(r)] for i in range(r)]
    return abs(_det(shifted))


def _partitions(n: int, largest: int | None = None):
    if n == 0:
        yield ()
        return
    largest = n if largest is None else largest
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _cycle_rep(pos: tuple[int, ...], neg: tuple[int, ...], family: str) -> WeylElement:
    images = []
    start = 0
    for lengths, sign in ((pos, 1), (neg, -1)):
        for k in lengths:
            for i in range(k - 1):
                images.append(start + i + 2)
            images.append(sign * (start + 1))
            start += k
    return WeylElement(family, tuple(images))


def _centralizer_order(lengths: tuple[int, ...], weight: int) -> int:
    out = 1
    for k, m in Counter(lengths).items():
        out *= (weight * k) ** m * factorial(m)
    return out


def weyl_twisted_classes(spec: GroupSpec) -> list[TorusClassRecord]:
    """One record per Weyl conjugacy class (split case, so twisting is trivial)."""
    m = spec.weyl_rank
    records = []
    if spec.family == "Sp":
        for a in range(m, -1, -1):
            for pos in _partitions(a):
                for neg in _partitions(m - a):
                    w = _cycle_rep(pos, neg, spec.family)
                    cent = _centralizer_order(pos, 2) * _centralizer_order(neg, 2)
                    records.append(
                        TorusClassRecord(w, (pos, neg), cent, torus_order(w, spec.p))
                    )
    else:
        for lam in _partitions(m):
            w = _cycle_rep(lam, (), spec.family)
            records.append(
                TorusClassRecord(w, lam, _centralizer_order(lam, 1), torus_order(w, spec.p))
            )
    return records


def class_equation(spec: GroupSpec) -> Fraction:
    return sum((Fraction(1, r.relative_weyl_order) for r in weyl_twisted_classes(spec)), Fraction(0))


def weyl_group_order(spec: GroupSpec) -> int:
    m = spec.weyl_rank
    return 2**m * factorial(m) if spec.family == "Sp" else factorial(m)


def all_weyl_elements(spec: GroupSpec):
    """Every element of W (brute-force oracle use only)."""
    from itertools import permutations

    m = spec.weyl_rank
    signs = product((1, -1), repeat=m) if spec.family == "Sp" else [(1,) * m]
    signs = list(signs)
    for perm in permutations(range(1, m + 1)):
        for s in signs:
            yield WeylElement(spec.family, tuple(si * v for si, v in zip(s, perm)))


# --- explicit torus points --------------------------------------------------

TORUS_GUARD = 2 * 10**6


def torus_point_counts(spec: GroupSpec, record: TorusClassRecord) -> tuple[int, int]:
    """(|T(F_p)|, |T(F_p)^reg|) by listing the torus points' eigenvalues.

    Every eigenvalue lives in F_Q^x with Q = p^L for L a common multiple of
    the cycle lengths (doubled for negative cycles), so a point is recorded
    by discrete-log exponents mod Q - 1. A point is regular when its
    eigenvalues in the natural representation are pairwise distinct.
    """
    p = spec.p
    pos, neg = (record.cycle_type if spec.family == "Sp" else (record.cycle_type, ()))
    degs = list(pos) + [2 * k for k in neg]
    L = reduce(lcm, degs, 1)
    Q1 = p**L - 1

    factors = []  # per cycle: list of eigenvalue-exponent tuples
    for k in pos:
        step = Q1 // (p**k - 1)
        choices = []
        for t in range(p**k - 1):
            e = step * t
            eig = [e * p**i % Q1 for i in range(k)]
            if spec.family == "Sp":
                eig += [(-x) % Q1 for x in eig]
            choices.append(tuple(eig))
        factors.append(choices)
    for k in neg:
        step = Q1 // (p ** (2 * k) - 1)
        choices = []
        for t in range(0, p ** (2 * k) - 1, p**k - 1):
            e = step * t
            choices.append(tuple(e * p**i % Q1 for i in range(2 * k)))
        factors.append(choices)

    size = prod(len(c) for c in factors)
    if size > TORUS_GUARD:
        raise ResourceError(f"torus of {spec.label} has {size} points; guard {TORUS_GUARD}")

    total = regular = 0
    for combo in product(*factors):
        eig = [x for part in combo for x in part]
        if spec.family == "SL" and sum(eig) % Q1:
            continue
        total += 1
        if len(set(eig)) == len(eig):
            regular += 1
    if spec.family == "PGL":
        # scalars act freely and preserve regularity
        assert total % (p - 1) == 0 and regular % (p - 1) == 0
        total //= p - 1
        regular //= p - 1
    return total, regular
