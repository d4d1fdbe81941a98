"""Exhaustive enumeration of small matrix groups over F_p.

Elements are held as one int64 array of shape (N, n, n) so that powers,
conjugations and characteristic polynomials run batched. PGL_n elements
are stored as GL_n representatives scaled so that their first nonzero
entry (row-major) is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from frobscope.algebra.numtheory import prime_factors
from frobscope.errors import InputError, ResourceError
from frobscope.reductive.weyl import GroupSpec, enumeration_guard


def _symplectic_form(n: int) -> np.ndarray:
    """Antidiagonal form with omega(e_i, e_{n+1-i}) = 1 for i <= n/2.

    With this form the upper-triangular symplectic matrices form a Borel.
    """
    J = np.zeros((n, n), dtype=np.int64)
    for i in range(n // 2):
        J[i, n - 1 - i] = 1
        J[n - 1 - i, i] = -1
    return J


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.matmul(a, b) % p


def _inverse_table(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, -1, p)
    return inv


def normalize_projective(mats: np.ndarray, p: int) -> np.ndarray:
    """Scale each matrix so its first nonzero entry (row-major) is 1."""
    flat = mats.reshape(len(mats), -1)
    first = np.argmax(flat != 0, axis=1)
    lead = flat[np.arange(len(flat)), first]
    scale = _inverse_table(p)[lead]
    return (flat * scale[:, None] % p).reshape(mats.shape)


def _det_mod(mats: np.ndarray, p: int) -> np.ndarray:
    n = mats.shape[-1]
    if n == 1:
        return mats[:, 0, 0] % p
    if n == 2:
        return (mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]) % p
    if n == 3:
        m = mats
        return (
            m[:, 0, 0] * (m[:, 1, 1] * m[:, 2, 2] - m[:, 1, 2] * m[:, 2, 1])
            - m[:, 0, 1] * (m[:, 1, 0] * m[:, 2, 2] - m[:, 1, 2] * m[:, 2, 0])
            + m[:, 0, 2] * (m[:, 1, 0] * m[:, 2, 1] - m[:, 1, 1] * m[:, 2, 0])
        ) % p
    raise InputError("determinant filter implemented for n <= 3")


def charpoly_batch(mats: np.ndarray, p: int) -> np.ndarray:
    """Monic characteristic polynomials mod p, lowest coefficient first.

    Faddeev-LeVerrier over Z on the integer lifts; its divisions are exact
    because the characteristic polynomial of an integer matrix is integral.
    """
    N, n, _ = mats.shape
    A = mats.astype(np.int64)
    coeffs = np.zeros((N, n + 1), dtype=np.int64)
    coeffs[:, n] = 1
    eye = np.broadcast_to(np.eye(n, dtype=np.int64), A.shape)
    M = np.zeros_like(A)
    c_prev = np.ones(N, dtype=np.int64)
    for k in range(1, n + 1):
        M = np.matmul(A, M) + c_prev[:, None, None] * eye
        AM = np.matmul(A, M)
        tr = np.trace(AM, axis1=1, axis2=2)
        assert np.all(tr % k == 0)
        c = -tr // k
        coeffs[:, n - k] = c
        c_prev = c
    return coeffs % p


@dataclass
class GroupTable:
    """All elements of G(F_p) with cached orders and characteristic polynomials."""

    spec: GroupSpec
    elements: np.ndarray

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def projective(self) -> bool:
        return self.spec.family == "PGL"

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = matmul_mod(a, b, self.spec.p)
        return normalize_projective(out, self.spec.p) if self.projective else out

    def encode(self, mats: np.ndarray) -> np.ndarray:
        """Injective integer code of each matrix (base-p digits)."""
        p = self.spec.p
        flat = mats.reshape(len(mats), -1)
        weights = p ** np.arange(flat.shape[1], dtype=np.int64)
        return flat @ weights

    @cached_property
    def codes(self) -> np.ndarray:
        return self.encode(self.elements)

    def is_identity(self, mats: np.ndarray) -> np.ndarray:
        n = self.spec.n
        eye = np.eye(n, dtype=np.int64)
        return np.all(mats == eye, axis=(1, 2))

    def power(self, k) -> np.ndarray:
        """Batched x**k for all elements; k may be a scalar or per-element array."""
        ks = np.broadcast_to(np.asarray(k, dtype=np.int64), (len(self),)).copy()
        n = self.spec.n
        result = np.broadcast_to(np.eye(n, dtype=np.int64), self.elements.shape).copy()
        base = self.elements.copy()
        while np.any(ks):
            odd = (ks & 1).astype(bool)[:, None, None]
            result = np.where(odd, self.multiply(result, base), result)
            ks >>= 1
            if np.any(ks):
                base = self.multiply(base, base)
        return result

    @cached_property
    def orders(self) -> np.ndarray:
        """Element orders, found by stripping prime factors off |G|."""
        order = np.full(len(self), len(self), dtype=np.int64)
        for q in prime_factors(len(self)):
            while True:
                cand = np.where(order % q == 0, order // q, order)
                hit = (order % q == 0) & self.is_identity(self.power(cand))
                if not np.any(hit):
                    break
                order = np.where(hit, cand, order)
        return order

    @cached_property
    def charpolys(self) -> np.ndarray:
        return charpoly_batch(self.elements, self.spec.p)

    def inverse_all(self, mats: np.ndarray) -> np.ndarray:
        """Inverses via adjugate-free Gauss-Jordan, one matrix at a time."""
        p = self.spec.p
        out = np.empty_like(mats)
        for idx, m in enumerate(mats):
            out[idx] = _inv_mod(m, p)
        return normalize_projective(out, p) if self.projective else out

    @cached_property
    def borel_mask(self) -> np.ndarray:
        """Standard Borel: upper-triangular elements."""
        n = self.spec.n
        lower = np.tril_indices(n, -1)
        return np.all(self.elements[:, lower[0], lower[1]] == 0, axis=1)


def _inv_mod(m: np.ndarray, p: int) -> np.ndarray:
    n = m.shape[0]
    a = np.concatenate([m % p, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r, col] % p)
        a[[col, piv]] = a[[piv, col]]
        a[col] = a[col] * pow(int(a[col, col]), -1, p) % p
        for r in range(n):
            if r != col and a[r, col]:
                a[r] = (a[r] - a[r, col] * a[col]) % p
    return a[:, n:]


def _all_matrices(n: int, p: int) -> np.ndarray:
    count = p ** (n * n)
    if count > 5 * 10**7:
        raise ResourceError(f"{count} candidate {n}x{n} matrices over F_{p}")
    digits = np.arange(count, dtype=np.int64)
    out = np.empty((count, n * n), dtype=np.int64)
    for i in range(n * n):
        out[:, i] = digits % p
        digits //= p
    return out.reshape(count, n, n)


def _symplectic_matrices(n: int, p: int) -> np.ndarray:
    """Sp_n(F_p) by choosing the columns of a symplectic basis pair by pair."""
    J = _symplectic_form(n)
    g = n // 2
    vecs = np.array(list(product(range(p), repeat=n)), dtype=np.int64)
    vecs = vecs[np.any(vecs != 0, axis=1)]
    form = (vecs @ J @ vecs.T) % p  # form[i, j] = omega(v_i, v_j)

    # columns ordered e_1, ..., e_g, f_g, ..., f_1 in matrix position
    results = []

    def extend(chosen_e, chosen_f, allowed):
        k = len(chosen_e)
        if k == g:
            cols = chosen_e + chosen_f[::-1]
            results.append(vecs[cols].T)
            return
        for i in np.flatnonzero(allowed):
            # f partner: omega(e, f) = 1 and orthogonal to everything chosen before
            f_ok = allowed & (form[i] == 1)
            for j in np.flatnonzero(f_ok):
                nxt = allowed & (form[i] == 0) & (form[j] == 0)
                extend(chosen_e + [i], chosen_f + [j], nxt)

    extend([], [], np.ones(len(vecs), dtype=bool))
    out = np.array(results, dtype=np.int64)
    chk = np.matmul(np.matmul(np.transpose(out, (0, 2, 1)), J), out) % p
    assert np.all(chk == J % p)
    return out


def enumerate_group(spec: GroupSpec) -> GroupTable:
    """Every element of G(F_p) for GL_n, SL_n, PGL_n (n <= 3) and Sp_n."""
    expected = spec.order()
    guard = enumeration_guard()
    if expected > guard:
        raise ResourceError(f"|{spec.label}| = {expected} exceeds enumeration guard {guard}")
    p, n = spec.p, spec.n
    if spec.family == "Sp":
        if p == 2:
            raise InputError("Sp enumeration implemented for odd p only")
        mats = _symplectic_matrices(n, p)
    else:
        if n > 3:
            raise InputError("GL/SL/PGL enumeration implemented for n <= 3")
        cand = _all_matrices(n, p)
        det = _det_mod(cand, p)
        if spec.family == "GL":
            mats = cand[det != 0]
        elif spec.family == "SL":
            mats = cand[det == 1]
        else:
            inv = cand[det != 0]
            flat = inv.reshape(len(inv), -1)
            first = flat[np.arange(len(flat)), np.argmax(flat != 0, axis=1)]
            mats = inv[first == 1]
    if len(mats) != expected:
        raise AssertionError(f"enumerated {len(mats)} elements of {spec.label}, expected {expected}")
    mats.flags.writeable = False
    return GroupTable(spec, mats)
