"""Exact volumes of regular-semisimple classes and bounding sets by enumeration."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, sqrt

import numpy as np

from frobscope.algebra.numtheory import legendre_symbol, p_part_free
from frobscope.algebra.polynomial import factor_degrees_mod, is_squarefree_mod
from frobscope.errors import InputError, ResourceError
from frobscope.reductive.groups import GroupTable, enumerate_group, normalize_projective
from frobscope.reductive.weyl import (
    GroupSpec,
    TorusClassRecord,
    torus_point_counts,
    weyl_twisted_classes,
)

PGL2_COSET_MAX_P = 13


@dataclass
class VolumeReport:
    group: GroupSpec
    group_order: int
    per_torus: list[tuple[TorusClassRecord, Fraction]]
    regular_volume: Fraction
    bounding_volume: Fraction
    per_coset: list[Fraction] | None = None
    # element counts backing the volumes, keyed by torus cycle type
    class_counts: dict = field(default_factory=dict)
    semisimple_volume: Fraction | None = None


def _rref_key(cols: np.ndarray, p: int) -> tuple:
    """Canonical reduced row-echelon form of the row space of ``cols.T``."""
    a = [list(map(int, r)) for r in cols.T]
    rows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if a[i][c] % p), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] % p:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return tuple(tuple(row) for row in a)


def flag_key(g: np.ndarray, p: int) -> tuple:
    """The full flag g*(e_1 < e_1,e_2 < ...), as a tuple of RREF subspaces."""
    n = g.shape[0]
    return tuple(_rref_key(g[:, :k], p) for k in range(1, n))


def borel_coset_representatives(table: GroupTable) -> np.ndarray:
    """One element g per coset gB, found by walking flags g*F_0.

    Elements are visited in a fixed strided order and the walk stops once
    |G/B| distinct flags have been seen.
    """
    p = table.spec.p
    N = len(table)
    expected = table.spec.order() // table.spec.borel_order()
    stride = next(s for s in range(7919, 2 * N + 7920) if gcd(s, N) == 1)
    seen = {}
    for step in range(N):
        idx = step * stride % N
        key = flag_key(table.elements[idx], p)
        if key not in seen:
            seen[key] = idx
            if len(seen) == expected:
                break
    if len(seen) != expected:
        raise AssertionError(f"found {len(seen)} flags, expected |G/B| = {expected}")
    return table.elements[sorted(seen.values())]


def bounding_set_mask(table: GroupTable) -> np.ndarray:
    """Elements lying in some Borel gBg^-1, by explicit union of conjugates."""
    B = table.elements[table.borel_mask]
    if len(B) != table.spec.borel_order():
        raise AssertionError(f"|B| = {len(B)}, expected {table.spec.borel_order()}")
    reps = borel_coset_representatives(table)
    inv = table.inverse_all(reps)
    codes = []
    for g, gi in zip(reps, inv):
        conj = table.multiply(table.multiply(np.broadcast_to(g, B.shape), B), np.broadcast_to(gi, B.shape))
        codes.append(table.encode(conj))
    union = np.unique(np.concatenate(codes))
    return np.isin(table.codes, union)


def semisimple_mask(table: GroupTable) -> np.ndarray:
    return table.orders % table.spec.p != 0


def regular_mask(table: GroupTable) -> np.ndarray:
    """Semisimple with squarefree characteristic polynomial (natural rep)."""
    p = table.spec.p
    ss = semisimple_mask(table)
    sqf = _squarefree_flags(table.charpolys, p)
    return ss & sqf


def _squarefree_flags(polys: np.ndarray, p: int) -> np.ndarray:
    uniq, inverse = np.unique(polys, axis=0, return_inverse=True)
    flags = np.array([is_squarefree_mod([int(c) for c in row], p) for row in uniq])
    return flags[inverse.reshape(-1)]


def _sp4_signed_type(poly: tuple[int, ...], p: int):
    """Weyl class of a regular semisimple element of Sp_4 from its charpoly.

    The palindromic quartic x^4 + c x^3 + d x^2 + c x + 1 equals
    x^2 * Q(x + 1/x) with Q(y) = y^2 + c y + (d - 2); the roots of Q are the
    traces of the eigenvalue pairs {a, 1/a}.
    """
    c, d = poly[3], poly[2]
    disc = (c * c - 4 * (d - 2)) % p
    if legendre_symbol(disc, p) == -1:
        degs = factor_degrees_mod(list(poly), p)
        return ((2,), ()) if degs == [2, 2] else ((), (2,))
    root = next(x for x in range(p) if x * x % p == disc)
    inv2 = pow(2, -1, p)
    pos = neg = 0
    for y in ((-c + root) * inv2 % p, (-c - root) * inv2 % p):
        if legendre_symbol(y * y - 4, p) == 1:
            pos += 1
        else:
            neg += 1
    return ((1,) * pos, (1,) * neg)


def torus_class_labels(table: GroupTable, mask: np.ndarray) -> list:
    """Cycle-type label of the torus class for each masked (regular) element."""
    p = table.spec.p
    polys = table.charpolys[mask]
    uniq, inverse = np.unique(polys, axis=0, return_inverse=True)
    labels = []
    for row in uniq:
        coeffs = tuple(int(c) for c in row)
        if table.spec.family == "Sp":
            if table.spec.n != 4:
                raise InputError("torus classification by charpoly implemented for Sp_4 only")
            labels.append(_sp4_signed_type(coeffs, p))
        else:
            labels.append(tuple(sorted(factor_degrees_mod(list(coeffs), p), reverse=True)))
    return [labels[i] for i in inverse.reshape(-1)]


def volume_report(spec: GroupSpec, table: GroupTable | None = None) -> VolumeReport:
    table = table or enumerate_group(spec)
    G = len(table)
    reg = regular_mask(table)
    counts = Counter(torus_class_labels(table, reg))
    records = weyl_twisted_classes(spec)
    known = {r.cycle_type for r in records}
    stray = set(counts) - known
    if stray:
        raise AssertionError(f"charpoly types {stray} match no torus class of {spec.label}")
    per_torus = []
    for r in records:
        total, regular = torus_point_counts(spec, r)
        rec = TorusClassRecord(r.weyl_rep, r.cycle_type, r.relative_weyl_order, total, regular)
        per_torus.append((rec, Fraction(counts.get(r.cycle_type, 0), G)))
    bset = bounding_set_mask(table)
    return VolumeReport(
        group=spec,
        group_order=G,
        per_torus=per_torus,
        regular_volume=Fraction(int(reg.sum()), G),
        bounding_volume=Fraction(int(bset.sum()), G),
        class_counts=dict(counts),
        semisimple_volume=Fraction(int(semisimple_mask(table).sum()), G),
    )


def predicted_regular_class_size(spec: GroupSpec, record: TorusClassRecord) -> Fraction:
    """(1/|W(G,T)|) * (|G|/|T|) * |T^reg| from the torus data."""
    if record.torus_regular_count is None:
        _, regular = torus_point_counts(spec, record)
    else:
        regular = record.torus_regular_count
    return Fraction(spec.order() * regular, record.relative_weyl_order * record.torus_order)


def _pgl2_check(p: int) -> None:
    if p > PGL2_COSET_MAX_P:
        raise ResourceError(f"PGL_2 coset enumeration limited to p <= {PGL2_COSET_MAX_P}, got {p}")


def sl2_image_mask(pgl: GroupTable) -> np.ndarray:
    """Image of SL_2(F_p) -> PGL_2(F_p), computed by pushing SL_2 elements forward."""
    sl = enumerate_group(GroupSpec("SL", 2, pgl.spec.p))
    image = np.unique(pgl.encode(normalize_projective(sl.elements.copy(), pgl.spec.p)))
    return np.isin(pgl.codes, image)


def coset_volume_report(p: int) -> VolumeReport:
    """PGL_2(F_p) report with |B n gI| / |I| for both cosets of I = im(SL_2)."""
    _pgl2_check(p)
    spec = GroupSpec("PGL", 2, p)
    table = enumerate_group(spec)
    report = volume_report(spec, table)
    in_image = sl2_image_mask(table)
    bset = bounding_set_mask(table)
    I = int(in_image.sum())
    if 2 * I != len(table) and p != 2:
        raise AssertionError(f"image of SL_2 has index {len(table) / I}, expected 2")
    report.per_coset = [
        Fraction(int((bset & in_image).sum()), I),
        Fraction(int((bset & ~in_image).sum()), len(table) - I),
    ]
    return report


def isogeny_count_check(p: int) -> tuple[int, int, bool]:
    _pgl2_check(p)
    sl = len(enumerate_group(GroupSpec("SL", 2, p)))
    pgl = len(enumerate_group(GroupSpec("PGL", 2, p)))
    return sl, pgl, sl == pgl


def np_value(group_order: int, borel_order: int) -> float:
    """group_order / sqrt(borel_order)."""
    if group_order <= 0 or borel_order <= 0:
        raise InputError("orders must be positive")
    return group_order / sqrt(borel_order)


def semisimple_exponent(spec: GroupSpec) -> int:
    """Largest divisor of |G| prime to p; x is semisimple iff x**this == 1."""
    return p_part_free(spec.order(), spec.p)
