from collections import defaultdict
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from frobscope.errors import InputError, ResourceError
from frobscope.reductive import (
    GroupSpec,
    WeylElement,
    class_equation,
    coset_volume_report,
    enumerate_group,
    isogeny_count_check,
    np_value,
    predicted_regular_class_size,
    torus_order,
    volume_report,
    weyl_twisted_classes,
)
from frobscope.reductive.groups import _symplectic_form, charpoly_batch
from frobscope.reductive.volumes import bounding_set_mask, regular_mask
from frobscope.reductive.weyl import _det, all_weyl_elements, torus_point_counts

PRIMES = [2, 3, 5, 7, 11, 13, 17]


# --- Weyl groups ------------------------------------------------------------


def brute_classes(spec):
    """Conjugacy classes of W by orbit enumeration: {cycle type: (class size, |W|)}."""
    elems = list(all_weyl_elements(spec))
    seen = set()
    out = {}
    for w in elems:
        if w in seen:
            continue
        orbit = {g @ w @ g.inverse() for g in elems}
        seen |= orbit
        key = w.signed_cycle_type() if spec.family == "Sp" else w.signed_cycle_type()[0]
        assert key not in out
        out[key] = len(orbit)
    return out, len(elems)


@pytest.mark.parametrize(
    "family, n",
    [("GL", 1), ("GL", 2), ("GL", 3), ("GL", 4), ("SL", 3), ("PGL", 4), ("Sp", 2), ("Sp", 4), ("Sp", 6)],
)
def test_weyl_classes_match_orbit_enumeration(family, n):
    spec = GroupSpec(family, n, 5)
    classes, order = brute_classes(spec)
    records = weyl_twisted_classes(spec)
    assert len(records) == len(classes)
    for r in records:
        rep_type = r.weyl_rep.signed_cycle_type()
        key = rep_type if family == "Sp" else rep_type[0]
        assert key == r.cycle_type
        assert r.relative_weyl_order * classes[key] == order


def test_gl2_classes():
    recs = weyl_twisted_classes(GroupSpec("GL", 2, 7))
    by_type = {r.cycle_type: r for r in recs}
    assert by_type[(1, 1)].torus_order == 36 and by_type[(1, 1)].relative_weyl_order == 2
    assert by_type[(2,)].torus_order == 48 and by_type[(2,)].relative_weyl_order == 2


@pytest.mark.parametrize("p", [3, 5, 7])
def test_sp4_classes(p):
    recs = weyl_twisted_classes(GroupSpec("Sp", 4, p))
    assert len(recs) == 5
    got = sorted((r.torus_order, r.relative_weyl_order) for r in recs)
    want = sorted(
        [((p - 1) ** 2, 8), ((p + 1) ** 2, 8), (p * p - 1, 4), (p * p + 1, 4), ((p - 1) * (p + 1), 4)]
    )
    assert got == want


def test_gl1():
    (rec,) = weyl_twisted_classes(GroupSpec("GL", 1, 11))
    assert rec.relative_weyl_order == 1 and rec.torus_order == 10


def test_torus_order_examples():
    assert torus_order(WeylElement("GL", (1, 2)), 5) == 16
    assert torus_order(WeylElement("GL", (2, 1)), 5) == 24
    assert torus_order(WeylElement("Sp", (2, -1)), 3) == 10


@pytest.mark.parametrize("family, n", [("GL", 1), ("GL", 3), ("SL", 2), ("SL", 3), ("PGL", 3), ("Sp", 4)])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_identity_torus_is_split(family, n, p):
    spec = GroupSpec(family, n, p)
    ident = WeylElement(family, tuple(range(1, spec.weyl_rank + 1)))
    assert torus_order(ident, p) == (p - 1) ** spec.rank


@pytest.mark.parametrize("family, n", [("GL", 2), ("GL", 3), ("SL", 2), ("SL", 3), ("PGL", 2), ("PGL", 3), ("Sp", 4)])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_torus_order_matches_point_listing(family, n, p):
    spec = GroupSpec(family, n, p)
    for r in weyl_twisted_classes(spec):
        total, regular = torus_point_counts(spec, r)
        assert total == r.torus_order
        assert 0 <= regular <= total


@pytest.mark.parametrize("family, n", [("GL", 1), ("GL", 2), ("GL", 3), ("SL", 2), ("Sp", 4), ("PGL", 3), ("Sp", 6)])
@pytest.mark.parametrize("p", PRIMES)
def test_class_equation(family, n, p):
    assert class_equation(GroupSpec(family, n, p)) == 1


def test_class_equation_values():
    recs = weyl_twisted_classes(GroupSpec("Sp", 4, 3))
    assert sorted(Fraction(1, r.relative_weyl_order) for r in recs) == [
        Fraction(1, 8), Fraction(1, 8), Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)
    ]


def test_group_spec_validation():
    with pytest.raises(InputError):
        GroupSpec("SO", 3, 5)
    with pytest.raises(InputError):
        GroupSpec("Sp", 3, 5)
    with pytest.raises(InputError):
        GroupSpec("GL", 2, 9)
    assert GroupSpec("pgl", 2, 5).family == "PGL"


# --- enumeration ------------------------------------------------------------


@pytest.mark.parametrize(
    "family, n, p, size",
    [("GL", 2, 3, 48), ("SL", 2, 5, 120), ("GL", 1, 7, 6), ("PGL", 2, 7, 336), ("GL", 3, 2, 168), ("Sp", 4, 3, 51840)],
)
def test_enumeration_sizes(family, n, p, size):
    table = enumerate_group(GroupSpec(family, n, p))
    assert len(table) == size
    assert len(np.unique(table.codes)) == size


def test_symplectic_elements_preserve_form():
    table = enumerate_group(GroupSpec("Sp", 4, 3))
    J = _symplectic_form(4)
    sample = table.elements[::97]
    chk = np.einsum("nji,jk,nkl->nil", sample, J, sample) % 3
    assert np.all(chk == J % 3)


def test_guard(monkeypatch):
    with pytest.raises(ResourceError, match="103020000"):
        enumerate_group(GroupSpec("GL", 2, 101))
    monkeypatch.setenv("FROBSCOPE_GUARD_OVERRIDE", "2e6")
    with pytest.raises(ResourceError):
        enumerate_group(GroupSpec("GL", 2, 101))  # order 104060400 still too large


def naive_order(m, p, projective):
    n = m.shape[0]
    x = m.copy()
    k = 1
    while True:
        if projective:
            if np.all(x == x[0, 0] * np.eye(n, dtype=np.int64)):
                return k
        elif np.all(x == np.eye(n, dtype=np.int64)):
            return k
        x = x @ m % p
        k += 1


@pytest.mark.parametrize("family, p", [("GL", 5), ("PGL", 5), ("SL", 7)])
def test_orders_against_naive(family, p):
    table = enumerate_group(GroupSpec(family, 2, p))
    for i in range(0, len(table), 7):
        assert table.orders[i] == naive_order(table.elements[i], p, family == "PGL")


def test_charpoly_values():
    # charpoly(t) must equal det(t*I - A) at every t
    table = enumerate_group(GroupSpec("Sp", 4, 3))
    sample = table.elements[::331]
    cps = charpoly_batch(sample, 3)
    for A, cp in zip(sample, cps):
        for t in range(3):
            M = (t * np.eye(4, dtype=np.int64) - A).tolist()
            assert _det(M) % 3 == sum(int(c) * t**i for i, c in enumerate(cp)) % 3
        assert list(cp) == list(cp[::-1])  # symplectic charpolys are palindromic


# --- volumes ----------------------------------------------------------------


def eigenvector_mask(table):
    """x lies in a Borel of a rank-1 group iff its charpoly has a root in F_p."""
    p = table.spec.p
    cps = table.charpolys
    has_root = np.zeros(len(table), dtype=bool)
    for t in range(p):
        has_root |= (cps[:, 0] + cps[:, 1] * t + cps[:, 2] * t * t) % p == 0
    return has_root


@pytest.mark.parametrize("family", ["GL", "SL", "PGL"])
@pytest.mark.parametrize("p", [3, 5, 7])
def test_bounding_set_equals_eigenvector_criterion(family, p):
    table = enumerate_group(GroupSpec(family, 2, p))
    assert np.array_equal(bounding_set_mask(table), eigenvector_mask(table))


def isotropic_flag_oracle(table):
    """Sp_4: x in some Borel iff x stabilises a line inside a Lagrangian plane."""
    p = table.spec.p
    J = _symplectic_form(4)
    vecs = np.array([v for v in product(range(p), repeat=4) if any(v)], dtype=np.int64)
    lines = {}
    for v in vecs:
        first = next(c for c in v if c)
        lines[tuple(v * pow(int(first), -1, p) % p)] = None
    lines = [np.array(k) for k in lines]
    X = table.elements
    inside = np.zeros(len(X), dtype=bool)
    for u in lines:
        perp = [w for w in vecs if (u @ J @ w) % p == 0 and not _parallel(u, w, p)]
        planes = {}
        for w in perp:
            key = tuple(sorted(_span_key(u, w, p)))
            planes.setdefault(key, w)
        for w in planes.values():
            basis = np.stack([u, w])
            xu = X @ u % p
            xw = X @ w % p
            inside |= _in_span(xu, u, p) & _in_plane(xu, basis, p) & _in_plane(xw, basis, p)
    return inside


def _parallel(u, w, p):
    return any(np.array_equal(k * u % p, w) for k in range(1, p))


def _span_key(u, w, p):
    return {tuple((a * u + b * w) % p) for a in range(p) for b in range(p)}


def _in_span(xs, u, p):
    return np.any([np.all(xs == (k * u) % p, axis=1) for k in range(p)], axis=0)


def _in_plane(xs, basis, p):
    pts = np.array(sorted({tuple((a * basis[0] + b * basis[1]) % p) for a in range(p) for b in range(p)}))
    return (xs[:, None, :] == pts[None, :, :]).all(axis=2).any(axis=1)


@pytest.mark.slow
def test_sp4_bounding_set_oracle():
    table = enumerate_group(GroupSpec("Sp", 4, 3))
    assert np.array_equal(bounding_set_mask(table), isotropic_flag_oracle(table))


def test_gl2_f3_report():
    rep = volume_report(GroupSpec("GL", 2, 3))
    assert rep.group_order == 48
    assert rep.bounding_volume == Fraction(5, 8)
    by_type = {rec.cycle_type: v for rec, v in rep.per_torus}
    assert by_type[(2,)] == Fraction(3, 8)
    assert abs(by_type[(2,)] - Fraction(1, 2)) < Fraction(1, 3)


def test_gl2_f3_bounding_set_breakdown():
    table = enumerate_group(GroupSpec("GL", 2, 3))
    b = bounding_set_mask(table)
    reg = regular_mask(table)
    scalars = np.array([m[0, 1] == 0 and m[1, 0] == 0 and m[0, 0] == m[1, 1] for m in table.elements])
    semisimple = table.orders % 3 != 0
    assert int((b & scalars).sum()) == 2
    assert int((b & ~semisimple).sum()) == 16
    assert int((b & reg).sum()) == 12


def test_gl1_is_its_own_borel():
    rep = volume_report(GroupSpec("GL", 1, 7))
    assert rep.bounding_volume == 1


@pytest.mark.parametrize("family", ["GL", "SL"])
@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_formula_matches_enumeration(family, p):
    spec = GroupSpec(family, 2, p)
    rep = volume_report(spec)
    for rec, vol in rep.per_torus:
        assert vol * rep.group_order == predicted_regular_class_size(spec, rec)


def test_sp4_charpoly_classification_validated():
    spec = GroupSpec("Sp", 4, 3)
    rep = volume_report(spec)
    for rec, vol in rep.per_torus:
        assert vol * rep.group_order == predicted_regular_class_size(spec, rec)
    assert rep.regular_volume == sum(v for _, v in rep.per_torus)


@pytest.mark.parametrize("family", ["GL", "SL", "PGL"])
@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_regular_partition_and_residual(family, p):
    rep = volume_report(GroupSpec(family, 2, p))
    assert rep.regular_volume == sum(v for _, v in rep.per_torus)
    assert p * (1 - rep.regular_volume) <= 4
    for _, v in rep.per_torus:
        assert 0 <= v <= 1


def test_sl2_f3_bounding_volume_is_three_quarters():
    # trace-zero elements of SL_2(F_3) are the only ones without an F_3-eigenvector
    rep = volume_report(GroupSpec("SL", 2, 3))
    assert rep.bounding_volume == Fraction(18, 24)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_coset_ratios_below_three_quarters(p):
    rep = coset_volume_report(p)
    assert all(r < Fraction(3, 4) for r in rep.per_coset)
    assert sum(rep.per_coset) / 2 == rep.bounding_volume


def test_coset_ratios_p3_reported():
    rep = coset_volume_report(3)
    assert rep.per_coset == [Fraction(3, 4), Fraction(1, 2)]
    assert sum(rep.per_coset) / 2 == rep.bounding_volume


def test_coset_guard():
    with pytest.raises(ResourceError):
        coset_volume_report(17)


@pytest.mark.parametrize("p, order", [(3, 24), (5, 120), (7, 336)])
def test_isogeny_count(p, order):
    assert isogeny_count_check(p) == (order, order, True)


def test_np_value():
    assert np_value(120, 20) == pytest.approx(26.8328157, rel=1e-8)
    assert np_value(51840, 324) == pytest.approx(2880.0)
    assert np_value(6, 6) == pytest.approx(6**0.5)
    with pytest.raises(InputError):
        np_value(0, 3)


def test_sp4_orders_from_enumeration():
    spec = GroupSpec("Sp", 4, 3)
    table = enumerate_group(spec)
    assert len(table) == 51840
    assert int(table.borel_mask.sum()) == 324 == spec.borel_order()
    assert np_value(len(table), int(table.borel_mask.sum())) == 2880
