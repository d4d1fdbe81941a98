"""Scans over good primes: Frobenius-field histograms and density series."""

from __future__ import annotations

import csv
import io
import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import log

import numpy as np

from frobscope.algebra.numtheory import primes_up_to
from frobscope.errors import InputError, InsufficientDataError, ResourceError
from frobscope.frobenius.curves import CurveSpec, frobenius_polynomial
from frobscope.frobenius.fieldkeys import FieldKey, frobenius_field_key, same_field

log_ = logging.getLogger(__name__)

SCAN_GUARDS = {"elliptic": 10**7, "genus2": 10**4}


def _keys_for(curve: CurveSpec, primes: list[int]) -> list[tuple[int, FieldKey]]:
    return [(p, frobenius_field_key(frobenius_polynomial(curve, p))) for p in primes]


def default_checkpoints(X: int) -> list[int]:
    out = []
    c = 1000
    while c < X:
        out.append(c)
        c *= 10
    return out + [X]


def _validate_checkpoints(X: int, checkpoints) -> list[int]:
    cps = [int(c) for c in checkpoints] if checkpoints else default_checkpoints(X)
    if any(b <= a for a, b in zip(cps, cps[1:])):
        raise InputError(f"checkpoints must be strictly ascending, got {cps}")
    if cps[0] < 2 or cps[-1] > X:
        raise InputError(f"checkpoints must lie in [2, X = {X}], got {cps}")
    if cps[-1] != X:
        cps.append(X)
    return cps


@dataclass
class ScanReport:
    curve: CurveSpec
    X: int
    checkpoints: list[int]
    counts: list[dict[str, int]]  # per checkpoint: key label -> S(X')
    pi_good: list[int]
    keys: dict[str, FieldKey] = field(default_factory=dict)

    def key_order(self) -> list[str]:
        """Labels by decreasing final count, ties by label."""
        final = self.counts[-1]
        return sorted(self.keys, key=lambda k: (-final.get(k, 0), k))

    def max_ratio(self, i: int) -> float:
        c = self.counts[i]
        return max(c.values()) / self.pi_good[i] if c else 0.0

    def rows(self):
        order = self.key_order()
        for X, c, pg in zip(self.checkpoints, self.counts, self.pi_good):
            for k in order:
                yield X, k, c.get(k, 0), pg

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["X", "key", "count", "pi_good"])
        w.writerows(self.rows())
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "curve": str(self.curve),
            "X": self.X,
            "checkpoints": [
                {"X": X, "pi_good": pg, "counts": {k: c.get(k, 0) for k in self.key_order()}}
                for X, c, pg in zip(self.checkpoints, self.counts, self.pi_good)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def scan(curve: CurveSpec, X: int, checkpoints=None, workers: int = 1) -> ScanReport:
    """Frobenius-field key of every good prime p <= X, counted per checkpoint.

    Work is split round-robin over primes; the per-prime results are merged
    in prime order, so the report does not depend on `workers`.
    """
    X = int(X)
    guard = SCAN_GUARDS[curve.kind]
    if X > guard:
        raise ResourceError(f"{curve.kind} scan up to X = {X} exceeds guard {guard}")
    if workers < 1:
        raise InputError("workers must be >= 1")
    cps = _validate_checkpoints(X, checkpoints)
    primes = [p for p in primes_up_to(X) if curve.is_good(p)]

    if workers == 1 or len(primes) < 64:
        results = _keys_for(curve, primes)
    else:
        nchunks = 4 * workers
        chunks = [primes[i::nchunks] for i in range(nchunks)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_keys_for, [curve] * nchunks, chunks))
        results = sorted((r for part in parts for r in part), key=lambda r: r[0])
    log_.info("scanned %d good primes up to %d", len(results), X)

    keys: dict[str, FieldKey] = {}
    counts, pi_good = [], []
    running: Counter = Counter()
    i = 0
    for c in cps:
        while i < len(results) and results[i][0] <= c:
            k = results[i][1]
            keys.setdefault(k.label, k)
            running[k.label] += 1
            i += 1
        counts.append(dict(running))
        pi_good.append(i)
    return ScanReport(curve, X, cps, counts, pi_good, keys)


@dataclass
class DensitySeries:
    target: FieldKey
    points: list[tuple[int, float]]  # (X', S(X') / pi_good(X'))
    counts: list[int]
    slope: float  # least-squares slope of log S against log X
    slope_vs_pi: float  # same against log pi_good


def matching_count(report: ScanReport, target: FieldKey, i: int) -> int:
    return sum(n for label, n in report.counts[i].items() if same_field(report.keys[label], target))


def density_series(report: ScanReport, target: FieldKey) -> DensitySeries:
    counts = [matching_count(report, target, i) for i in range(len(report.checkpoints))]
    points = [(X, n / pg if pg else 0.0) for X, n, pg in zip(report.checkpoints, counts, report.pi_good)]
    used = [(X, n, pg) for X, n, pg in zip(report.checkpoints, counts, report.pi_good) if n > 0]
    if len(used) < 3:
        raise InsufficientDataError(
            f"need >= 3 checkpoints with nonzero count for {target}, have {len(used)}"
        )
    ln_s = np.array([log(n) for _, n, _ in used])
    slope = float(np.polyfit([log(X) for X, _, _ in used], ln_s, 1)[0])
    slope_pi = float(np.polyfit([log(pg) for _, _, pg in used], ln_s, 1)[0])
    return DensitySeries(target, points, counts, slope, slope_pi)
