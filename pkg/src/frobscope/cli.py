"""frobscope command line.

Exit codes: 0 success, 1 contract violation, 2 usage, 3 resource guard,
4 analytic precondition.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from frobscope import serialize
from frobscope.algebra.numtheory import is_prime, primes_up_to
from frobscope.algebra.polynomial import IntPolynomial
from frobscope.errors import FrobscopeError, InputError
from frobscope.frobenius import CurveSpec, density_series, field_key_of_target, scan
from frobscope.reductive import (
    GroupSpec,
    class_equation,
    coset_volume_report,
    volume_report,
    weyl_twisted_classes,
)
from frobscope.sieve import (
    SieveConfig,
    exponent_report,
    generic_exponent_report,
    selberg_bound,
)

log = logging.getLogger("frobscope")

THREE_QUARTERS = Fraction(3, 4)

GROUP_PRESETS = {
    "gl2": ("GL", 2),
    "sl2": ("SL", 2),
    "pgl2": ("PGL", 2),
    "sp4": ("Sp", 4),
}

CURVE_PRESETS = {
    "cm": "elliptic a=1 b=0",
    "noncm": "elliptic a=1 b=1",
}


def sieve_preset(g: int, z: float = 50.0) -> dict:
    """Generic genus-g shape at the optimal scale: gamma from Sp_2g and
    X = z^(4 gamma + 6), so that z = X^beta. Sieving primes 5 <= l <= z, beta_l = 1/4."""
    rep = generic_exponent_report(g)
    return {
        "g": g,
        "beta_floor": "1/4",
        "c": 1.0,
        "X": z ** rep.denominator,
        "z": z,
        "sieving_primes": [p for p in primes_up_to(int(z)) if p >= 5],
        "gamma_tilde": float(rep.gamma),
    }


class UsageError(InputError):
    pass


def _prime_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _primes_arg(values) -> list[int]:
    ps = []
    for v in values or []:
        try:
            ps.extend(p for p in _prime_list(v) if "-" not in v or is_prime(p))
        except ValueError as exc:
            raise UsageError(f"bad prime list {v!r}") from exc
    if not ps:
        raise UsageError("give at least one prime with --p")
    return ps


def _group_args(args) -> tuple[str, int]:
    if args.preset:
        return GROUP_PRESETS[args.preset]
    if not args.family or not args.n:
        raise UsageError("give --family and --n, or --preset")
    fam = {"gl": "GL", "sl": "SL", "pgl": "PGL", "sp": "Sp"}.get(args.family.lower())
    if fam is None:
        raise UsageError(f"unknown family {args.family!r}; choose gl, sl, pgl or sp")
    return fam, args.n


def _emit(args, csv_text: str, json_obj) -> None:
    text = serialize.dumps(json_obj) if args.format == "json" else csv_text
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        log.info("wrote %s", args.out)
    else:
        sys.stdout.write(text)


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# --- subcommands --------------------------------------------------------------


def cmd_torus_census(args) -> int:
    family, n = _group_args(args)
    rows, payload, status = [], [], 0
    for p in _primes_arg(args.p):
        spec = GroupSpec(family, n, p)
        records = weyl_twisted_classes(spec)
        total = class_equation(spec)
        for r in records:
            rows.append([spec.label, p, str(r.cycle_type), str(r.weyl_rep.images), r.relative_weyl_order,
                         r.torus_order, _frac(Fraction(1, r.relative_weyl_order))])
        rows.append([spec.label, p, "class_equation_sum", "", "", "", _frac(total)])
        payload.append({"group": spec.label, "p": p, "classes": records, "class_equation": total})
        if total != 1:
            log.error("class equation for %s sums to %s", spec.label, total)
            status = 1
    header = ["group", "p", "cycle_type", "weyl_rep", "relative_weyl_order", "torus_order", "inverse_weyl_order"]
    _emit(args, serialize.csv_text(header, rows), payload)
    return status


def cmd_borel_volume(args) -> int:
    family, n = _group_args(args)
    rows, payload, status = [], [], 0
    for p in _primes_arg(args.p):
        spec = GroupSpec(family, n, p)
        want_cosets = args.cosets and family == "PGL" and n == 2
        rep = coset_volume_report(p) if want_cosets else volume_report(spec)
        quantities = [
            ("bounding_volume", rep.bounding_volume),
            ("regular_volume", rep.regular_volume),
            ("semisimple_volume", rep.semisimple_volume),
        ]
        quantities += [(f"torus_volume {rec.cycle_type}", v) for rec, v in rep.per_torus]
        if rep.per_coset:
            quantities += [(f"coset_ratio {i}", r) for i, r in enumerate(rep.per_coset)]
        for name, q in quantities:
            rows.append([spec.label, p, rep.group_order, name, _frac(q), f"{float(q):.6f}"])
        payload.append(rep)
        if p >= 5 and not spec.is_abelian():
            worst = max([rep.bounding_volume] + list(rep.per_coset or []))
            if worst >= THREE_QUARTERS:
                log.error("%s: bounding ratio %s >= 3/4", spec.label, worst)
                status = 1
    header = ["group", "p", "group_order", "quantity", "exact", "float"]
    _emit(args, serialize.csv_text(header, rows), payload)
    return status


def _checkpoints(text: str | None):
    if not text:
        return None
    try:
        cps = [int(float(c)) for c in text.split(",") if c.strip()]
    except ValueError as exc:
        raise UsageError(f"bad checkpoint list {text!r}") from exc
    if any(b <= a for a, b in zip(cps, cps[1:])):
        raise UsageError(f"checkpoints must be strictly ascending, got {cps}")
    return cps


def cmd_scan(args) -> int:
    line = CURVE_PRESETS[args.preset] if args.preset else args.curve
    if not line:
        raise UsageError("give --curve or --preset")
    try:
        curve = CurveSpec.parse(line)
    except InputError as exc:
        raise UsageError(str(exc)) from exc
    X = int(float(args.X))
    report = scan(curve, X, _checkpoints(args.checkpoints), workers=args.workers)
    payload = report.to_dict()
    csv_text = report.to_csv()
    if args.target:
        try:
            target = field_key_of_target(IntPolynomial.parse(args.target))
        except InputError as exc:
            raise UsageError(str(exc)) from exc
        series = density_series(report, target)
        payload["density"] = {
            "target": target.label,
            "points": [{"X": X_, "count": n, "ratio": r} for (X_, r), n in zip(series.points, series.counts)],
            "slope_log_X": series.slope,
            "slope_log_pi_good": series.slope_vs_pi,
        }
        csv_text = serialize.csv_text(
            ["X", "key", "count", "pi_good", "ratio"],
            [
                [X_, target.label, n, pg, f"{r:.6f}"]
                for (X_, r), n, pg in zip(series.points, series.counts, report.pi_good)
            ],
        )
        log.info("slope vs log X %.4f, vs log pi_good %.4f", series.slope, series.slope_vs_pi)
    if args.out:
        stem = Path(args.out)
        stem.with_suffix(".csv").write_text(csv_text, encoding="utf-8")
        stem.with_suffix(".json").write_text(serialize.dumps(payload), encoding="utf-8")
        log.info("wrote %s.csv and %s.json", stem, stem)
    else:
        sys.stdout.write(serialize.dumps(payload) if args.format == "json" else csv_text)
    return 0


def cmd_sieve(args) -> int:
    if args.preset:
        data = sieve_preset({"g1": 1, "g2": 2}[args.preset])
    elif args.config:
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read sieve config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise UsageError("sieve config must be a JSON object")
    else:
        raise UsageError("give --config or --preset")
    cfg = SieveConfig.from_dict(data)
    bound = selberg_bound(cfg)
    payload = {"sieve": bound}
    if "g" in data:
        exp = generic_exponent_report(int(data["g"]), float(data.get("epsilon", 0.0)))
    elif "dim_ss" in data and "rank_ss" in data:
        exp = exponent_report(int(data["dim_ss"]), int(data["rank_ss"]), float(data.get("epsilon", 0.0)))
    else:
        exp = None
    if exp is not None:
        payload["exponent"] = exp
        print(f"exponent: {exp.exponent_line()}", file=sys.stderr)
        if exp.discrepancy:
            print(
                f"warning: substituted denominator {exp.substituted_denominator} differs from "
                f"corollary formula 6g^2+2g+6 = {exp.corollary_denominator}",
                file=sys.stderr,
            )
    rows = [[k, v] for k, v in [
        ("main_term", bound.main_term), ("error_term", bound.error_term), ("total", bound.total),
        ("z", bound.z), ("pi_P", bound.pi_P), ("error_mode", bound.error_mode),
    ]]
    _emit(args, serialize.csv_text(["field", "value"], rows), payload)
    return 0


# --- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frobscope", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=["csv", "json"], default="csv")

    def group(p):
        p.add_argument("--family", help="gl, sl, pgl or sp")
        p.add_argument("--n", type=int, help="matrix size (n = 2g for sp)")
        p.add_argument("--preset", choices=sorted(GROUP_PRESETS))
        p.add_argument("--p", action="append", help="primes: 5 or 3,5,7 or 3-13; repeatable")
        common(p)

    p = sub.add_parser("torus-census", help="torus classes and the class equation")
    group(p)
    p.set_defaults(func=cmd_torus_census)

    p = sub.add_parser("borel-volume", help="exact regular and bounding-set volumes")
    group(p)
    p.add_argument("--cosets", action="store_true", help="PGL_2: ratios on both cosets of im(SL_2)")
    p.set_defaults(func=cmd_borel_volume)

    p = sub.add_parser("scan", help="Frobenius-field histogram over good primes")
    p.add_argument("--curve", help="'elliptic a=1 b=1' or 'genus2 f=1,0,0,0,0,1'")
    p.add_argument("--preset", choices=sorted(CURVE_PRESETS))
    p.add_argument("--X", default="100000")
    p.add_argument("--checkpoints", help="ascending list, e.g. 1000,10000")
    p.add_argument("--target", help="defining polynomial of M, lowest degree first, e.g. 1,0,1")
    p.add_argument("--workers", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("sieve", help="Selberg-sieve bound and exponent")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--preset", choices=["g1", "g2"])
    common(p)
    p.set_defaults(func=cmd_sieve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be >= 1")
    try:
        return args.func(args)
    except FrobscopeError as exc:
        print(f"frobscope: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
