"""JSON/CSV emission. Exact rationals become {"num": str, "den": str}."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from fractions import Fraction

import numpy as np

from frobscope.algebra.polynomial import IntPolynomial


def rational(q) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def from_rational(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def jsonable(obj):
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int, float)):
        return obj
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, IntPolynomial):
        return list(obj.coefficients)
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2) + "\n"


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()
