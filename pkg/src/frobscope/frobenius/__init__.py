from frobscope.frobenius.curves import (
    CurveSpec,
    WeilPolynomial,
    check_weil_bound,
    count_points_fp,
    count_points_fp2,
    ec_trace,
    frobenius_polynomial,
    genus2_lpoly,
)
from frobscope.frobenius.fieldkeys import (
    FieldKey,
    auxiliary_primes,
    field_key_of_target,
    fingerprint_key,
    frobenius_field_key,
    same_field,
)
from frobscope.frobenius.scan import DensitySeries, ScanReport, density_series, scan

__all__ = [
    "CurveSpec",
    "DensitySeries",
    "FieldKey",
    "ScanReport",
    "WeilPolynomial",
    "auxiliary_primes",
    "check_weil_bound",
    "count_points_fp",
    "count_points_fp2",
    "density_series",
    "ec_trace",
    "field_key_of_target",
    "fingerprint_key",
    "frobenius_field_key",
    "frobenius_polynomial",
    "genus2_lpoly",
    "same_field",
    "scan",
]
