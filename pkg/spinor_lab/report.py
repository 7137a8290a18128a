"""Result record creation, validation and serialization."""

from __future__ import annotations

import csv
import json
import math
from collections.abc import Iterable
from typing import IO, Any

from .algebra import CONVENTION

VERDICT_PASS = "pass"
VERDICT_FAIL = "fail"
VERDICT_DEGENERATE = "degenerate"
VERDICTS = (VERDICT_PASS, VERDICT_FAIL, VERDICT_DEGENERATE)

REPORT_FIELDS = ("check", "params", "residual", "verdict", "fingerprint")

FORMAT_JSON = "json"
FORMAT_CSV = "csv"
FORMATS = (FORMAT_JSON, FORMAT_CSV)


def _plain(value: Any) -> Any:
    """Coerce numpy scalars and tuples into JSON-native values; inf and nan become None."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, complex):
        return [value.real, value.imag]
    if hasattr(value, "item"):
        return _plain(value.item())
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def make_record(
    check: str,
    *,
    residual: float | None,
    tolerance: float | None = None,
    params: dict[str, Any] | None = None,
    verdict: str | None = None,
) -> dict[str, Any]:
    """Create a result record.

    Args:
        check: Name of the identity or condition checked
        residual: Nonnegative residual; None or inf when the check could not run,
            stored as None and never passing a tolerance comparison
        tolerance: Pass threshold; required unless verdict is given
        params: Parameters the check ran with
        verdict: Explicit verdict, overriding the tolerance comparison

    Returns:
        Record dictionary with REPORT_FIELDS keys
    """
    if residual is not None:
        residual = float(residual)
        if math.isinf(residual):
            residual = None
    if verdict is None:
        if tolerance is None:
            raise ValueError("either tolerance or verdict is required")
        passed = residual is not None and residual <= tolerance
        verdict = VERDICT_PASS if passed else VERDICT_FAIL
    record = {
        "check": check,
        "params": _plain(params or {}),
        "residual": residual,
        "verdict": verdict,
        "fingerprint": CONVENTION.fingerprint(),
    }
    validate_record(record)
    return record


def validate_record(record: dict) -> None:
    """Validate a result record structure.

    Args:
        record: Record dictionary to validate

    Raises:
        TypeError: If record structure is invalid
        ValueError: If record values are invalid
    """
    if not isinstance(record, dict):
        raise TypeError("record must be a dict")

    for key in REPORT_FIELDS:
        if key not in record:
            raise ValueError(f"missing required record key {key!r}")

    check = record["check"]
    if not isinstance(check, str):
        raise TypeError("check name must be a string")
    if len(check) == 0:
        raise ValueError("check name cannot be empty")

    if not isinstance(record["params"], dict):
        raise TypeError("params must be a dict")

    residual = record["residual"]
    if residual is not None:
        if not isinstance(residual, float):
            raise TypeError("residual must be a float or None")
        if not math.isfinite(residual) or residual < 0:
            raise ValueError(f"residual must be finite and nonnegative, got {residual}")

    if record["verdict"] not in VERDICTS:
        raise ValueError(f"unknown verdict {record['verdict']!r}")

    if not isinstance(record["fingerprint"], dict):
        raise TypeError("fingerprint must be a dict")


def all_passed(records: Iterable[dict]) -> bool:
    """True when no record failed; degenerate records do not count as failures."""
    return all(r["verdict"] != VERDICT_FAIL for r in records)


def write_json_lines(records: Iterable[dict], stream: IO[str]) -> None:
    """Write one strict JSON object per line with sorted keys."""
    for record in records:
        stream.write(json.dumps(record, sort_keys=True, allow_nan=False) + "\n")


def write_csv(records: Iterable[dict], stream: IO[str]) -> None:
    """Write records as CSV; nested params and fingerprint are JSON-encoded."""
    writer = csv.DictWriter(stream, fieldnames=list(REPORT_FIELDS), lineterminator="\n")
    writer.writeheader()
    for record in records:
        row = dict(record)
        row["params"] = json.dumps(record["params"], sort_keys=True, allow_nan=False)
        row["fingerprint"] = json.dumps(record["fingerprint"], sort_keys=True)
        row["residual"] = "" if record["residual"] is None else repr(record["residual"])
        writer.writerow(row)


def write_records(records: list[dict], stream: IO[str], fmt: str = FORMAT_JSON) -> None:
    if fmt == FORMAT_JSON:
        write_json_lines(records, stream)
    elif fmt == FORMAT_CSV:
        write_csv(records, stream)
    else:
        raise ValueError(f"unknown output format {fmt!r}")
