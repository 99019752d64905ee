"""Rendering of exact results for machine consumption.

JSON is the canonical format: every rational appears as
{"num": "...", "den": "...", "float": "..."} where the float field is a
round-half-even 12-significant-digit decimal rendering, labeled
non-authoritative by construction (the exact fields round-trip, the decimal
does not). CSV is a flat projection carrying the decimal rendering plus a
"num/den" column. Output is byte-deterministic for a given payload: no
timestamps, no environment lookups, fixed key order.
"""

from __future__ import annotations

import csv
import decimal
import io
import json
from fractions import Fraction
from typing import Any

SCHEMA_VERSION = "1"

SIG_DIGITS = 12


def render_decimal(x: Fraction, sig: int = SIG_DIGITS) -> str:
    """Round-half-even decimal rendering with `sig` significant digits."""
    with decimal.localcontext() as ctx:
        ctx.prec = sig
        ctx.rounding = decimal.ROUND_HALF_EVEN
        return str(decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator))


def render_decimal_sqrt(x: Fraction, sig: int = SIG_DIGITS) -> str:
    """Decimal rendering of sqrt(x) for reporting square-carried quantities."""
    if x < 0:
        raise ValueError("cannot render the square root of a negative value")
    with decimal.localcontext() as ctx:
        ctx.prec = sig + 10
        root = (decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)).sqrt()
        ctx.prec = sig
        ctx.rounding = decimal.ROUND_HALF_EVEN
        return str(+root)


def rational_json(x: Fraction) -> dict[str, str]:
    return {
        "num": str(x.numerator),
        "den": str(x.denominator),
        "float": render_decimal(x),
    }


def parse_rational(obj: dict[str, str]) -> Fraction:
    """Exact inverse of rational_json (the float field is ignored)."""
    return Fraction(int(obj["num"]), int(obj["den"]))


def jsonable(value: Any) -> Any:
    """Recursively convert Fractions (and containers of them) for JSON."""
    if isinstance(value, Fraction):
        return rational_json(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str, float)):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


def _csv_cell(value: Any) -> dict[str, str]:
    """Flatten one value to CSV cells; rationals become a float column plus
    an exact num/den column."""
    if isinstance(value, Fraction):
        return {"": render_decimal(value), "_exact": f"{value.numerator}/{value.denominator}"}
    if isinstance(value, bool):
        return {"": "true" if value else "false"}
    if value is None:
        return {"": ""}
    if isinstance(value, (list, tuple)):
        parts = []
        for v in value:
            if isinstance(v, Fraction):
                parts.append(f"{v.numerator}/{v.denominator}")
            else:
                parts.append(str(v))
        return {"": ";".join(parts)}
    return {"": str(value)}


def payload(command: str, params: dict[str, Any], rows: list[dict[str, Any]], verdicts: list[dict[str, Any]]) -> dict[str, Any]:
    return {
        "version": SCHEMA_VERSION,
        "command": command,
        "params": jsonable(params),
        "rows": [jsonable(r) for r in rows],
        "verdicts": [jsonable(v) for v in verdicts],
    }


def to_json(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2) + "\n"


def rows_to_csv(rows: list[dict[str, Any]]) -> str:
    """Flat CSV projection of the rows (verdicts are JSON-only)."""
    out = io.StringIO()
    if not rows:
        return ""
    columns: list[str] = []
    flat_rows = []
    for row in rows:
        flat: dict[str, str] = {}
        for key, value in row.items():
            for suffix, cell in _csv_cell(value).items():
                name = f"{key}{suffix}"
                flat[name] = cell
                if name not in columns:
                    columns.append(name)
        flat_rows.append(flat)
    writer = csv.DictWriter(out, fieldnames=columns, restval="", lineterminator="\n")
    writer.writeheader()
    for flat in flat_rows:
        writer.writerow(flat)
    return out.getvalue()
