"""Deterministic JSON/CSV serialization and atomic file output."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from importlib import resources

SCHEMA_ID = "mqlandau.report/1"
SIG_DIGITS = 12


def fmt(x: float) -> str:
    """Float text with 12 significant digits."""
    return format(x, f".{SIG_DIGITS}g")


def _round(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if hasattr(obj, "item"):
        return _round(obj.item())
    return str(obj)


def to_json(report: dict) -> str:
    return json.dumps(_round(report), indent=2, allow_nan=False) + "\n"


def load_schema() -> dict:
    text = resources.files("mqlandau").joinpath("schema/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def rows_to_csv(rows: list[dict], header: dict | None = None) -> str:
    buf = io.StringIO()
    for key, value in (header or {}).items():
        buf.write(f"# {key}={fmt(value) if isinstance(value, float) else value}\n")
    if rows:
        cols = list(rows[0])
        for row in rows[1:]:
            cols += [c for c in row if c not in cols]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for row in rows:
            writer.writerow(["" if row.get(c) is None else
                             fmt(row[c]) if isinstance(row.get(c), float) else row.get(c) for c in cols])
    return buf.getvalue()


def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
