"""CSV/JSON serialization of result rows.

Both formats are UTF-8 with ``\\n`` line endings and a trailing newline.
CSV writes booleans as ``true``/``false``, floats with ``repr`` (shortest
round-tripping form) and missing values as empty cells; JSON is an array
with one object per row, keys in schema order.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence, Union

PathLike = Union[str, Path]


def _csv_cell(value: Any) -> str:
    if hasattr(value, "item"):  # numpy scalars
        value = value.item()
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if hasattr(value, "item"):  # numpy scalars
        return _json_value(value.item())
    return value


def _parse_cell(text: str) -> Any:
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def emit(rows: Iterable[Mapping[str, Any]], path: PathLike, fmt: str, fields: Sequence[str]) -> None:
    """Write *rows* restricted to *fields* (in that order) to *path*.

    Raises:
        OSError: the path cannot be written.
        ValueError: unknown format or a row missing a field.
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown output format {fmt!r}")
    records = []
    for row in rows:
        missing = [k for k in fields if k not in row]
        if missing:
            raise ValueError(f"row is missing fields {missing}")
        records.append({k: row[k] for k in fields})

    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        if fmt == "csv":
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(fields)
            for rec in records:
                writer.writerow([_csv_cell(rec[k]) for k in fields])
        else:
            payload = [{k: _json_value(rec[k]) for k in fields} for rec in records]
            f.write(json.dumps(payload, indent=2, allow_nan=False))
            f.write("\n")


def read_rows(path: PathLike, fmt: str) -> list[dict[str, Any]]:
    """Read a file written by :func:`emit` back into typed dicts."""
    with open(path, "r", encoding="utf-8", newline="") as f:
        if fmt == "csv":
            return [{k: _parse_cell(v) for k, v in row.items()} for row in csv.DictReader(f)]
        if fmt == "json":
            return list(json.load(f))
    raise ValueError(f"unknown output format {fmt!r}")
