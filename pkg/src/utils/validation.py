"""Shared input-validation helpers."""
from __future__ import annotations

import math
from typing import Any, Optional


def safe_str(value: Any, default: str, allowed: Optional[set] = None) -> str:
    """Return *value* as a stripped string if it is in *allowed* (or if no allowlist).

    Falls back to *default* when the value is not a string, is empty, or is
    not in the allowlist.
    """
    if not isinstance(value, str):
        return default
    value = value.strip()
    if not value:
        return default
    if allowed is not None and value not in allowed:
        return default
    return value


def safe_int(value: Any, default: int, lo: int, hi: int) -> int:
    """Cast *value* to int via float and clamp to [lo, hi]; return *default* on error."""
    try:
        result = int(float(value))
    except (TypeError, ValueError, OverflowError):
        return default
    return max(lo, min(hi, result))


def safe_float(value: Any, default: float, lo: float, hi: float) -> float:
    """Cast *value* to a finite float clamped to [lo, hi]; return *default* on error."""
    try:
        result = float(value)
    except (TypeError, ValueError):
        return default
    if not math.isfinite(result):
        return default
    return max(lo, min(hi, result))


def parse_float_list(raw: str) -> list[float]:
    """Parse ``"15,30,60"`` into floats; raises ValueError on empty or bad items."""
    parts = [p.strip() for p in str(raw).split(",")]
    if not parts or any(not p for p in parts):
        raise ValueError(f"expected a comma-separated list of numbers, got {raw!r}")
    values = [float(p) for p in parts]
    if any(not math.isfinite(v) for v in values):
        raise ValueError(f"non-finite value in {raw!r}")
    return values
