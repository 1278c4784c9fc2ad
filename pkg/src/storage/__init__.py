"""Persistent storage (SQLite run records)."""

from .run_store import (
    database_path,
    default_db_path,
    dispose_engine,
    ensure_engine,
    fetch_rows,
    record_rows,
)

__all__ = [
    "database_path",
    "default_db_path",
    "dispose_engine",
    "ensure_engine",
    "fetch_rows",
    "record_rows",
]
