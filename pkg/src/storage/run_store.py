"""SQLite store of experiment rows (thread-safe)."""

from __future__ import annotations

import json
import math
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Union

from sqlalchemy import create_engine, select, text
from sqlalchemy.orm import Session, sessionmaker

from utils.config import config

from .models import Base, RunRecord

_engine = None
_session_factory: Optional[sessionmaker] = None
_db_file: Optional[Path] = None
_lock = threading.RLock()

_SQLITE_INT_MAX = 2**63 - 1


def default_db_path() -> Path:
    return config.config_dir / "runs.db"


def _migrate(conn) -> None:
    raw = conn.execute(text("PRAGMA user_version")).scalar()
    v = int(raw or 0)
    if v < 1:
        Base.metadata.create_all(conn)
        conn.execute(text("PRAGMA user_version = 1"))


def ensure_engine(path: Optional[Union[str, Path]] = None) -> Path:
    """Open (creating and migrating if needed) the store at *path*. Idempotent.

    A different *path* than the open one disposes the old engine first.
    """
    global _engine, _session_factory, _db_file
    target = Path(path) if path is not None else default_db_path()
    with _lock:
        if _engine is not None and _db_file == target:
            return target
        dispose_engine()
        target.parent.mkdir(parents=True, exist_ok=True)
        eng = create_engine(
            f"sqlite:///{target.as_posix()}",
            connect_args={"check_same_thread": False},
            future=True,
        )
        with eng.begin() as conn:
            _migrate(conn)
        _engine = eng
        _db_file = target
        _session_factory = sessionmaker(_engine, expire_on_commit=False, future=True)
        return target


def dispose_engine() -> None:
    """Close DB connections."""
    global _engine, _session_factory, _db_file
    with _lock:
        if _engine is not None:
            _engine.dispose()
        _engine = None
        _session_factory = None
        _db_file = None


def _session() -> Session:
    ensure_engine(_db_file)
    assert _session_factory is not None
    return _session_factory()


def _jsonable(value: Any) -> Any:
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _int_or_none(value: Any) -> Optional[int]:
    if isinstance(value, bool) or value is None:
        return None
    try:
        v = int(value)
    except (TypeError, ValueError):
        return None
    return v if -_SQLITE_INT_MAX <= v <= _SQLITE_INT_MAX else None


def _float_or_none(value: Any) -> Optional[float]:
    if isinstance(value, bool) or value is None:
        return None
    try:
        return float(value)
    except (TypeError, ValueError):
        return None


def record_rows(command: str, rows: Iterable[Mapping[str, Any]]) -> int:
    """Append *rows* under *command*; returns how many were written."""
    now = datetime.now(timezone.utc)
    written = 0
    with _lock:
        with _session() as session:
            for row in rows:
                success = row.get("success")
                session.add(RunRecord(
                    command=command,
                    recorded_at=now,
                    n=_float_or_none(row.get("n")),
                    f=_int_or_none(row.get("f")),
                    seed=_int_or_none(row.get("seed")),
                    success=success if isinstance(success, bool) else None,
                    t_total=_float_or_none(row.get("t_total")),
                    payload=json.dumps({k: _jsonable(v) for k, v in row.items()}),
                ))
                written += 1
            session.commit()
    return written


def fetch_rows(command: Optional[str] = None) -> list[dict]:
    """Stored rows in insertion order, optionally for one command."""
    with _lock:
        with _session() as session:
            stmt = select(RunRecord).order_by(RunRecord.id)
            if command is not None:
                stmt = stmt.where(RunRecord.command == command)
            return [json.loads(rec.payload) for rec in session.scalars(stmt)]


def database_path() -> Optional[Path]:
    return _db_file
