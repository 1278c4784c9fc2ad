"""SQLAlchemy ORM models for recorded experiment rows."""

from __future__ import annotations

from datetime import datetime
from typing import Optional

from sqlalchemy import BigInteger, Boolean, DateTime, Float, Integer, String, Text
from sqlalchemy.orm import DeclarativeBase, Mapped, mapped_column


class Base(DeclarativeBase):
    pass


class RunRecord(Base):
    """One output row of a CLI command; ``payload`` holds the full row as JSON."""

    __tablename__ = "run_records"

    id: Mapped[int] = mapped_column(Integer, primary_key=True, autoincrement=True)
    command: Mapped[str] = mapped_column(String(32), nullable=False, index=True)
    recorded_at: Mapped[datetime] = mapped_column(DateTime(timezone=True), nullable=False)
    n: Mapped[Optional[float]] = mapped_column(Float, nullable=True)
    f: Mapped[Optional[int]] = mapped_column(BigInteger, nullable=True)
    seed: Mapped[Optional[int]] = mapped_column(BigInteger, nullable=True)
    success: Mapped[Optional[bool]] = mapped_column(Boolean, nullable=True)
    t_total: Mapped[Optional[float]] = mapped_column(Float, nullable=True)
    payload: Mapped[str] = mapped_column(Text, nullable=False)
