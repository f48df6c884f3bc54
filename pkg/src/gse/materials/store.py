"""Embedded relational store backing the materials service.

Single-file sqlite keyed by canonical name. Writes commit before the call
returns, so an acknowledged upsert survives a process restart.
"""
from __future__ import annotations

import sqlite3
import threading

from .records import MaterialRecord, ReviewStatus, canonical_name

_SCHEMA = """
CREATE TABLE IF NOT EXISTS materials (
    canonical_name TEXT PRIMARY KEY,
    conductivity REAL NOT NULL,
    density REAL NOT NULL,
    specific_heat REAL NOT NULL,
    ee_coeff REAL NOT NULL,
    ew_coeff REAL NOT NULL,
    source_tag TEXT NOT NULL,
    review_status TEXT NOT NULL
)
"""


class MaterialStore:
    def __init__(self, path: str = ":memory:"):
        self.path = str(path)
        self._conn = sqlite3.connect(self.path, check_same_thread=False)
        self._lock = threading.Lock()
        with self._lock:
            self._conn.execute(_SCHEMA)
            self._conn.commit()

    def close(self) -> None:
        self._conn.close()

    def count(self) -> int:
        with self._lock:
            (n,) = self._conn.execute("SELECT COUNT(*) FROM materials").fetchone()
        return n

    def seed(self, records: dict[str, MaterialRecord], replace: bool = False) -> int:
        """Insert dataset records; existing names are kept unless `replace`."""
        verb = "INSERT OR REPLACE" if replace else "INSERT OR IGNORE"
        with self._lock:
            for rec in records.values():
                self._conn.execute(
                    f"{verb} INTO materials VALUES (?,?,?,?,?,?,?,?)",
                    _as_row(rec),
                )
            self._conn.commit()
        return self.count()

    def upsert(self, record: MaterialRecord) -> MaterialRecord:
        """Insert or replace; replacements drop back to Unreviewed."""
        existing = self.get(record.canonical_name)
        if existing is not None:
            record = MaterialRecord(
                canonical_name=record.canonical_name,
                conductivity=record.conductivity,
                density=record.density,
                specific_heat=record.specific_heat,
                ee_coeff=record.ee_coeff,
                ew_coeff=record.ew_coeff,
                source_tag=record.source_tag,
                review_status=ReviewStatus.UNREVIEWED,
            )
        with self._lock:
            self._conn.execute(
                "INSERT OR REPLACE INTO materials VALUES (?,?,?,?,?,?,?,?)",
                _as_row(record),
            )
            self._conn.commit()
        return record

    def get(self, name: str) -> MaterialRecord | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM materials WHERE canonical_name = ?",
                (canonical_name(name),),
            ).fetchone()
        return _from_row(row) if row else None

    def get_many(self, names: list[str]) -> tuple[list[MaterialRecord], list[str]]:
        """Records in request order plus the names that were not found."""
        found: list[MaterialRecord] = []
        missing: list[str] = []
        for name in names:
            rec = self.get(name)
            if rec is None:
                missing.append(name)
            else:
                found.append(rec)
        return found, missing

    def all_names(self) -> list[str]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT canonical_name FROM materials ORDER BY canonical_name"
            ).fetchall()
        return [r[0] for r in rows]


def _as_row(rec: MaterialRecord) -> tuple:
    return (
        rec.canonical_name,
        rec.conductivity,
        rec.density,
        rec.specific_heat,
        rec.ee_coeff,
        rec.ew_coeff,
        rec.source_tag,
        rec.review_status.value,
    )


def _from_row(row) -> MaterialRecord:
    return MaterialRecord(
        canonical_name=row[0],
        conductivity=row[1],
        density=row[2],
        specific_heat=row[3],
        ee_coeff=row[4],
        ew_coeff=row[5],
        source_tag=row[6],
        review_status=ReviewStatus(row[7]),
    )
