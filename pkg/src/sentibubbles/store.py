"""Record storage keyed by (entity, UTC day).

Backed by an embedded SQLite database; pass ``":memory:"`` for an ephemeral
store in tests.  Raw text is stored verbatim so the UI can show original
records; day boundaries are UTC calendar dates.  The store also persists the
entity catalog used at ingest time, so downstream build/serve steps need only
the store path.

Dump files are UTF-8 JSON Lines, one record per line::

    {"id": "t0001", "timestamp": "2015-07-10T18:30:00Z", "text": "..."}

``timestamp`` is RFC 3339 with an explicit UTC offset.  Malformed lines are
tolerated: they are counted and skipped, ingestion continues.
"""

from __future__ import annotations

import io
import json
import sqlite3
import threading
from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone
from pathlib import Path
from typing import IO, Iterator

from .entities import Entity, EntityCatalog, match_entities
from .errors import InvalidRangeError


@dataclass(frozen=True)
class TextRecord:
    """One timestamped short text plus the entity ids matched at ingest."""

    record_id: str
    timestamp: datetime  # timezone-aware, normalized to UTC
    text: str
    entity_ids: frozenset[str]

    @property
    def day(self) -> date:
        return self.timestamp.date()


@dataclass(frozen=True, order=True)
class DayKey:
    """The aggregation unit: one entity on one UTC calendar date."""

    entity_id: str
    date: date


@dataclass
class IngestReport:
    """Counters for one ingest run.

    read    -- non-blank lines consumed (well-formed or not)
    matched -- well-formed, non-duplicate records mentioning >= 1 entity
    stored  -- records persisted (equals matched)
    skipped -- malformed lines plus duplicate record ids
    """

    read: int = 0
    matched: int = 0
    stored: int = 0
    skipped: int = 0

    def merged(self, other: "IngestReport") -> "IngestReport":
        return IngestReport(
            read=self.read + other.read,
            matched=self.matched + other.matched,
            stored=self.stored + other.stored,
            skipped=self.skipped + other.skipped,
        )

    def as_dict(self) -> dict[str, int]:
        return {
            "read": self.read,
            "matched": self.matched,
            "stored": self.stored,
            "skipped": self.skipped,
        }


def parse_rfc3339(value: str) -> datetime:
    """Parse an RFC 3339 timestamp; requires an explicit timezone offset."""
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    parsed = datetime.fromisoformat(text)
    if parsed.tzinfo is None:
        raise ValueError(f"timestamp {value!r} has no timezone offset")
    return parsed.astimezone(timezone.utc)


_SCHEMA = """
CREATE TABLE IF NOT EXISTS entities (
    id TEXT PRIMARY KEY,
    canonical_name TEXT NOT NULL,
    category TEXT NOT NULL,
    keywords TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS records (
    record_id TEXT PRIMARY KEY,
    ts_unix_us INTEGER NOT NULL,
    ts_utc TEXT NOT NULL,
    date_utc TEXT NOT NULL,
    text TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS record_entities (
    record_id TEXT NOT NULL REFERENCES records(record_id),
    entity_id TEXT NOT NULL,
    date_utc TEXT NOT NULL,
    PRIMARY KEY (record_id, entity_id)
);
CREATE INDEX IF NOT EXISTS idx_record_entities_day
    ON record_entities (entity_id, date_utc);
"""


class RecordStore:
    """Embedded store of ingested records and the catalog they matched.

    A single writer at a time; reads go through the same serialized
    connection, so they never observe a partially ingested record.
    """

    def __init__(self, path: str | Path = ":memory:"):
        self.path = str(path)
        self._conn = sqlite3.connect(self.path, check_same_thread=False)
        self._lock = threading.RLock()
        with self._lock:
            if self.path != ":memory:":
                self._conn.execute("PRAGMA journal_mode=WAL")
            self._conn.executescript(_SCHEMA)
            self._conn.commit()

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    def __enter__(self) -> "RecordStore":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # -- catalog persistence ------------------------------------------------

    def save_catalog(self, catalog: EntityCatalog) -> None:
        with self._lock:
            self._conn.execute("DELETE FROM entities")
            self._conn.executemany(
                "INSERT INTO entities (id, canonical_name, category, keywords) "
                "VALUES (?, ?, ?, ?)",
                [
                    (e.id, e.canonical_name, e.category, json.dumps(sorted(e.keywords)))
                    for e in catalog
                ],
            )
            self._conn.commit()

    def load_catalog(self) -> EntityCatalog:
        with self._lock:
            rows = self._conn.execute(
                "SELECT id, canonical_name, category, keywords FROM entities ORDER BY id"
            ).fetchall()
        return EntityCatalog(
            Entity(
                id=row[0],
                canonical_name=row[1],
                category=row[2],
                keywords=frozenset(json.loads(row[3])),
            )
            for row in rows
        )

    # -- writes --------------------------------------------------------------

    def has_record(self, record_id: str) -> bool:
        with self._lock:
            row = self._conn.execute(
                "SELECT 1 FROM records WHERE record_id = ?", (record_id,)
            ).fetchone()
        return row is not None

    def add_record(self, record: TextRecord) -> None:
        ts = record.timestamp.astimezone(timezone.utc)
        unix_us = int(ts.timestamp() * 1_000_000)
        day = ts.date().isoformat()
        with self._lock:
            self._conn.execute(
                "INSERT INTO records (record_id, ts_unix_us, ts_utc, date_utc, text) "
                "VALUES (?, ?, ?, ?, ?)",
                (record.record_id, unix_us, ts.isoformat(), day, record.text),
            )
            self._conn.executemany(
                "INSERT INTO record_entities (record_id, entity_id, date_utc) "
                "VALUES (?, ?, ?)",
                [(record.record_id, eid, day) for eid in sorted(record.entity_ids)],
            )

    def commit(self) -> None:
        with self._lock:
            self._conn.commit()

    def rollback(self) -> None:
        with self._lock:
            self._conn.rollback()

    # -- queries -------------------------------------------------------------

    def records_for(self, key: DayKey) -> list[TextRecord]:
        """All records of one (entity, day), ordered by (timestamp, record_id)."""
        with self._lock:
            rows = self._conn.execute(
                "SELECT r.record_id, r.ts_utc, r.text FROM records r "
                "JOIN record_entities re ON re.record_id = r.record_id "
                "WHERE re.entity_id = ? AND re.date_utc = ? "
                "ORDER BY r.ts_unix_us, r.record_id",
                (key.entity_id, key.date.isoformat()),
            ).fetchall()
            return [
                TextRecord(
                    record_id=row[0],
                    timestamp=datetime.fromisoformat(row[1]),
                    text=row[2],
                    entity_ids=self._entity_ids_of(row[0]),
                )
                for row in rows
            ]

    def _entity_ids_of(self, record_id: str) -> frozenset[str]:
        rows = self._conn.execute(
            "SELECT entity_id FROM record_entities WHERE record_id = ?", (record_id,)
        ).fetchall()
        return frozenset(row[0] for row in rows)

    def daily_counts(
        self, entity_id: str, from_date: date, to_date: date
    ) -> list[tuple[date, int]]:
        """One (date, count) point per calendar date in the inclusive range."""
        if from_date > to_date:
            raise InvalidRangeError(
                f"from_date {from_date} is after to_date {to_date}"
            )
        with self._lock:
            rows = self._conn.execute(
                "SELECT date_utc, COUNT(*) FROM record_entities "
                "WHERE entity_id = ? AND date_utc >= ? AND date_utc <= ? "
                "GROUP BY date_utc",
                (entity_id, from_date.isoformat(), to_date.isoformat()),
            ).fetchall()
        counts = {date.fromisoformat(row[0]): row[1] for row in rows}
        out: list[tuple[date, int]] = []
        current = from_date
        while current <= to_date:
            out.append((current, counts.get(current, 0)))
            current += timedelta(days=1)
        return out

    def record_count(self, entity_id: str) -> int:
        with self._lock:
            row = self._conn.execute(
                "SELECT COUNT(*) FROM record_entities WHERE entity_id = ?",
                (entity_id,),
            ).fetchone()
        return row[0]

    def day_keys(
        self,
        entity_ids: list[str] | None = None,
        from_date: date | None = None,
        to_date: date | None = None,
    ) -> list[DayKey]:
        """Distinct (entity, day) pairs with >= 1 record, sorted."""
        clauses, params = [], []
        if entity_ids is not None:
            if not entity_ids:
                return []
            placeholders = ",".join("?" for _ in entity_ids)
            clauses.append(f"entity_id IN ({placeholders})")
            params.extend(entity_ids)
        if from_date is not None:
            clauses.append("date_utc >= ?")
            params.append(from_date.isoformat())
        if to_date is not None:
            clauses.append("date_utc <= ?")
            params.append(to_date.isoformat())
        where = f"WHERE {' AND '.join(clauses)}" if clauses else ""
        with self._lock:
            rows = self._conn.execute(
                "SELECT DISTINCT entity_id, date_utc FROM record_entities "
                f"{where} ORDER BY entity_id, date_utc",
                params,
            ).fetchall()
        return [DayKey(row[0], date.fromisoformat(row[1])) for row in rows]

    def date_range(self, entity_id: str | None = None) -> tuple[date, date] | None:
        """(min, max) stored date, overall or for one entity; None when empty."""
        with self._lock:
            if entity_id is None:
                row = self._conn.execute(
                    "SELECT MIN(date_utc), MAX(date_utc) FROM record_entities"
                ).fetchone()
            else:
                row = self._conn.execute(
                    "SELECT MIN(date_utc), MAX(date_utc) FROM record_entities "
                    "WHERE entity_id = ?",
                    (entity_id,),
                ).fetchone()
        if row[0] is None:
            return None
        return date.fromisoformat(row[0]), date.fromisoformat(row[1])


def _iter_lines(source: IO[bytes] | IO[str]) -> Iterator[str]:
    if isinstance(source, (io.RawIOBase, io.BufferedIOBase)) or "b" in getattr(
        source, "mode", ""
    ):
        source = io.TextIOWrapper(source, encoding="utf-8")  # type: ignore[arg-type]
    yield from source  # type: ignore[misc]


def _parse_record_line(line: str) -> tuple[str, datetime, str]:
    raw = json.loads(line)
    if not isinstance(raw, dict):
        raise ValueError("record must be a JSON object")
    record_id = raw.get("id")
    if not isinstance(record_id, str) or not record_id:
        raise ValueError("field 'id' must be a non-empty string")
    text = raw.get("text")
    if not isinstance(text, str):
        raise ValueError("field 'text' must be a string")
    ts_raw = raw.get("timestamp")
    if not isinstance(ts_raw, str):
        raise ValueError("field 'timestamp' must be a string")
    return record_id, parse_rfc3339(ts_raw), text


def ingest_dump(
    source: IO[bytes] | IO[str],
    catalog: EntityCatalog,
    store: RecordStore,
) -> IngestReport:
    """Replay a newline-delimited dump into the store.

    Every well-formed record matching >= 1 entity is stored once, associated
    with each matched (entity, day).  Records matching nothing are counted in
    ``read`` only.  Malformed lines and duplicate record ids are skipped and
    counted.  The run commits as one batch, so concurrent readers never see a
    partial ingest; replaying the same dump twice leaves the store unchanged.
    """
    report = IngestReport()
    seen_ids: set[str] = set()
    store.save_catalog(catalog)
    try:
        for line in _iter_lines(source):
            line = line.strip()
            if not line:
                continue
            report.read += 1
            try:
                record_id, timestamp, text = _parse_record_line(line)
            except (ValueError, json.JSONDecodeError):
                report.skipped += 1
                continue
            if record_id in seen_ids or store.has_record(record_id):
                report.skipped += 1
                continue
            seen_ids.add(record_id)
            entity_ids = match_entities(text, catalog)
            if not entity_ids:
                continue
            report.matched += 1
            store.add_record(
                TextRecord(
                    record_id=record_id,
                    timestamp=timestamp,
                    text=text,
                    entity_ids=frozenset(entity_ids),
                )
            )
            report.stored += 1
    except Exception:
        store.rollback()
        raise
    store.commit()
    return report
