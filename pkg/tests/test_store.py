import io
import json
from datetime import date, datetime, timezone

import pytest

from sentibubbles.errors import InvalidRangeError
from sentibubbles.store import (
    DayKey,
    RecordStore,
    TextRecord,
    ingest_dump,
    parse_rfc3339,
)

from conftest import dump_line, ingest_lines


class TestParseRfc3339:
    def test_z_suffix(self):
        parsed = parse_rfc3339("2015-07-10T18:30:00Z")
        assert parsed == datetime(2015, 7, 10, 18, 30, tzinfo=timezone.utc)

    def test_offset_normalized_to_utc(self):
        parsed = parse_rfc3339("2015-07-10T01:30:00+02:00")
        assert parsed == datetime(2015, 7, 9, 23, 30, tzinfo=timezone.utc)
        assert parsed.tzinfo == timezone.utc

    def test_naive_rejected(self):
        with pytest.raises(ValueError):
            parse_rfc3339("2015-07-10T18:30:00")


class TestIngest:
    def test_counts_match_example(self, ronaldo_catalog):
        # 3 records: 2 matching, 1 matching none
        store = RecordStore()
        report = ingest_lines(
            store,
            ronaldo_catalog,
            dump_line("a", "2015-07-10T10:00:00Z", "golo do Ronaldo"),
            dump_line("b", "2015-07-10T11:00:00Z", "CR7 em grande"),
            dump_line("c", "2015-07-10T12:00:00Z", "bom dia a todos"),
        )
        assert report.as_dict() == {"read": 3, "matched": 2, "stored": 2, "skipped": 0}
        day = store.records_for(DayKey("cristiano-ronaldo", date(2015, 7, 10)))
        assert [r.record_id for r in day] == ["a", "b"]
        store.close()

    def test_empty_stream(self, ronaldo_catalog):
        store = RecordStore()
        report = ingest_dump(io.StringIO(""), ronaldo_catalog, store)
        assert report.as_dict() == {"read": 0, "matched": 0, "stored": 0, "skipped": 0}
        store.close()

    def test_record_matching_two_entities_stored_once(self, sample_catalog):
        store = RecordStore()
        report = ingest_lines(
            store,
            sample_catalog,
            dump_line("x", "2015-07-10T10:00:00Z", "Ronaldo contra o Benfica"),
        )
        assert report.stored == 1
        for entity_id in ("cristiano-ronaldo", "benfica"):
            records = store.records_for(DayKey(entity_id, date(2015, 7, 10)))
            assert [r.record_id for r in records] == ["x"]
            assert records[0].entity_ids == frozenset({"cristiano-ronaldo", "benfica"})
        store.close()

    def test_malformed_lines_skipped(self, ronaldo_catalog):
        store = RecordStore()
        report = ingest_lines(
            store,
            ronaldo_catalog,
            "{broken",
            dump_line("ok", "2015-07-10T10:00:00Z", "Ronaldo"),
            json.dumps({"id": "no-ts", "text": "Ronaldo"}),
            json.dumps({"id": "bad-ts", "timestamp": "yesterday", "text": "Ronaldo"}),
            json.dumps({"id": "naive", "timestamp": "2015-07-10T10:00:00", "text": "Ronaldo"}),
        )
        assert report.as_dict() == {"read": 5, "matched": 1, "stored": 1, "skipped": 4}
        store.close()

    def test_duplicate_ids_skipped(self, ronaldo_catalog):
        store = RecordStore()
        line = dump_line("dup", "2015-07-10T10:00:00Z", "Ronaldo")
        report = ingest_lines(store, ronaldo_catalog, line, line)
        assert report.as_dict() == {"read": 2, "matched": 1, "stored": 1, "skipped": 1}
        store.close()

    def test_replay_is_idempotent(self, sample_catalog):
        lines = [
            dump_line("a", "2015-07-10T10:00:00Z", "golo do Ronaldo"),
            dump_line("b", "2015-07-11T11:00:00Z", "Benfica campeão"),
        ]
        store = RecordStore()
        first = ingest_lines(store, sample_catalog, *lines)
        snapshot1 = store.day_keys()
        second = ingest_lines(store, sample_catalog, *lines)
        assert first.stored == 2
        assert second.stored == 0
        assert second.skipped == 2
        assert store.day_keys() == snapshot1
        store.close()

    def test_blank_lines_ignored(self, ronaldo_catalog):
        store = RecordStore()
        report = ingest_dump(
            io.StringIO("\n\n" + dump_line("a", "2015-07-10T10:00:00Z", "CR7") + "\n\n"),
            ronaldo_catalog,
            store,
        )
        assert report.read == 1
        store.close()

    def test_catalog_persisted(self, sample_catalog):
        store = RecordStore()
        ingest_lines(
            store,
            sample_catalog,
            dump_line("a", "2015-07-10T10:00:00Z", "golo do Ronaldo"),
        )
        loaded = store.load_catalog()
        assert [e.id for e in loaded] == sorted(e.id for e in sample_catalog)
        assert loaded.index == sample_catalog.index
        store.close()


class TestRecordsFor:
    def test_empty_key(self, sample_store):
        assert sample_store.records_for(DayKey("benfica", date(2016, 1, 1))) == []

    def test_ordering_by_timestamp(self, sample_store):
        records = sample_store.records_for(
            DayKey("cristiano-ronaldo", date(2015, 7, 10))
        )
        assert [r.record_id for r in records] == ["r1", "r2", "r3", "r4"]
        stamps = [r.timestamp for r in records]
        assert stamps == sorted(stamps)

    def test_day_boundary_is_utc(self, sample_store):
        # r9 is 23:50 UTC on the 11th: belongs to that date, not the next
        on_day = sample_store.records_for(
            DayKey("cristiano-ronaldo", date(2015, 7, 11))
        )
        assert "r9" in [r.record_id for r in on_day]
        next_day = sample_store.records_for(
            DayKey("cristiano-ronaldo", date(2015, 7, 12))
        )
        assert next_day == []

    def test_offset_timestamp_day(self, sample_store):
        # r13 is 10:15+01:00 = 09:15 UTC on the 12th
        records = sample_store.records_for(DayKey("governo-pt", date(2015, 7, 12)))
        assert [r.record_id for r in records] == ["r13"]
        assert records[0].timestamp.tzinfo == timezone.utc

    def test_membership_invariant(self, sample_store):
        # every stored record appears under each of its entities' day keys
        for key in sample_store.day_keys():
            for record in sample_store.records_for(key):
                assert key.entity_id in record.entity_ids
                assert record.timestamp.date() == key.date


class TestDailyCounts:
    def test_zero_filled_range(self, sample_store):
        counts = sample_store.daily_counts(
            "cristiano-ronaldo", date(2015, 7, 9), date(2015, 7, 12)
        )
        assert counts == [
            (date(2015, 7, 9), 0),
            (date(2015, 7, 10), 4),
            (date(2015, 7, 11), 2),
            (date(2015, 7, 12), 0),
        ]

    def test_single_empty_day(self, sample_store):
        day = date(2016, 3, 1)
        assert sample_store.daily_counts("benfica", day, day) == [(day, 0)]

    def test_invalid_range(self, sample_store):
        with pytest.raises(InvalidRangeError):
            sample_store.daily_counts(
                "benfica", date(2015, 7, 12), date(2015, 7, 10)
            )

    def test_conservation(self, sample_store):
        # sum over the full stored range equals the per-entity record count
        lo, hi = sample_store.date_range()
        for entity_id in ("cristiano-ronaldo", "benfica", "governo-pt"):
            counts = sample_store.daily_counts(entity_id, lo, hi)
            assert sum(c for _, c in counts) == sample_store.record_count(entity_id)

    def test_example_counts(self, ronaldo_catalog):
        store = RecordStore()
        lines = [
            dump_line(f"r{i}", "2015-07-11T10:00:00Z", "golo do Ronaldo")
            for i in range(5)
        ]
        ingest_lines(store, ronaldo_catalog, *lines)
        counts = store.daily_counts(
            "cristiano-ronaldo", date(2015, 7, 10), date(2015, 7, 12)
        )
        assert counts == [
            (date(2015, 7, 10), 0),
            (date(2015, 7, 11), 5),
            (date(2015, 7, 12), 0),
        ]
        store.close()


class TestStoreMisc:
    def test_day_keys_sorted_and_filtered(self, sample_store):
        keys = sample_store.day_keys(["benfica"])
        assert keys == [
            DayKey("benfica", date(2015, 7, 10)),
            DayKey("benfica", date(2015, 7, 11)),
        ]
        ranged = sample_store.day_keys(None, date(2015, 7, 11), date(2015, 7, 12))
        assert all(date(2015, 7, 11) <= k.date <= date(2015, 7, 12) for k in ranged)

    def test_date_range(self, sample_store):
        assert sample_store.date_range() == (date(2015, 7, 10), date(2015, 7, 12))
        assert sample_store.date_range("benfica") == (
            date(2015, 7, 10),
            date(2015, 7, 11),
        )
        empty = RecordStore()
        assert empty.date_range() is None
        empty.close()

    def test_on_disk_roundtrip(self, tmp_path, sample_catalog):
        path = tmp_path / "records.db"
        store = RecordStore(path)
        ingest_lines(
            store,
            sample_catalog,
            dump_line("a", "2015-07-10T10:00:00Z", "golo do Ronaldo"),
        )
        store.close()

        reopened = RecordStore(path)
        records = reopened.records_for(
            DayKey("cristiano-ronaldo", date(2015, 7, 10))
        )
        assert [r.record_id for r in records] == ["a"]
        assert len(reopened.load_catalog()) == 3
        reopened.close()

    def test_raw_text_stored_verbatim(self, sample_store):
        records = sample_store.records_for(
            DayKey("cristiano-ronaldo", date(2015, 7, 10))
        )
        r1 = next(r for r in records if r.record_id == "r1")
        assert r1.text == "Golo golo golo do CR7! Que vitória fantástica do nosso capitão"
