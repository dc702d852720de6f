import io
import json
from datetime import date
from pathlib import Path

import pytest

from sentibubbles.entities import Entity, EntityCatalog, load_catalog
from sentibubbles.preprocess import PreprocessConfig
from sentibubbles.sentiment import load_lexicon
from sentibubbles.store import RecordStore, ingest_dump

DATA_DIR = Path(__file__).parent / "data"
GOLDEN_DIR = Path(__file__).parent / "golden"


def make_catalog(*entities):
    return EntityCatalog(entities)


@pytest.fixture
def ronaldo_catalog():
    """The single-entity catalog used across matching examples."""
    return make_catalog(
        Entity(
            id="cristiano-ronaldo",
            canonical_name="Cristiano Ronaldo",
            keywords=frozenset({"Ronaldo", "CR7"}),
            category="sports",
        )
    )


@pytest.fixture
def sample_catalog():
    """Two sports entities plus one politics entity."""
    with open(DATA_DIR / "catalog.jsonl", "rb") as handle:
        return load_catalog(handle)


@pytest.fixture
def sample_lexicon():
    with open(DATA_DIR / "lexicon.tsv", "rb") as handle:
        return load_lexicon(handle)


@pytest.fixture
def sample_store(sample_catalog):
    """In-memory store loaded with the hand-written sample dump."""
    store = RecordStore()
    with open(DATA_DIR / "sample_dump.jsonl", "rb") as handle:
        ingest_dump(handle, sample_catalog, store)
    yield store
    store.close()


@pytest.fixture
def small_config():
    """Explicit tiny word lists so expectations stay hand-derivable."""
    return PreprocessConfig(
        stopwords=frozenset(
            {"do", "esta", "no", "o", "a", "ao", "de", "da", "e",
             "que", "um", "uma", "em", "the", "and"}
        ),
        whitelist=frozenset({"psd", "fc"}),
    )


@pytest.fixture(scope="session")
def default_config():
    return PreprocessConfig.load_default()


_acceptance_results = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        name = report.nodeid.split("::")[-1].replace("test_criterion_", "")
        _acceptance_results[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results.items():
        terminalreporter.write_line(f"{outcome.upper():6s}  {name}")


def dump_line(record_id, timestamp, text):
    return json.dumps(
        {"id": record_id, "timestamp": timestamp, "text": text}, ensure_ascii=False
    )


def dump_stream(*lines):
    return io.StringIO("\n".join(lines) + "\n")


def ingest_lines(store, catalog, *lines):
    return ingest_dump(dump_stream(*lines), catalog, store)
