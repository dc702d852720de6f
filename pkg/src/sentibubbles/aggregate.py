"""Daily entity-centric meta-documents and the corpora built from them.

A meta-document is the bag of surviving tokens from all of one entity's
records on one UTC day; it is the document unit for topic modeling and the
frequency source for term bubbles.  A corpus collects the non-empty
meta-documents for one scope:

    "global"            every entity in the catalog
    "category:<label>"  entities sharing one category
    "entity:<id>"       a single entity

Document order (by entity id, then date) and vocabulary order
(lexicographic) are deterministic, so rebuilding from an unchanged store is
bit-identical.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from datetime import date
from typing import IO, Iterable, Mapping

import numpy as np
from scipy import sparse

from .entities import EntityCatalog
from .errors import InvalidRangeError, NotFoundError
from .preprocess import PreprocessConfig, keyword_token_sequences, preprocess_text
from .store import DayKey, RecordStore


@dataclass(frozen=True)
class MetaDocument:
    """Bag-of-words for one (entity, day); may be empty."""

    key: DayKey
    term_counts: Mapping[str, int]
    source_record_ids: tuple[str, ...]
    total_tokens: int


def build_meta_document(
    key: DayKey,
    store: RecordStore,
    catalog: EntityCatalog,
    config: PreprocessConfig,
) -> MetaDocument:
    """Aggregate the day's surviving tokens; discarded records contribute nothing."""
    sequences = keyword_token_sequences(catalog.entity(key.entity_id).keywords)
    counts: Counter[str] = Counter()
    sources: list[str] = []
    for record in store.records_for(key):
        tokens = preprocess_text(record.text, sequences, config)
        if not tokens:  # discarded by rule 1, or nothing survived
            continue
        counts.update(tokens)
        sources.append(record.record_id)
    return MetaDocument(
        key=key,
        term_counts=dict(counts),
        source_record_ids=tuple(sources),
        total_tokens=sum(counts.values()),
    )


class MetaDocumentBuilder:
    """Caches meta-documents per (entity, date, config fingerprint).

    The same meta-documents feed topic modeling, bubbles and the query
    service; the config fingerprint keys the cache so a config change never
    serves stale documents.
    """

    def __init__(
        self,
        store: RecordStore,
        catalog: EntityCatalog,
        config: PreprocessConfig,
    ):
        self.store = store
        self.catalog = catalog
        self.config = config
        self._fingerprint = config.fingerprint()
        self._cache: dict[tuple[str, date, str], MetaDocument] = {}

    def build(self, key: DayKey) -> MetaDocument:
        cache_key = (key.entity_id, key.date, self._fingerprint)
        doc = self._cache.get(cache_key)
        if doc is None:
            doc = build_meta_document(key, self.store, self.catalog, self.config)
            self._cache[cache_key] = doc
        return doc


class Corpus:
    """Ordered non-empty meta-documents plus their merged vocabulary."""

    def __init__(self, documents: Iterable[MetaDocument], scope: str):
        self.documents: tuple[MetaDocument, ...] = tuple(
            sorted(documents, key=lambda d: d.key)
        )
        self.scope = scope
        vocab = set()
        for doc in self.documents:
            vocab.update(doc.term_counts)
        self.vocabulary: tuple[str, ...] = tuple(sorted(vocab))
        self.vocab_index: dict[str, int] = {
            term: i for i, term in enumerate(self.vocabulary)
        }

    def __len__(self) -> int:
        return len(self.documents)

    def index_of(self, term: str) -> int:
        return self.vocab_index[term]

    def term_at(self, index: int) -> str:
        return self.vocabulary[index]

    def doc_keys(self) -> tuple[DayKey, ...]:
        return tuple(doc.key for doc in self.documents)


def resolve_scope(scope: str, catalog: EntityCatalog) -> list[str]:
    """Scope label -> entity ids it covers; NotFoundError on unknown names."""
    if scope == "global":
        return [e.id for e in catalog]
    if scope.startswith("category:"):
        label = scope[len("category:") :]
        return [e.id for e in catalog.entities_in_category(label)]
    if scope.startswith("entity:"):
        entity_id = scope[len("entity:") :]
        return [catalog.entity(entity_id).id]
    raise ValueError(f"unrecognized scope {scope!r}")


def build_corpus(
    scope: str,
    date_range: tuple[date, date],
    store: RecordStore,
    catalog: EntityCatalog,
    config: PreprocessConfig,
    builder: MetaDocumentBuilder | None = None,
) -> Corpus:
    """One document per (entity, day) with >= 1 surviving token in the range.

    Empty meta-documents are excluded: topic models are undefined on empty
    documents, and a day with no surviving tokens carries no signal.
    """
    from_date, to_date = date_range
    if from_date > to_date:
        raise InvalidRangeError(f"from_date {from_date} is after to_date {to_date}")
    entity_ids = resolve_scope(scope, catalog)
    if builder is None:
        builder = MetaDocumentBuilder(store, catalog, config)
    documents = []
    for key in store.day_keys(entity_ids, from_date, to_date):
        doc = builder.build(key)
        if doc.total_tokens >= 1:
            documents.append(doc)
    return Corpus(documents, scope=scope)


def corpus_to_matrix(corpus: Corpus) -> sparse.csr_matrix:
    """Documents x vocabulary count matrix (CSR, int64)."""
    rows, cols, data = [], [], []
    for d, doc in enumerate(corpus.documents):
        for term, count in doc.term_counts.items():
            rows.append(d)
            cols.append(corpus.vocab_index[term])
            data.append(count)
    matrix = sparse.csr_matrix(
        (data, (rows, cols)),
        shape=(len(corpus.documents), len(corpus.vocabulary)),
        dtype=np.int64,
    )
    matrix.sort_indices()
    return matrix


def export_corpus(corpus: Corpus, stream: IO[str]) -> None:
    """Plain-text interchange dump: entity, date, then term:count pairs.

    Terms are emitted in vocabulary (lexicographic) order; tokens contain only
    letters and digits, so ":" and whitespace are safe separators.
    """
    for doc in corpus.documents:
        pairs = " ".join(
            f"{term}:{doc.term_counts[term]}"
            for term in sorted(doc.term_counts)
        )
        stream.write(f"{doc.key.entity_id}\t{doc.key.date.isoformat()}\t{pairs}\n")
