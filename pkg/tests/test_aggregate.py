import io
from collections import Counter
from datetime import date

import pytest

from sentibubbles.aggregate import (
    Corpus,
    MetaDocument,
    MetaDocumentBuilder,
    build_corpus,
    build_meta_document,
    corpus_to_matrix,
    export_corpus,
)
from sentibubbles.errors import InvalidRangeError, NotFoundError
from sentibubbles.preprocess import keyword_token_sequences, preprocess_text
from sentibubbles.store import DayKey

RANGE = (date(2015, 7, 9), date(2015, 7, 13))
CR_DAY1 = DayKey("cristiano-ronaldo", date(2015, 7, 10))


class TestBuildMetaDocument:
    def test_hand_counted_day(self, sample_store, sample_catalog, default_config):
        meta = build_meta_document(CR_DAY1, sample_store, sample_catalog, default_config)
        assert meta.term_counts == {
            "golo": 4,
            "vitória": 2,
            "jogo": 2,
            "hoje": 2,
            "fantástica": 1,
            "capitão": 1,
            "incrível": 1,
            "estádio": 1,
            "grande": 1,
            "recordar": 1,
        }
        assert meta.total_tokens == 16
        # r4 is 23 chars: discarded, so it contributes no tokens
        assert meta.source_record_ids == ("r1", "r2", "r3")

    def test_day_with_only_short_records(self, sample_store, sample_catalog, default_config):
        # every cristiano-ronaldo record on the 12th... there are none;
        # an absent day gives an empty meta-document
        meta = build_meta_document(
            DayKey("cristiano-ronaldo", date(2015, 7, 12)),
            sample_store,
            sample_catalog,
            default_config,
        )
        assert meta.term_counts == {}
        assert meta.total_tokens == 0
        assert meta.source_record_ids == ()

    def test_counts_match_brute_force(self, sample_store, sample_catalog, default_config):
        # oracle: concatenate every record's token list, then count
        for key in sample_store.day_keys():
            sequences = keyword_token_sequences(
                sample_catalog.entity(key.entity_id).keywords
            )
            expected = Counter()
            for record in sample_store.records_for(key):
                tokens = preprocess_text(record.text, sequences, default_config)
                if tokens:
                    expected.update(tokens)
            meta = build_meta_document(key, sample_store, sample_catalog, default_config)
            assert meta.term_counts == dict(expected)
            assert meta.total_tokens == sum(expected.values())

    def test_builder_caches(self, sample_store, sample_catalog, default_config):
        builder = MetaDocumentBuilder(sample_store, sample_catalog, default_config)
        first = builder.build(CR_DAY1)
        assert builder.build(CR_DAY1) is first


class TestBuildCorpus:
    def test_entity_scope_excludes_empty_days(self, sample_store, sample_catalog, default_config):
        corpus = build_corpus(
            "entity:cristiano-ronaldo", RANGE, sample_store, sample_catalog, default_config
        )
        assert [d.key for d in corpus.documents] == [
            DayKey("cristiano-ronaldo", date(2015, 7, 10)),
            DayKey("cristiano-ronaldo", date(2015, 7, 11)),
        ]

    def test_global_scope(self, sample_store, sample_catalog, default_config):
        corpus = build_corpus("global", RANGE, sample_store, sample_catalog, default_config)
        assert len(corpus) == 6  # 2 days per entity with surviving tokens

    def test_category_scope_excludes_other_category(
        self, sample_store, sample_catalog, default_config
    ):
        sports = build_corpus(
            "category:sports", RANGE, sample_store, sample_catalog, default_config
        )
        entity_ids = {d.key.entity_id for d in sports.documents}
        assert entity_ids == {"cristiano-ronaldo", "benfica"}

    def test_scoping_consistency(self, sample_store, sample_catalog, default_config):
        # global == union over categories == union over entities
        global_keys = set(
            build_corpus("global", RANGE, sample_store, sample_catalog, default_config).doc_keys()
        )
        category_keys = set()
        for category in sample_catalog.categories():
            category_keys |= set(
                build_corpus(
                    f"category:{category}", RANGE, sample_store, sample_catalog, default_config
                ).doc_keys()
            )
        entity_keys = set()
        for entity in sample_catalog:
            entity_keys |= set(
                build_corpus(
                    f"entity:{entity.id}", RANGE, sample_store, sample_catalog, default_config
                ).doc_keys()
            )
        assert global_keys == category_keys == entity_keys

    def test_unknown_scope_targets(self, sample_store, sample_catalog, default_config):
        with pytest.raises(NotFoundError):
            build_corpus("entity:nobody", RANGE, sample_store, sample_catalog, default_config)
        with pytest.raises(NotFoundError):
            build_corpus("category:cinema", RANGE, sample_store, sample_catalog, default_config)
        with pytest.raises(ValueError):
            build_corpus("sideways", RANGE, sample_store, sample_catalog, default_config)

    def test_invalid_range(self, sample_store, sample_catalog, default_config):
        with pytest.raises(InvalidRangeError):
            build_corpus(
                "global",
                (date(2015, 7, 12), date(2015, 7, 10)),
                sample_store,
                sample_catalog,
                default_config,
            )

    def test_deterministic_rebuild(self, sample_store, sample_catalog, default_config):
        one = build_corpus("global", RANGE, sample_store, sample_catalog, default_config)
        two = build_corpus("global", RANGE, sample_store, sample_catalog, default_config)
        assert one.vocabulary == two.vocabulary
        assert one.doc_keys() == two.doc_keys()
        assert [d.term_counts for d in one.documents] == [
            d.term_counts for d in two.documents
        ]


class TestCorpus:
    def test_vocabulary_round_trip(self, sample_store, sample_catalog, default_config):
        corpus = build_corpus("global", RANGE, sample_store, sample_catalog, default_config)
        assert corpus.vocabulary == tuple(sorted(corpus.vocabulary))
        for i, term in enumerate(corpus.vocabulary):
            assert corpus.index_of(term) == i
            assert corpus.term_at(i) == term

    def test_vocabulary_is_exact_union(self, sample_store, sample_catalog, default_config):
        corpus = build_corpus("global", RANGE, sample_store, sample_catalog, default_config)
        union = set()
        for doc in corpus.documents:
            union |= set(doc.term_counts)
        assert set(corpus.vocabulary) == union

    def test_matrix_counts(self):
        docs = [
            MetaDocument(DayKey("e", date(2015, 1, 1)), {"b": 2, "a": 1}, ("r1",), 3),
            MetaDocument(DayKey("e", date(2015, 1, 2)), {"c": 5}, ("r2",), 5),
        ]
        corpus = Corpus(docs, scope="entity:e")
        matrix = corpus_to_matrix(corpus)
        assert matrix.shape == (2, 3)
        assert matrix.toarray().tolist() == [[1, 2, 0], [0, 0, 5]]

    def test_export_format(self):
        docs = [
            MetaDocument(DayKey("e", date(2015, 1, 1)), {"b": 2, "a": 1}, ("r1",), 3),
        ]
        corpus = Corpus(docs, scope="entity:e")
        out = io.StringIO()
        export_corpus(corpus, out)
        assert out.getvalue() == "e\t2015-01-01\ta:1 b:2\n"
