"""Entity-centric daily text analytics.

Short timestamped texts are matched to entities by keyword, aggregated into
per-(entity, day) meta-documents, and summarized three ways: term bubbles
(frequency + word polarity), topics from a collapsed-Gibbs LDA model, and a
per-day trendline.  A small HTTP service and CLI expose the results.
"""

from .aggregate import Corpus, MetaDocument, build_corpus, build_meta_document
from .entities import Entity, EntityCatalog, load_catalog, match_entities
from .errors import InvalidRangeError, ModelNotBuiltError, NotFoundError
from .gibbs import GibbsLda
from .preprocess import PreprocessConfig, preprocess
from .sentiment import Bubble, SentimentLexicon, bubbles_for_day, load_lexicon, polarity
from .store import DayKey, IngestReport, RecordStore, TextRecord, ingest_dump
from .topics import (
    LdaParams,
    TopicModel,
    TopicSummary,
    build_scoped_models,
    fit,
    load_model,
    save_model,
    top_words,
    topics_for_day,
)

__version__ = "0.1.0"

__all__ = [
    "Bubble",
    "Corpus",
    "DayKey",
    "Entity",
    "EntityCatalog",
    "GibbsLda",
    "IngestReport",
    "InvalidRangeError",
    "LdaParams",
    "MetaDocument",
    "ModelNotBuiltError",
    "NotFoundError",
    "PreprocessConfig",
    "RecordStore",
    "SentimentLexicon",
    "TextRecord",
    "TopicModel",
    "TopicSummary",
    "build_corpus",
    "build_meta_document",
    "build_scoped_models",
    "bubbles_for_day",
    "fit",
    "ingest_dump",
    "load_catalog",
    "load_lexicon",
    "load_model",
    "match_entities",
    "polarity",
    "preprocess",
    "save_model",
    "top_words",
    "topics_for_day",
    "__version__",
]
