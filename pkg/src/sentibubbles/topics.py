"""Topic models over meta-document corpora and per-day topic queries.

Three scoping modes mirror how corpora are assembled: one global model, one
model per entity category, or one model per entity.  A topic has no label of
its own; it is identified by its top terms.

Fitted models serialize to a versioned JSON file (vocabulary, document keys,
params, and the phi/theta matrices as base64 little-endian float64), so a
fixed seed gives a byte-identical file and the query service can load instead
of refitting.
"""

from __future__ import annotations

import base64
import hashlib
import json
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

import numpy as np

from .aggregate import Corpus, MetaDocumentBuilder, build_corpus, corpus_to_matrix
from .entities import EntityCatalog
from .errors import NotFoundError
from .gibbs import GibbsLda
from .preprocess import PreprocessConfig
from .store import DayKey, RecordStore

MODEL_FORMAT = "sentibubbles-topic-model"
MODEL_VERSION = 1


@dataclass(frozen=True)
class LdaParams:
    """Sampler hyperparameters; alpha=None means the 50/K heuristic."""

    n_topics: int = 10
    alpha: float | None = None
    beta: float = 0.01
    iterations: int = 1000
    burn_in: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.n_topics < 1:
            raise ValueError("n_topics must be >= 1")
        if self.alpha is not None and self.alpha <= 0:
            raise ValueError("alpha must be > 0")
        if self.beta <= 0:
            raise ValueError("beta must be > 0")
        if not 0 <= self.burn_in < self.iterations:
            raise ValueError("required: iterations > burn_in >= 0")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")

    def resolved_alpha(self) -> float:
        return 50.0 / self.n_topics if self.alpha is None else self.alpha

    def fingerprint(self) -> str:
        payload = json.dumps(
            {
                "n_topics": self.n_topics,
                "alpha": self.alpha,
                "beta": self.beta,
                "iterations": self.iterations,
                "burn_in": self.burn_in,
                "seed": self.seed,
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class TopicSummary:
    """One topic shown as its most related words, weights non-increasing."""

    topic_id: int
    top_terms: tuple[tuple[str, float], ...]


@dataclass
class TopicModel:
    """Fitted state: smoothed phi (K x V) and theta (D x K) plus alignment."""

    params: LdaParams
    scope: str
    vocabulary: tuple[str, ...]
    doc_keys: tuple[DayKey, ...]
    phi: np.ndarray = field(repr=False)
    theta: np.ndarray = field(repr=False)

    def __post_init__(self):
        self._key_index = {key: i for i, key in enumerate(self.doc_keys)}

    @property
    def n_topics(self) -> int:
        return self.phi.shape[0]

    def document_index(self, key: DayKey) -> int:
        try:
            return self._key_index[key]
        except KeyError:
            raise NotFoundError(
                f"no document for entity {key.entity_id!r} on {key.date.isoformat()} "
                f"in model scope {self.scope!r}"
            ) from None


def fit(corpus: Corpus, params: LdaParams) -> TopicModel:
    """Fit one model on one corpus; deterministic in (corpus, params, seed)."""
    if len(corpus) == 0:
        raise ValueError(f"corpus for scope {corpus.scope!r} is empty")
    estimator = GibbsLda(
        n_topics=params.n_topics,
        alpha=params.alpha,
        beta=params.beta,
        iterations=params.iterations,
        burn_in=params.burn_in,
        seed=params.seed,
    )
    estimator.fit(corpus_to_matrix(corpus))
    return TopicModel(
        params=params,
        scope=corpus.scope,
        vocabulary=corpus.vocabulary,
        doc_keys=corpus.doc_keys(),
        phi=estimator.components_,
        theta=estimator.doc_topic_,
    )


def top_words(model: TopicModel, topic_id: int, n: int) -> TopicSummary:
    """Top-min(n, V) terms of one topic; ties broken lexicographically."""
    if not 0 <= topic_id < model.n_topics:
        raise ValueError(
            f"topic_id {topic_id} out of range [0, {model.n_topics})"
        )
    if n < 1:
        raise ValueError("n must be >= 1")
    row = model.phi[topic_id]
    vocab = np.asarray(model.vocabulary, dtype=object)
    # lexsort: last key is primary -> weight descending, then term ascending.
    order = np.lexsort((vocab, -row))[: min(n, len(vocab))]
    return TopicSummary(
        topic_id=topic_id,
        top_terms=tuple((model.vocabulary[v], float(row[v])) for v in order),
    )


def topics_for_day(
    model: TopicModel, key: DayKey, n_topics: int = 3, n_words: int = 10
) -> list[tuple[TopicSummary, float]]:
    """The day's dominant topics with their theta weights, non-increasing.

    Ties break by topic id ascending; NotFoundError when the model has no
    document for the key.
    """
    if n_topics < 1:
        raise ValueError("n_topics must be >= 1")
    d = model.document_index(key)
    row = model.theta[d]
    order = np.lexsort((np.arange(model.n_topics), -row))
    order = order[: min(n_topics, model.n_topics)]
    return [(top_words(model, int(k), n_words), float(row[k])) for k in order]


_MODES = ("global", "category", "entity")


def scope_labels(mode: str, catalog: EntityCatalog) -> list[str]:
    """All scope labels one mode can produce over a catalog."""
    if mode == "global":
        return ["global"]
    if mode == "category":
        return [f"category:{c}" for c in catalog.categories()]
    if mode == "entity":
        return [f"entity:{e.id}" for e in catalog]
    raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")


def build_scoped_models(
    mode: str,
    date_range: tuple[date, date],
    store: RecordStore,
    catalog: EntityCatalog,
    config: PreprocessConfig,
    params: LdaParams,
    builder: MetaDocumentBuilder | None = None,
) -> dict[str, TopicModel]:
    """Fit one model per scope label of the mode; empty corpora are skipped."""
    if builder is None:
        builder = MetaDocumentBuilder(store, catalog, config)
    models: dict[str, TopicModel] = {}
    for label in scope_labels(mode, catalog):
        corpus = build_corpus(label, date_range, store, catalog, config, builder)
        if len(corpus) == 0:
            continue
        models[label] = fit(corpus, params)
    return models


def _encode_array(arr: np.ndarray) -> dict:
    data = np.ascontiguousarray(arr, dtype="<f8")
    return {
        "shape": list(arr.shape),
        "dtype": "<f8",
        "data": base64.b64encode(data.tobytes()).decode("ascii"),
    }


def _decode_array(raw: dict) -> np.ndarray:
    data = np.frombuffer(base64.b64decode(raw["data"]), dtype=raw["dtype"])
    return data.reshape(raw["shape"]).copy()


def save_model(model: TopicModel, path: str | Path) -> None:
    """Write the versioned JSON serialization; deterministic byte-for-byte."""
    document = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "scope": model.scope,
        "params": {
            "n_topics": model.params.n_topics,
            "alpha": model.params.alpha,
            "beta": model.params.beta,
            "iterations": model.params.iterations,
            "burn_in": model.params.burn_in,
            "seed": model.params.seed,
        },
        "params_fingerprint": model.params.fingerprint(),
        "vocabulary": list(model.vocabulary),
        "doc_keys": [
            [key.entity_id, key.date.isoformat()] for key in model.doc_keys
        ],
        "phi": _encode_array(model.phi),
        "theta": _encode_array(model.theta),
    }
    Path(path).write_text(
        json.dumps(document, ensure_ascii=False, separators=(",", ":")),
        encoding="utf-8",
    )


def load_model(path: str | Path) -> TopicModel:
    document = json.loads(Path(path).read_text(encoding="utf-8"))
    if document.get("format") != MODEL_FORMAT:
        raise ValueError(f"{path}: not a {MODEL_FORMAT} file")
    if document.get("version") != MODEL_VERSION:
        raise ValueError(
            f"{path}: unsupported model version {document.get('version')!r}"
        )
    params = LdaParams(**document["params"])
    return TopicModel(
        params=params,
        scope=document["scope"],
        vocabulary=tuple(document["vocabulary"]),
        doc_keys=tuple(
            DayKey(entity_id, date.fromisoformat(day))
            for entity_id, day in document["doc_keys"]
        ),
        phi=_decode_array(document["phi"]),
        theta=_decode_array(document["theta"]),
    )


def model_filename(scope: str) -> str:
    """Scope label -> file name; ':' is the only non-filename character used."""
    return scope.replace(":", "__") + ".model.json"


def save_models(models: dict[str, TopicModel], model_dir: str | Path) -> list[Path]:
    directory = Path(model_dir)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for scope in sorted(models):
        path = directory / model_filename(scope)
        save_model(models[scope], path)
        paths.append(path)
    return paths


def load_models(model_dir: str | Path) -> dict[str, TopicModel]:
    """Load every *.model.json in a directory, indexed by scope label."""
    models: dict[str, TopicModel] = {}
    for path in sorted(Path(model_dir).glob("*.model.json")):
        model = load_model(path)
        if model.scope in models:
            raise ValueError(f"duplicate model scope {model.scope!r} in {model_dir}")
        models[model.scope] = model
    return models
