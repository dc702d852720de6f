"""HTTP query service over the fitted artifacts.

Five read-only endpoints serve the explorer UI (and any other client):

    GET /api/entities
    GET /api/entities/{id}/bubbles?date=D&limit=N
    GET /api/entities/{id}/trend?from=A&to=B
    GET /api/entities/{id}/topics?date=D&mode=M&n_topics=T&n_words=W
    GET /api/entities/{id}/tweets?date=D&term=T&limit=N

Responses are JSON; errors are structured bodies ``{"code", "message"}``
(404 unknown entity, 400 bad parameters, 409 model not built).  Payloads are
built by pure functions over an immutable snapshot and serialized through one
canonical encoder, shared with the offline CLI so ``query`` output is
byte-identical to the corresponding response body.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date

from fastapi import FastAPI, Request
from fastapi.responses import Response

from .aggregate import MetaDocumentBuilder
from .entities import EntityCatalog
from .errors import InvalidRangeError, NotFoundError
from .highlight import highlight_spans
from .preprocess import PreprocessConfig, keyword_token_sequences, preprocess_text
from .sentiment import SentimentLexicon, bubbles_for_day
from .store import DayKey, RecordStore
from .topics import TopicModel, topics_for_day

DEFAULT_BUBBLE_LIMIT = 30
DEFAULT_TWEET_LIMIT = 20
DEFAULT_N_TOPICS = 3
DEFAULT_N_WORDS = 10

MODES = ("global", "category", "entity")


class ApiError(Exception):
    """An error with a structured body and an HTTP status."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message

    def body(self) -> dict:
        return {"code": self.code, "message": self.message}


def encode_json(payload) -> bytes:
    """The one canonical JSON encoding used by service responses and the CLI."""
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":")).encode(
        "utf-8"
    )


@dataclass
class Snapshot:
    """Immutable artifacts a service process answers from.

    Swapping in a new snapshot is atomic by assignment; in-flight requests
    finish on the snapshot they started with.
    """

    catalog: EntityCatalog
    store: RecordStore
    models: dict[str, TopicModel]
    lexicon: SentimentLexicon
    config: PreprocessConfig
    builder: MetaDocumentBuilder = field(init=False)

    def __post_init__(self):
        self.builder = MetaDocumentBuilder(self.store, self.catalog, self.config)


def _require_entity(snapshot: Snapshot, entity_id: str):
    try:
        return snapshot.catalog.entity(entity_id)
    except NotFoundError:
        raise ApiError(404, "not_found", f"unknown entity {entity_id!r}") from None


def _parse_date(value: str | None, param: str) -> date:
    if value is None:
        raise ApiError(400, "invalid_request", f"missing required parameter {param!r}")
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise ApiError(
            400, "invalid_request", f"parameter {param!r} must be an ISO date"
        ) from None


def _parse_positive_int(value: str | int | None, param: str, default: int) -> int:
    if value is None:
        return default
    try:
        parsed = int(value)
    except (TypeError, ValueError):
        raise ApiError(
            400, "invalid_request", f"parameter {param!r} must be an integer"
        ) from None
    if parsed < 1:
        raise ApiError(400, "invalid_request", f"parameter {param!r} must be >= 1")
    return parsed


def entities_payload(snapshot: Snapshot) -> list[dict]:
    """All entities, sorted by id."""
    return [
        {"id": e.id, "canonical_name": e.canonical_name, "category": e.category}
        for e in sorted(snapshot.catalog, key=lambda e: e.id)
    ]


def bubbles_payload(
    snapshot: Snapshot,
    entity_id: str,
    date_str: str | None,
    limit: str | int | None = None,
) -> list[dict]:
    """The day's term bubbles: frequency-ranked, polarity-colored, scaled."""
    _require_entity(snapshot, entity_id)
    day = _parse_date(date_str, "date")
    limit_n = _parse_positive_int(limit, "limit", DEFAULT_BUBBLE_LIMIT)
    meta = snapshot.builder.build(DayKey(entity_id, day))
    return [
        {
            "term": b.term,
            "frequency": b.frequency,
            "polarity": b.polarity,
            "scale": b.scale,
        }
        for b in bubbles_for_day(meta, limit_n, snapshot.lexicon)
    ]


def trend_payload(
    snapshot: Snapshot,
    entity_id: str,
    from_str: str | None,
    to_str: str | None,
) -> list[dict]:
    """Zero-filled per-day record counts over an inclusive date range."""
    _require_entity(snapshot, entity_id)
    from_date = _parse_date(from_str, "from")
    to_date = _parse_date(to_str, "to")
    try:
        points = snapshot.store.daily_counts(entity_id, from_date, to_date)
    except InvalidRangeError as exc:
        raise ApiError(400, "invalid_request", str(exc)) from None
    return [{"date": d.isoformat(), "count": count} for d, count in points]


def topics_payload(
    snapshot: Snapshot,
    entity_id: str,
    date_str: str | None,
    mode: str | None = None,
    n_topics: str | int | None = None,
    n_words: str | int | None = None,
) -> list[dict]:
    """The day's dominant topics under one scoping mode.

    Empty list when the model holds no document for that day; 409 when no
    model has been built for the resolved scope (the service never refits).
    """
    entity = _require_entity(snapshot, entity_id)
    day = _parse_date(date_str, "date")
    mode = mode or "entity"
    if mode not in MODES:
        raise ApiError(
            400, "invalid_request", f"parameter 'mode' must be one of {list(MODES)}"
        )
    n_topics_n = _parse_positive_int(n_topics, "n_topics", DEFAULT_N_TOPICS)
    n_words_n = _parse_positive_int(n_words, "n_words", DEFAULT_N_WORDS)

    if mode == "global":
        scope = "global"
    elif mode == "category":
        scope = f"category:{entity.category}"
    else:
        scope = f"entity:{entity_id}"
    model = snapshot.models.get(scope)
    if model is None:
        raise ApiError(
            409, "model_not_built", f"no topic model built for scope {scope!r}"
        )
    try:
        ranked = topics_for_day(model, DayKey(entity_id, day), n_topics_n, n_words_n)
    except NotFoundError:
        return []
    return [
        {
            "topic_id": summary.topic_id,
            "topic_terms": [
                {"term": term, "weight": weight} for term, weight in summary.top_terms
            ],
            "weight": weight,
        }
        for summary, weight in ranked
    ]


def tweets_payload(
    snapshot: Snapshot,
    entity_id: str,
    date_str: str | None,
    term: str | None = None,
    limit: str | int | None = None,
) -> list[dict]:
    """Example texts of the day, most recent first, with highlight spans.

    With ``term`` given, only records whose pre-processed token list contains
    it are returned (the same tokens that feed the bubbles).  Spans cover all
    of the day's bubble terms at the default bubble limit, in UTF-8 byte
    coordinates over the raw text.
    """
    entity = _require_entity(snapshot, entity_id)
    day = _parse_date(date_str, "date")
    limit_n = _parse_positive_int(limit, "limit", DEFAULT_TWEET_LIMIT)
    key = DayKey(entity_id, day)

    meta = snapshot.builder.build(key)
    bubbles = bubbles_for_day(meta, DEFAULT_BUBBLE_LIMIT, snapshot.lexicon)
    term_polarities = {b.term: b.polarity for b in bubbles}

    sequences = keyword_token_sequences(entity.keywords)
    records = snapshot.store.records_for(key)
    if term is not None:
        wanted = term.casefold()
        records = [
            r
            for r in records
            if wanted in (preprocess_text(r.text, sequences, snapshot.config) or ())
        ]
    records = sorted(records, key=lambda r: (r.timestamp, r.record_id), reverse=True)
    return [
        {
            "record_id": r.record_id,
            "timestamp": r.timestamp.isoformat(),
            "text": r.text,
            "spans": [
                {"offset": s.offset, "length": s.length, "polarity": s.polarity}
                for s in highlight_spans(r.text, term_polarities)
            ],
        }
        for r in records[:limit_n]
    ]


def _json_response(payload, status: int = 200) -> Response:
    return Response(
        content=encode_json(payload),
        status_code=status,
        media_type="application/json",
    )


def create_app(snapshot: Snapshot) -> FastAPI:
    """Mount the read-only API over one artifact snapshot."""
    app = FastAPI(title="sentibubbles", docs_url=None, redoc_url=None)
    app.state.snapshot = snapshot

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError) -> Response:
        return _json_response(exc.body(), status=exc.status)

    @app.get("/api/entities")
    def get_entities(request: Request) -> Response:
        snap = request.app.state.snapshot
        return _json_response(entities_payload(snap))

    @app.get("/api/entities/{entity_id}/bubbles")
    def get_bubbles(
        entity_id: str,
        request: Request,
        date: str | None = None,
        limit: str | None = None,
    ) -> Response:
        snap = request.app.state.snapshot
        return _json_response(bubbles_payload(snap, entity_id, date, limit))

    @app.get("/api/entities/{entity_id}/trend")
    def get_trend(entity_id: str, request: Request) -> Response:
        snap = request.app.state.snapshot
        params = request.query_params
        return _json_response(
            trend_payload(snap, entity_id, params.get("from"), params.get("to"))
        )

    @app.get("/api/entities/{entity_id}/topics")
    def get_topics(
        entity_id: str,
        request: Request,
        date: str | None = None,
        mode: str | None = None,
        n_topics: str | None = None,
        n_words: str | None = None,
    ) -> Response:
        snap = request.app.state.snapshot
        return _json_response(
            topics_payload(snap, entity_id, date, mode, n_topics, n_words)
        )

    @app.get("/api/entities/{entity_id}/tweets")
    def get_tweets(
        entity_id: str,
        request: Request,
        date: str | None = None,
        term: str | None = None,
        limit: str | None = None,
    ) -> Response:
        snap = request.app.state.snapshot
        return _json_response(tweets_payload(snap, entity_id, date, term, limit))

    return app
