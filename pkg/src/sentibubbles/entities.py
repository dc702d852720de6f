"""Entity knowledge base: catalog loading and keyword-based mention matching.

An entity is tracked through a canonical name plus a set of alias keywords
(e.g. "Ronaldo", "CR7").  A text mentions an entity when one of its keywords
occurs as a whole token (or, for multi-word keywords, as a contiguous token
sequence) under case-insensitive comparison.  Tokens are maximal runs of
Unicode letters and digits; everything else separates.

Catalog files are UTF-8 JSON Lines, one object per entity::

    {"id": "cristiano-ronaldo", "canonical_name": "Cristiano Ronaldo",
     "keywords": ["Ronaldo", "CR7"], "category": "sports"}
"""

from __future__ import annotations

import io
import json
import re
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .errors import NotFoundError

# Maximal runs of Unicode letters/digits ([^\W_] is \w minus the underscore).
TOKEN_RE = re.compile(r"[^\W_]+")


def tokenize(text: str) -> list[str]:
    """Split text into maximal runs of letters and digits."""
    return TOKEN_RE.findall(text)


def normalize_keyword(keyword: str) -> str:
    """Keyword normalization used for the inverse index: trim + case-fold."""
    return keyword.strip().casefold()


class CatalogError(ValueError):
    """Malformed or invalid entity catalog input."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Entity:
    """One tracked entity: stable id, display name, alias keywords, category."""

    id: str
    canonical_name: str
    keywords: frozenset[str]
    category: str

    def __post_init__(self):
        if not self.id.strip():
            raise CatalogError("entity id must be non-empty")
        if not self.canonical_name.strip():
            raise CatalogError(f"entity {self.id!r}: canonical_name must be non-empty")
        if not self.category.strip():
            raise CatalogError(f"entity {self.id!r}: category must be non-empty")
        if not self.keywords:
            raise CatalogError(f"entity {self.id!r}: keyword set must be non-empty")
        for kw in self.keywords:
            if not kw.strip():
                raise CatalogError(f"entity {self.id!r}: keywords must be non-empty")


class EntityCatalog:
    """Immutable entity collection with an inverse keyword index.

    ``index`` maps every normalized keyword to the set of entity ids claiming
    it; a keyword shared by several entities maps to all of them.  The catalog
    is safe for unrestricted concurrent reads once constructed.
    """

    def __init__(self, entities: Iterable[Entity]):
        self.entities: tuple[Entity, ...] = tuple(entities)
        seen: dict[str, Entity] = {}
        for entity in self.entities:
            if entity.id in seen:
                raise CatalogError(f"duplicate entity id {entity.id!r}")
            seen[entity.id] = entity
        self._by_id = seen

        index: dict[str, set[str]] = {}
        # First token of each keyword's token sequence -> (sequence, entity id),
        # used for contiguous whole-token matching.
        sequences: dict[str, list[tuple[tuple[str, ...], str]]] = {}
        for entity in self.entities:
            for keyword in entity.keywords:
                normalized = normalize_keyword(keyword)
                index.setdefault(normalized, set()).add(entity.id)
                tokens = tuple(tokenize(normalized))
                if tokens:
                    sequences.setdefault(tokens[0], []).append((tokens, entity.id))
        self.index: dict[str, frozenset[str]] = {
            kw: frozenset(ids) for kw, ids in index.items()
        }
        self._sequences = sequences

    def __len__(self) -> int:
        return len(self.entities)

    def __iter__(self) -> Iterator[Entity]:
        return iter(self.entities)

    def __contains__(self, entity_id: str) -> bool:
        return entity_id in self._by_id

    def entity(self, entity_id: str) -> Entity:
        try:
            return self._by_id[entity_id]
        except KeyError:
            raise NotFoundError(f"unknown entity id {entity_id!r}") from None

    def categories(self) -> list[str]:
        return sorted({e.category for e in self.entities})

    def entities_in_category(self, category: str) -> list[Entity]:
        found = [e for e in self.entities if e.category == category]
        if not found:
            raise NotFoundError(f"unknown category {category!r}")
        return found

    def match(self, text: str) -> set[str]:
        """Ids of all entities with a keyword occurring as a whole token run."""
        tokens = tokenize(text.casefold())
        matched: set[str] = set()
        for i, token in enumerate(tokens):
            for sequence, entity_id in self._sequences.get(token, ()):
                if entity_id in matched:
                    continue
                if tuple(tokens[i : i + len(sequence)]) == sequence:
                    matched.add(entity_id)
        return matched


def match_entities(text: str, catalog: EntityCatalog) -> set[str]:
    """Entity ids mentioned in ``text`` under the catalog's keyword aliases."""
    return catalog.match(text)


def load_catalog(source: IO[bytes] | IO[str]) -> EntityCatalog:
    """Parse and validate a JSON Lines catalog stream.

    Raises CatalogError with the offending line number on malformed JSON,
    wrong field types, empty keyword sets or duplicate entity ids.
    """
    stream: IO[str]
    if isinstance(source, (io.RawIOBase, io.BufferedIOBase)) or "b" in getattr(
        source, "mode", ""
    ):
        stream = io.TextIOWrapper(source, encoding="utf-8")  # type: ignore[arg-type]
    else:
        stream = source  # type: ignore[assignment]

    entities: list[Entity] = []
    ids: set[str] = set()
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CatalogError(f"invalid JSON: {exc.msg}", line=lineno) from exc
        if not isinstance(raw, dict):
            raise CatalogError("catalog record must be a JSON object", line=lineno)
        try:
            entity = _entity_from_record(raw)
        except CatalogError as exc:
            raise CatalogError(str(exc), line=lineno) from None
        if entity.id in ids:
            raise CatalogError(f"duplicate entity id {entity.id!r}", line=lineno)
        ids.add(entity.id)
        entities.append(entity)
    return EntityCatalog(entities)


def _entity_from_record(raw: dict) -> Entity:
    for field_name in ("id", "canonical_name", "category"):
        value = raw.get(field_name)
        if not isinstance(value, str):
            raise CatalogError(f"field {field_name!r} must be a string")
    keywords = raw.get("keywords")
    if not isinstance(keywords, list) or not all(isinstance(k, str) for k in keywords):
        raise CatalogError("field 'keywords' must be a list of strings")
    return Entity(
        id=raw["id"],
        canonical_name=raw["canonical_name"],
        keywords=frozenset(keywords),
        category=raw["category"],
    )
