"""Word-level polarity from a lexicon, and the daily term-bubble payload.

The lexicon file is UTF-8, one entry per line, term and polarity separated by
a tab; "#" lines are comments.  Polarity is the literal -1, 0 or 1 (negative,
neutral, positive).  Terms absent from the lexicon are neutral: the lexicon
defines only those three values, and neutral is the only non-committal
default.  Lookups are case-folded; matching happens on surface forms as they
come out of pre-processing, with no stemming.

A bubble is one term of a day's meta-document: its frequency, its polarity,
and a scale in (0, 1] (frequency over the day's maximum frequency) computed
server-side so every client renders the same sizes.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import IO, Mapping

from .aggregate import MetaDocument

VALID_POLARITIES = (-1, 0, 1)


class LexiconError(ValueError):
    """Malformed or inconsistent lexicon input."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class SentimentLexicon:
    """Case-folded term -> polarity in {-1, 0, +1}."""

    entries: Mapping[str, int]

    def __post_init__(self):
        for term, value in self.entries.items():
            if value not in VALID_POLARITIES:
                raise LexiconError(f"term {term!r}: polarity {value!r} not in -1/0/1")
            if term != term.casefold():
                raise LexiconError(f"term {term!r} is not case-folded")

    def __len__(self) -> int:
        return len(self.entries)

    def polarity(self, term: str) -> int:
        return self.entries.get(term.casefold(), 0)


def polarity(term: str, lexicon: SentimentLexicon) -> int:
    """Lexicon polarity of a term; 0 when absent."""
    return lexicon.polarity(term)


def load_lexicon(source: IO[bytes] | IO[str]) -> SentimentLexicon:
    """Parse a tab-separated lexicon stream.

    Duplicate terms with the same polarity are deduplicated; duplicates with
    conflicting polarity are an error, as are polarities outside {-1, 0, 1}.
    """
    if isinstance(source, (io.RawIOBase, io.BufferedIOBase)) or "b" in getattr(
        source, "mode", ""
    ):
        source = io.TextIOWrapper(source, encoding="utf-8")  # type: ignore[arg-type]
    entries: dict[str, int] = {}
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split("\t")
        if len(parts) != 2:
            raise LexiconError(
                "expected 'term<TAB>polarity'", line=lineno
            )
        term = parts[0].strip().casefold()
        if not term:
            raise LexiconError("empty term", line=lineno)
        try:
            value = int(parts[1].strip())
        except ValueError:
            raise LexiconError(
                f"polarity {parts[1].strip()!r} is not an integer", line=lineno
            ) from None
        if value not in VALID_POLARITIES:
            raise LexiconError(
                f"polarity {value} not in -1/0/1", line=lineno
            )
        if term in entries and entries[term] != value:
            raise LexiconError(
                f"term {term!r} already defined with polarity {entries[term]}",
                line=lineno,
            )
        entries[term] = value
    return SentimentLexicon(entries=entries)


def dump_lexicon(lexicon: SentimentLexicon, stream: IO[str]) -> None:
    """Serialize sorted entries in the load format (round-trips exactly)."""
    for term in sorted(lexicon.entries):
        stream.write(f"{term}\t{lexicon.entries[term]}\n")


@dataclass(frozen=True)
class Bubble:
    """One displayed term: frequency drives size, polarity drives color."""

    term: str
    frequency: int
    polarity: int
    scale: float


def bubbles_for_day(
    meta: MetaDocument, limit: int, lexicon: SentimentLexicon
) -> list[Bubble]:
    """Top-``limit`` terms of the day by frequency, ties lexicographic.

    Scale is frequency / max frequency of the day, so the most frequent term
    has scale exactly 1.0.  Empty meta-document gives an empty list.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if not meta.term_counts:
        return []
    ranked = sorted(meta.term_counts.items(), key=lambda item: (-item[1], item[0]))
    max_frequency = ranked[0][1]
    return [
        Bubble(
            term=term,
            frequency=count,
            polarity=lexicon.polarity(term),
            scale=count / max_frequency,
        )
        for term, count in ranked[:limit]
    ]
