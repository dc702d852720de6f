"""Highlight spans: where a day's bubble terms occur in raw record text.

Scanning is case-insensitive and whole-token over the RAW text (so the
highlights line up with what users see), while term *filtering* elsewhere
uses pre-processed tokens (so it agrees with the bubbles).  Span offsets and
lengths are in UTF-8 bytes; clients slice the encoded text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .entities import TOKEN_RE


@dataclass(frozen=True)
class Span:
    """One highlighted token occurrence, in UTF-8 byte coordinates."""

    offset: int
    length: int
    polarity: int


def highlight_spans(text: str, term_polarities: Mapping[str, int]) -> list[Span]:
    """Spans of every whole-token occurrence of the given terms, in order.

    Tokens are maximal letter/digit runs, compared case-folded against the
    term keys.  Tokens are disjoint by construction, so spans never overlap.
    """
    spans: list[Span] = []
    for match in TOKEN_RE.finditer(text):
        token = match.group(0)
        pol = term_polarities.get(token.casefold())
        if pol is None:
            continue
        spans.append(
            Span(
                offset=len(text[: match.start()].encode("utf-8")),
                length=len(token.encode("utf-8")),
                polarity=pol,
            )
        )
    return spans
