"""Five-rule text cleanup turning a raw record into tokens for one entity.

Rules apply strictly in order:

1. Discard the record when the raw text has fewer than ``min_tweet_chars``
   Unicode scalar values (too short to carry meaning).  Measured on the raw
   text, before any stripping.
2. Remove hyperlinks, replace special characters with spaces, lowercase.
3. Remove the matched entity's own keywords (they name the entity and add
   nothing to topics or sentiment).
4. Remove Portuguese and English stopwords.
5. Remove tokens shorter than ``min_token_chars`` unless whitelisted
   (acronyms like "PSD" stay meaningful despite their length).

"Special characters" means anything that is not a Unicode letter, digit or
whitespace; accented letters are kept, so Portuguese vocabulary survives
intact.  Hyperlinks are maximal substrings starting with ``http://``,
``https://`` or ``www.`` up to the next whitespace, removed before the
special-character pass so URL fragments cannot survive as junk tokens.
"""

from __future__ import annotations

import hashlib
import io
import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import IO, Iterable

from .entities import EntityCatalog
from .store import TextRecord

URL_RE = re.compile(r"(?i)(?:https?://|www\.)\S*")
# \W is "not letter/digit/underscore"; adding _ leaves exactly letters and
# digits.  Whitespace also matches and becomes a single space, which is
# harmless because tokenization splits on whitespace next.
NON_ALNUM_RE = re.compile(r"[\W_]")


def clean_text(text: str) -> str:
    """Rule 2: strip hyperlinks, blank out special characters, lowercase."""
    text = URL_RE.sub(" ", text)
    text = NON_ALNUM_RE.sub(" ", text)
    return text.lower()


def load_wordlist(source: IO[bytes] | IO[str] | str | Path) -> frozenset[str]:
    """Read a one-term-per-line UTF-8 word list; "#" lines are comments."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as handle:
            return load_wordlist(handle)
    if isinstance(source, (io.RawIOBase, io.BufferedIOBase)) or "b" in getattr(
        source, "mode", ""
    ):
        source = io.TextIOWrapper(source, encoding="utf-8")  # type: ignore[arg-type]
    terms = set()
    for line in source:
        term = line.strip()
        if not term or term.startswith("#"):
            continue
        terms.add(term.casefold())
    return frozenset(terms)


def _bundled(name: str) -> frozenset[str]:
    ref = resources.files("sentibubbles.data").joinpath(name)
    with ref.open("r", encoding="utf-8") as handle:
        return load_wordlist(handle)


@dataclass(frozen=True)
class PreprocessConfig:
    """Tunables for the five cleanup rules; word lists are stored case-folded."""

    min_tweet_chars: int = 40
    min_token_chars: int = 3
    stopwords: frozenset[str] = frozenset()
    whitelist: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.min_tweet_chars < 0:
            raise ValueError("min_tweet_chars must be >= 0")
        if self.min_token_chars < 1:
            raise ValueError("min_token_chars must be >= 1")
        object.__setattr__(
            self, "stopwords", frozenset(w.casefold() for w in self.stopwords)
        )
        object.__setattr__(
            self, "whitelist", frozenset(w.casefold() for w in self.whitelist)
        )

    @classmethod
    def load_default(
        cls,
        min_tweet_chars: int = 40,
        min_token_chars: int = 3,
        stopword_paths: Iterable[str | Path] = (),
        whitelist_path: str | Path | None = None,
    ) -> "PreprocessConfig":
        """Config with the bundled Portuguese + English stopwords and whitelist.

        Extra stopword files extend the bundled lists; an explicit whitelist
        path replaces the bundled one.
        """
        stopwords = _bundled("stopwords_pt.txt") | _bundled("stopwords_en.txt")
        for path in stopword_paths:
            stopwords |= load_wordlist(path)
        if whitelist_path is None:
            whitelist = _bundled("whitelist.txt")
        else:
            whitelist = load_wordlist(whitelist_path)
        return cls(
            min_tweet_chars=min_tweet_chars,
            min_token_chars=min_token_chars,
            stopwords=stopwords,
            whitelist=whitelist,
        )

    def fingerprint(self) -> str:
        """Stable digest of the full config, used as a cache key component."""
        payload = json.dumps(
            {
                "min_tweet_chars": self.min_tweet_chars,
                "min_token_chars": self.min_token_chars,
                "stopwords": sorted(self.stopwords),
                "whitelist": sorted(self.whitelist),
            },
            ensure_ascii=False,
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def keyword_token_sequences(keywords: Iterable[str]) -> list[tuple[str, ...]]:
    """Keyword strings -> token sequences under the rule-2 normalization.

    Sorted longest-first so greedy removal prefers the longest match at each
    position.  Keywords that normalize to nothing are dropped (they can never
    occur as tokens).
    """
    sequences = {
        seq
        for seq in (tuple(clean_text(kw).split()) for kw in keywords)
        if seq
    }
    return sorted(sequences, key=lambda seq: (-len(seq), seq))


def remove_keyword_sequences(
    tokens: list[str], sequences: list[tuple[str, ...]]
) -> list[str]:
    """Rule 3: drop contiguous keyword token runs, greedy leftmost-longest."""
    if not sequences:
        return tokens
    out: list[str] = []
    i = 0
    n = len(tokens)
    while i < n:
        matched = 0
        for seq in sequences:
            if tuple(tokens[i : i + len(seq)]) == seq:
                matched = len(seq)
                break
        if matched:
            i += matched
        else:
            out.append(tokens[i])
            i += 1
    return out


def preprocess_text(
    text: str,
    keyword_sequences: list[tuple[str, ...]],
    config: PreprocessConfig,
) -> list[str] | None:
    """Apply the five rules to raw text; None means discarded by rule 1."""
    if len(text) < config.min_tweet_chars:
        return None
    tokens = clean_text(text).split()
    tokens = remove_keyword_sequences(tokens, keyword_sequences)
    tokens = [t for t in tokens if t.casefold() not in config.stopwords]
    return [
        t
        for t in tokens
        if t.casefold() in config.whitelist or len(t) >= config.min_token_chars
    ]


def preprocess(
    record: TextRecord,
    entity_id: str,
    catalog: EntityCatalog,
    config: PreprocessConfig,
) -> list[str] | None:
    """Token list of one record as seen from one matched entity.

    The entity's own keywords are removed (rule 3); everything else follows
    the config.  Returns None when rule 1 discards the record.  Pure function
    of its inputs; safe to run in parallel across records.
    """
    if entity_id not in record.entity_ids:
        raise ValueError(
            f"record {record.record_id!r} was not matched to entity {entity_id!r}"
        )
    sequences = keyword_token_sequences(catalog.entity(entity_id).keywords)
    return preprocess_text(record.text, sequences, config)
