#!/usr/bin/env python3
"""Convert a SentiLex-PT lemma file into the engine's term<TAB>polarity format.

SentiLex-PT lines look like::

    abalado.PoS=Adj;TG=HUM:N0;POL:N0=-1;ANOT=MAN
    admirável.PoS=Adj;TG=HUM:N0;POL:N0=1;ANOT=MAN

Some entries carry several target-specific polarities (POL:N0=..., POL:N1=...).
The engine works with one word-level value, so this script flattens each
lemma to the sign of the sum of its polarities: mixed entries that cancel out
become neutral (0).  Output lines are sorted and deduplicated; conflicting
duplicates across input lines resolve the same way (summed, then sign).

Usage:
    python scripts/flatten_sentilex.py SentiLex-lem-PT02.txt > lexicon.tsv
"""

from __future__ import annotations

import re
import sys
from collections import defaultdict

POL_RE = re.compile(r"POL:[^=;]+=(-?\d+)")


def flatten(lines) -> dict[str, int]:
    sums: dict[str, int] = defaultdict(int)
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, _, attrs = line.partition(".")
        if not attrs:
            continue
        # entries may list several lemmas separated by commas
        for lemma in head.split(","):
            lemma = lemma.strip().casefold()
            if not lemma:
                continue
            for value in POL_RE.findall(attrs):
                sums[lemma] += int(value)
    return {
        lemma: (1 if total > 0 else -1 if total < 0 else 0)
        for lemma, total in sums.items()
    }


def main() -> int:
    if len(sys.argv) != 2:
        print(__doc__, file=sys.stderr)
        return 2
    with open(sys.argv[1], encoding="utf-8") as handle:
        entries = flatten(handle)
    for lemma in sorted(entries):
        print(f"{lemma}\t{entries[lemma]}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
