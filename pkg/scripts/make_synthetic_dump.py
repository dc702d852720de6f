#!/usr/bin/env python3
"""Generate the bundled synthetic corpus under tests/data/synthetic/.

Three entities over ten days, roughly a thousand records, with a seeded
generator so the output is reproducible.  The corpus deliberately contains
short records (discarded by pre-processing), records matching no entity,
records matching two entities, URLs and punctuation noise, so the end-to-end
pipeline exercises every branch.  Commit the regenerated files when the
shape changes.
"""

import json
import sys
from pathlib import Path

import numpy as np

OUT_DIR = Path(__file__).resolve().parent.parent / "tests" / "data" / "synthetic"

ENTITIES = [
    {
        "id": "estrela-fc",
        "canonical_name": "Estrela FC",
        "keywords": ["Estrela", "EFC"],
        "category": "sports",
    },
    {
        "id": "atletico-norte",
        "canonical_name": "Atlético do Norte",
        "keywords": ["Atlético", "Atletico do Norte"],
        "category": "sports",
    },
    {
        "id": "partido-azul",
        "canonical_name": "Partido Azul",
        "keywords": ["Partido Azul", "PAZUL"],
        "category": "politics",
    },
]

SPORTS_WORDS = [
    "golo", "jogo", "vitória", "derrota", "treinador", "estádio", "adeptos",
    "árbitro", "penálti", "defesa", "ataque", "campeonato", "taça", "festa",
    "crise", "baliza", "relvado", "claque",
]
POLITICS_WORDS = [
    "orçamento", "parlamento", "debate", "eleições", "medidas", "impostos",
    "greve", "acordo", "reforma", "ministro", "votação", "campanha",
    "austeridade", "coligação", "governo", "crise",
]
FILLERS = [
    "ontem à noite", "esta manhã", "sem surpresa nenhuma", "como era esperado",
    "contra todas as previsões", "uma vez mais", "para já", "em pleno março",
]
LEXICON = {
    "vitória": 1, "golo": 1, "festa": 1, "taça": 1, "acordo": 1, "reforma": 1,
    "derrota": -1, "crise": -1, "greve": -1, "impostos": -1, "austeridade": -1,
    "debate": 0, "jogo": 0, "orçamento": 0,
}

DAYS = [f"2015-03-{d:02d}" for d in range(1, 11)]
N_RECORDS = 1000


def pick(rng, pool, n):
    return [pool[int(i)] for i in rng.integers(0, len(pool), n)]


def make_text(rng, entity) -> str:
    keyword = entity["keywords"][int(rng.integers(0, len(entity["keywords"])))]
    pool = SPORTS_WORDS if entity["category"] == "sports" else POLITICS_WORDS
    words = pick(rng, pool, int(rng.integers(4, 9)))
    filler = FILLERS[int(rng.integers(0, len(FILLERS)))]
    parts = [filler.capitalize() + ",", keyword] + words
    if rng.random() < 0.10:
        parts.append("http://t.co/" + "".join(pick(rng, list("abcdef123"), 6)))
    if rng.random() < 0.25:
        parts.insert(2, "que")
    text = " ".join(parts)
    if rng.random() < 0.3:
        text += "!"
    return text


def main() -> int:
    rng = np.random.Generator(np.random.PCG64(20150301))
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    with open(OUT_DIR / "catalog.jsonl", "w", encoding="utf-8") as fh:
        for entity in ENTITIES:
            fh.write(json.dumps(entity, ensure_ascii=False) + "\n")

    with open(OUT_DIR / "lexicon.tsv", "w", encoding="utf-8") as fh:
        for term in sorted(LEXICON):
            fh.write(f"{term}\t{LEXICON[term]}\n")

    n_short = 0
    n_unmatched = 0
    with open(OUT_DIR / "dump.jsonl", "w", encoding="utf-8") as fh:
        for i in range(N_RECORDS):
            day = DAYS[int(rng.integers(0, len(DAYS)))]
            hour, minute, second = (
                int(rng.integers(0, 24)),
                int(rng.integers(0, 60)),
                int(rng.integers(0, 60)),
            )
            timestamp = f"{day}T{hour:02d}:{minute:02d}:{second:02d}Z"
            roll = rng.random()
            if roll < 0.05:
                entity = ENTITIES[int(rng.integers(0, len(ENTITIES)))]
                text = f"{entity['keywords'][0]} hoje outra vez"  # < 40 chars
                n_short += 1
            elif roll < 0.08:
                text = "Um dia perfeitamente normal na cidade, sem novidades de maior."
                n_unmatched += 1
            elif roll < 0.12:
                text = (
                    "Estrela e Atlético defrontam-se no grande jogo da jornada, "
                    + " ".join(pick(rng, SPORTS_WORDS, 3))
                )
            else:
                entity = ENTITIES[int(rng.integers(0, len(ENTITIES)))]
                text = make_text(rng, entity)
            fh.write(
                json.dumps(
                    {"id": f"s{i:04d}", "timestamp": timestamp, "text": text},
                    ensure_ascii=False,
                )
                + "\n"
            )
    print(
        f"wrote {N_RECORDS} records ({n_short} short, {n_unmatched} unmatched) "
        f"to {OUT_DIR}",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
