"""Synthetic Spanish-like mini-corpus with planted structure.

Generates a gap-free daily span of short documents drawn from two latent
topics (a violence/justice topic and a sports/economy topic) with

* a weekly pattern in the topic mix (weekends carry no violence docs),
* two event-spike days on which every document is topic-A plus extras,
* a companion opinion series that follows the daily topic share with a
  fixed lag, and
* a small named holiday set.

Everything is driven by one seed, so fixtures regenerate byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path

import numpy as np

from .corpus.io import Document, write_corpus

GBV_WORDS = (
    "violencia genero machista victima denuncia juzgado condena agresion "
    "sentencia proteccion maltrato igualdad manifestacion pancarta"
).split()
OTHER_WORDS = (
    "futbol partido liga equipo entrenador mercado economia empresa "
    "inversion bolsa turismo tecnologia cine festival"
).split()
FILLER_WORDS = (
    "ciudad dia semana gobierno persona grupo informe datos rueda prensa "
    "nacional region publico medida plan portavoz"
).split()

GBV_TAGS = ("violencia-genero", "justicia")
GBV_EXTRA_TAG = "sucesos"
SPORT_TAGS = ("deportes", "futbol")
ECON_TAGS = ("economia", "mercados")

# docs per weekday (Monday=0): (total docs, topic-A docs)
WEEK_PLAN = {0: (2, 1), 1: (1, 0), 2: (2, 1), 3: (1, 0), 4: (2, 1), 5: (1, 0), 6: (1, 0)}

DEFAULT_START = date(2021, 1, 4)  # a Monday
DEFAULT_DAYS = 140
SPIKE_OFFSETS = (57, 99)  # both fall on low-share weekdays
SPIKE_DOCS = 4
SURVEY_LAG_DAYS = 3
HOLIDAYS = {"festivo_nacional": ("2021-01-06", "2021-04-02", "2021-05-01")}


@dataclass(frozen=True)
class SyntheticCorpus:
    documents: tuple[Document, ...]
    spike_dates: tuple[date, ...]
    survey: tuple[tuple[date, float], ...]
    holidays: dict[str, tuple[str, ...]]
    daily_share: dict[date, float]


def _sentence(rng: np.random.Generator, topic_words: list[str], n: int) -> str:
    pool = topic_words + list(FILLER_WORDS)
    weights = np.array([3.0] * len(topic_words) + [1.0] * len(FILLER_WORDS))
    weights /= weights.sum()
    return " ".join(rng.choice(pool, size=n, p=weights))


def _make_doc(rng: np.random.Generator, index: int, day: date, gbv: bool) -> Document:
    words = list(GBV_WORDS) if gbv else list(OTHER_WORDS)
    title = _sentence(rng, words, int(rng.integers(4, 7)))
    body = ". ".join(
        _sentence(rng, words, int(rng.integers(8, 14))) for _ in range(int(rng.integers(4, 7)))
    )
    if gbv:
        tags = set(GBV_TAGS)
        if rng.random() < 0.4:
            tags.add(GBV_EXTRA_TAG)
    else:
        tags = set(SPORT_TAGS if rng.random() < 0.5 else ECON_TAGS)
    return Document(
        id=f"doc{index:04d}",
        source_id="diario-a" if index % 2 == 0 else "diario-b",
        published_at=day,
        title=title,
        body=body + ".",
        tags=frozenset(tags),
    )


def make_mini_corpus(seed: int = 20210104, start: date = DEFAULT_START,
                     n_days: int = DEFAULT_DAYS) -> SyntheticCorpus:
    rng = np.random.Generator(np.random.PCG64(seed))
    spike_dates = tuple(start + timedelta(days=o) for o in SPIKE_OFFSETS)
    docs: list[Document] = []
    share: dict[date, float] = {}
    index = 0
    for offset in range(n_days):
        day = start + timedelta(days=offset)
        if day in spike_dates:
            total, gbv_count = SPIKE_DOCS, SPIKE_DOCS
        else:
            total, gbv_count = WEEK_PLAN[day.weekday()]
        share[day] = gbv_count / total
        for k in range(total):
            docs.append(_make_doc(rng, index, day, gbv=k < gbv_count))
            index += 1

    survey = []
    days = sorted(share)
    for i, day in enumerate(days):
        lagged = share[days[max(0, i - SURVEY_LAG_DAYS)]]
        value = 0.25 + 0.5 * lagged + 0.02 * float(rng.normal())
        survey.append((day, value))

    return SyntheticCorpus(
        documents=tuple(docs),
        spike_dates=spike_dates,
        survey=tuple(survey),
        holidays={k: tuple(v) for k, v in HOLIDAYS.items()},
        daily_share=share,
    )


def write_fixture(outdir: str | Path, seed: int = 20210104) -> SyntheticCorpus:
    """Write mini_corpus.jsonl, survey.csv and holidays.json into a directory."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    corpus = make_mini_corpus(seed=seed)
    write_corpus(outdir / "mini_corpus.jsonl", corpus.documents)
    with open(outdir / "survey.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("date,value\n")
        for d, v in corpus.survey:
            fh.write(f"{d.isoformat()},{v!r}\n")
    (outdir / "holidays.json").write_text(
        json.dumps({k: list(v) for k, v in corpus.holidays.items()}, indent=1) + "\n", "utf-8"
    )
    return corpus
