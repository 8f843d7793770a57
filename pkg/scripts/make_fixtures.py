"""Regenerate the bundled integration fixture (corpus, survey, holidays, config)."""

import json
from pathlib import Path

from mediaseries.synth import write_fixture

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

CONFIG = {
    "seed": 99,
    "paths": {
        "corpus": "mini_corpus.jsonl",
        "survey": "survey.csv",
        "holidays": "holidays.json",
        "output": "out",
    },
    "corpus": {"max_sequence_length": 96, "max_vocab": 2000},
    "model": {
        "embedding_dim": 32,
        "nn1_channels": [32, 32],
        "nn2_channels": [32, 32, 48, 48],
    },
    "train": {"epochs": 25},
    "thresholds": {"gbv_select": 0.8},
    "series": {"granularity": "daily", "decompose_period": 7, "trend_ratio_window": 28},
    "structural": {
        "n_changepoints": 4,
        "fourier_order": 0,
        "weekly_order": 3,
        "ridge_lambda": 0.001,
    },
    "ccf": {"max_lag": 10, "granularity": "daily"},
    "mapper": {"n_intervals": 6, "overlap": 0.35},
}


def main() -> None:
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    corpus = write_fixture(FIXTURE_DIR)
    (FIXTURE_DIR / "config.json").write_text(json.dumps(CONFIG, indent=1) + "\n", "utf-8")
    (FIXTURE_DIR / "spike_dates.json").write_text(
        json.dumps([d.isoformat() for d in corpus.spike_dates]) + "\n", "utf-8"
    )
    print(f"{len(corpus.documents)} documents, spikes at {corpus.spike_dates}")


if __name__ == "__main__":
    main()
