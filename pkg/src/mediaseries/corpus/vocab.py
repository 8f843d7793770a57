"""Vocabulary construction and integer-id vectorization.

Id 0 is reserved for padding, id 1 for unknown tokens; real tokens get
contiguous ids from 2 upward in descending document-frequency order with
lexicographic tie-break.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from ..errors import EmptyVocabulary
from .io import NormalizedDoc

PAD_ID = 0
UNK_ID = 1


@dataclass(frozen=True)
class Vocabulary:
    token_to_id: dict[str, int]
    document_frequency: dict[str, int]
    max_sequence_length: int

    @property
    def size(self) -> int:
        return len(self.token_to_id)

    @property
    def n_embeddings(self) -> int:
        """Rows the embedding matrix needs: tokens plus pad and unk."""
        return len(self.token_to_id) + 2


def build_vocabulary(docs: Sequence[NormalizedDoc], min_df: int = 1, max_size: int = 50_000,
                     max_sequence_length: int = 512) -> Vocabulary:
    """Count document frequencies and keep the most frequent tokens.

    Tokens with df >= min_df survive; if more than max_size remain, the
    max_size highest-df tokens are kept (ties broken lexicographically).
    """
    if min_df < 1 or max_size < 1:
        raise ValueError("min_df and max_size must be >= 1")
    df: Counter[str] = Counter()
    for doc in docs:
        df.update(set(doc.tokens))
    kept = sorted((t for t, c in df.items() if c >= min_df), key=lambda t: (-df[t], t))
    kept = kept[:max_size]
    if not kept:
        raise EmptyVocabulary(f"no token reaches min_df={min_df}")
    token_to_id = {t: i for i, t in enumerate(kept, start=2)}
    return Vocabulary(
        token_to_id=token_to_id,
        document_frequency={t: df[t] for t in kept},
        max_sequence_length=max_sequence_length,
    )


def vectorize(doc: NormalizedDoc, vocab: Vocabulary) -> np.ndarray:
    """Map tokens to ids, truncate or right-pad to max_sequence_length."""
    n = vocab.max_sequence_length
    ids = np.full(n, PAD_ID, dtype=np.int64)
    for i, token in enumerate(doc.tokens[:n]):
        ids[i] = vocab.token_to_id.get(token, UNK_ID)
    return ids


def save_vocabulary(path: str | Path, vocab: Vocabulary) -> None:
    payload = {
        "meta": {
            "version": "mediaseries-vocab/1",
            "max_sequence_length": vocab.max_sequence_length,
            "size": vocab.size,
        },
        "tokens": vocab.token_to_id,
        "document_frequency": vocab.document_frequency,
    }
    Path(path).write_text(json.dumps(payload, ensure_ascii=False, indent=1) + "\n", "utf-8")


def load_vocabulary(path: str | Path) -> Vocabulary:
    obj = json.loads(Path(path).read_text("utf-8"))
    return Vocabulary(
        token_to_id={t: int(i) for t, i in obj["tokens"].items()},
        document_frequency={t: int(c) for t, c in obj["document_frequency"].items()},
        max_sequence_length=int(obj["meta"]["max_sequence_length"]),
    )
