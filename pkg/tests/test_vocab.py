import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mediaseries.corpus import (
    NormalizedDoc,
    PAD_ID,
    UNK_ID,
    build_vocabulary,
    load_vocabulary,
    save_vocabulary,
    vectorize,
)
from mediaseries.errors import EmptyVocabulary


def nd(doc_id: str, *tokens: str) -> NormalizedDoc:
    return NormalizedDoc(doc_id=doc_id, tokens=tokens)


def test_document_frequency_counts_documents_not_occurrences() -> None:
    vocab = build_vocabulary([nd("d1", "a", "b", "a")], min_df=1)
    assert vocab.document_frequency["a"] == 1
    assert set(vocab.token_to_id) == {"a", "b"}
    assert sorted(vocab.token_to_id.values()) == [2, 3]


def test_min_df_filters_everything() -> None:
    docs = [nd("d1", "aa"), nd("d2", "bb")]
    with pytest.raises(EmptyVocabulary):
        build_vocabulary(docs, min_df=2)


def test_max_size_keeps_highest_df() -> None:
    rng = np.random.default_rng(7)
    tokens = [f"tok{i:03d}" for i in range(200)]
    docs = []
    for d in range(1000):
        chosen = rng.choice(tokens, size=8, replace=False)
        docs.append(nd(f"d{d}", *chosen))
    vocab = build_vocabulary(docs, min_df=1, max_size=50)
    assert vocab.size == 50
    # brute-force df oracle
    df = {t: sum(t in doc.tokens for doc in docs) for t in tokens}
    kept_min = min(df[t] for t in vocab.token_to_id)
    dropped_max = max(df[t] for t in tokens if t not in vocab.token_to_id)
    assert kept_min >= dropped_max
    # ids assigned in descending-df then lexicographic order from 2
    ordered = sorted(vocab.token_to_id, key=lambda t: (-df[t], t))
    assert [vocab.token_to_id[t] for t in ordered] == list(range(2, 52))


def test_vectorize_padding_truncation_unknown() -> None:
    vocab = build_vocabulary([nd("d1", "alpha")], min_df=1, max_sequence_length=4)
    a = vocab.token_to_id["alpha"]
    assert vectorize(nd("x", "alpha"), vocab).tolist() == [a, PAD_ID, PAD_ID, PAD_ID]
    assert vectorize(nd("x", *["alpha"] * 10), vocab).tolist() == [a, a, a, a]
    assert vectorize(nd("x", "desconocido"), vocab).tolist() == [UNK_ID, PAD_ID, PAD_ID, PAD_ID]


@given(st.integers(min_value=1, max_value=5))
@settings(max_examples=20, deadline=None)
def test_min_df_monotone_shrinkage(min_df: int) -> None:
    docs = [
        nd("d1", "uno", "dos", "tres"),
        nd("d2", "uno", "dos"),
        nd("d3", "uno"),
        nd("d4", "uno", "tres"),
    ]
    def size_at(df: int) -> int:
        try:
            return build_vocabulary(docs, min_df=df).size
        except EmptyVocabulary:
            return 0

    assert size_at(min_df) >= size_at(min_df + 1)


def test_vectorize_length_always_max_sequence_length() -> None:
    vocab = build_vocabulary([nd("d1", "uno", "dos")], min_df=1, max_sequence_length=7)
    for tokens in ([], ["uno"], ["uno"] * 20):
        assert len(vectorize(nd("x", *tokens), vocab)) == 7


def test_vocab_roundtrip(tmp_path) -> None:
    vocab = build_vocabulary([nd("d1", "uno", "dos"), nd("d2", "dos")], min_df=1)
    path = tmp_path / "vocab.json"
    save_vocabulary(path, vocab)
    loaded = load_vocabulary(path)
    assert loaded == vocab
