import string

from hypothesis import given, settings
from hypothesis import strategies as st

from mediaseries.corpus import fold_accents, load_stopwords, normalize, stem

STOPWORDS = load_stopwords()


def test_pipeline_basic() -> None:
    assert normalize("Él dijo: ¡HOLA!", {"el"}) == ["dijo", "hola"]


def test_empty_input() -> None:
    assert normalize("", STOPWORDS) == []


def test_stemmer_merges_plural() -> None:
    # hand application of the rule table: final s after a vowel strips
    assert stem("violencias", STOPWORDS) == "violencia"
    assert stem("violencia", STOPWORDS) == "violencia"
    out = normalize("violencias machistas", STOPWORDS)
    assert out == [stem("violencia", STOPWORDS), stem("machista", STOPWORDS)]


def test_stemmer_rule_table_cases() -> None:
    assert stem("veces", STOPWORDS) == "vez"
    assert stem("papeles", STOPWORDS) == "papel"
    assert stem("mujeres", STOPWORDS) == "mujer"
    assert stem("condenadas", STOPWORDS) == "conden"
    assert stem("rapidamente", STOPWORDS) == "rapid"


def test_contractions_and_charset() -> None:
    out = normalize("El juicio del caso fue al tribunal nº 3", STOPWORDS)
    assert "del" not in out and "al" not in out
    for token in out:
        assert all(c in string.ascii_lowercase + "ñ" for c in token)


def test_digits_and_punctuation_removed() -> None:
    out = normalize("caso-2019: 25% más denuncias!!", STOPWORDS)
    assert out == [stem("caso", STOPWORDS), stem("denuncia", STOPWORDS)]


def test_accent_folding_keeps_enye() -> None:
    assert fold_accents("años María") == "años Maria"


def test_markup_remnants_stripped() -> None:
    out = normalize("texto <b>negrita</b> &amp; más", STOPWORDS)
    assert stem("negrita", STOPWORDS) in out
    assert all("<" not in t and "&" not in t for t in out)


@given(st.text(max_size=300))
@settings(max_examples=200, deadline=None)
def test_idempotent_on_own_output(text: str) -> None:
    tokens = normalize(text, STOPWORDS)
    assert normalize(" ".join(tokens), STOPWORDS) == tokens


@given(st.text(alphabet="aáeéioóuúñnrsldct ", max_size=120))
@settings(max_examples=200, deadline=None)
def test_tokens_meet_invariants(text: str) -> None:
    for token in normalize(text, STOPWORDS):
        assert len(token) >= 2
        assert token not in STOPWORDS
        assert all(c in string.ascii_lowercase + "ñ" for c in token)
