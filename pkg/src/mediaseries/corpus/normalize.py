"""Text normalization pipeline for Spanish news text.

The pipeline is deterministic and applied in a fixed order:

1. strip markup remnants (tags, entities)
2. lowercase
3. fold accents/diacritics to ASCII (keeping the letter ``ñ``)
4. expand the fixed contraction table (``del`` -> ``de el``, ``al`` -> ``a el``)
5. remove every character outside ``[a-z ñ space]``
6. split on whitespace
7. drop stopwords and tokens shorter than 2 characters
8. apply the suffix stemmer below

Lemmatization stand-in: instead of a dictionary lemmatizer we ship a fixed
suffix-stripping rule table (plural, adverb, participle and gerund endings).
Rules are applied to a fixpoint; a rule only fires when the stripped stem is
long enough and is not itself a stopword, which keeps ``normalize``
idempotent on its own output.
"""

from __future__ import annotations

import html
import re
import unicodedata
from importlib import resources

_TAG_RE = re.compile(r"<[^>]*>")
_KEEP_RE = re.compile(r"[^a-zñ ]")
_WS_RE = re.compile(r"\s+")

# (suffix, minimum stem length, replacement); tried top to bottom each pass
_STEM_RULES: tuple[tuple[str, int, str], ...] = (
    ("amente", 3, ""),
    ("mente", 4, ""),
    ("ces", 2, "z"),
    ("iendo", 3, ""),
    ("ando", 3, ""),
    ("ado", 3, ""),
    ("ada", 3, ""),
    ("ido", 3, ""),
    ("ida", 3, ""),
    ("oras", 3, "or"),
    ("ora", 3, "or"),
)

_VOWELS = "aeiou"
# consonants that take the -es plural (papel/papeles, mujer/mujeres, ley/leyes)
_ES_PLURAL_FINALS = "lrndjy"

_CONTRACTIONS = (
    (re.compile(r"\bdel\b"), "de el"),
    (re.compile(r"\bal\b"), "a el"),
)


def load_stopwords(path: str | None = None) -> frozenset[str]:
    """Load the stopword set, either the bundled Spanish list or a user file.

    Entries are expected lowercase and accent-folded, one per line.
    """
    if path is None:
        text = resources.files("mediaseries.corpus").joinpath("data/stopwords_es.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return frozenset(w for w in text.split() if w)


def fold_accents(text: str) -> str:
    """Fold accented characters to ASCII, preserving ``ñ``."""
    out = []
    for ch in text:
        if ch in ("ñ", "Ñ"):
            out.append(ch)
            continue
        decomposed = unicodedata.normalize("NFKD", ch)
        out.append("".join(c for c in decomposed if not unicodedata.combining(c)))
    return "".join(out)


def stem(token: str, stopwords: frozenset[str] | set[str] = frozenset()) -> str:
    """Apply the suffix rule table to a fixpoint.

    A rule fires only if the resulting stem keeps the minimum length and the
    result is not a stopword (so re-normalizing stemmer output is a no-op).
    Plural stripping runs in the same loop: ``-es`` after l/r/n/d/j/y,
    otherwise ``-s`` after a vowel.
    """
    current = token
    while True:
        nxt = _stem_once(current, stopwords)
        if nxt == current:
            return current
        current = nxt


def _stem_once(token: str, stopwords: frozenset[str] | set[str]) -> str:
    for suffix, min_stem, repl in _STEM_RULES:
        if token.endswith(suffix) and len(token) - len(suffix) >= min_stem:
            candidate = token[: -len(suffix)] + repl
            if candidate not in stopwords:
                return candidate
    if len(token) >= 5 and token.endswith("es") and token[-3] in _ES_PLURAL_FINALS:
        candidate = token[:-2]
        if candidate not in stopwords:
            return candidate
    if len(token) >= 4 and token.endswith("s") and token[-2] in _VOWELS:
        candidate = token[:-1]
        if candidate not in stopwords:
            return candidate
    return token


def normalize(text: str, stopwords: frozenset[str] | set[str]) -> list[str]:
    """Run the full eight-step normalization pipeline on raw text."""
    text = html.unescape(text)
    text = _TAG_RE.sub(" ", text)
    text = text.lower()
    text = fold_accents(text)
    for pattern, repl in _CONTRACTIONS:
        text = pattern.sub(repl, text)
    text = _KEEP_RE.sub(" ", text)
    tokens = text.split()
    kept = [t for t in tokens if len(t) >= 2 and t not in stopwords]
    return [stem(t, stopwords) for t in kept]
