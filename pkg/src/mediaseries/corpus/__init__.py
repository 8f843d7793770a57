from .html import RawArticle, extract_article
from .io import (
    Document,
    NormalizedDoc,
    read_corpus,
    read_manifest,
    read_normalized,
    write_corpus,
    write_normalized,
)
from .normalize import fold_accents, load_stopwords, normalize, stem
from .vocab import (
    PAD_ID,
    UNK_ID,
    Vocabulary,
    build_vocabulary,
    load_vocabulary,
    save_vocabulary,
    vectorize,
)

__all__ = [
    "RawArticle",
    "Document",
    "NormalizedDoc",
    "Vocabulary",
    "PAD_ID",
    "UNK_ID",
    "extract_article",
    "normalize",
    "stem",
    "fold_accents",
    "load_stopwords",
    "build_vocabulary",
    "vectorize",
    "save_vocabulary",
    "load_vocabulary",
    "read_corpus",
    "write_corpus",
    "read_normalized",
    "write_normalized",
    "read_manifest",
]
