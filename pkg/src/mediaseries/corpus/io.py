"""Corpus data types and line-delimited JSON exchange formats."""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Iterable, Iterator

from ..errors import ConfigInvalid, MediaseriesError


@dataclass(frozen=True)
class Document:
    """One news article after extraction."""

    id: str
    source_id: str
    published_at: date
    title: str
    body: str
    tags: frozenset[str]

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("Document.id must be non-empty")
        for tag in self.tags:
            if not tag.strip():
                raise ValueError("Document.tags must not contain whitespace-only entries")


@dataclass(frozen=True)
class NormalizedDoc:
    """Token sequence produced by the normalization pipeline."""

    doc_id: str
    tokens: tuple[str, ...]


def document_to_json(doc: Document) -> str:
    return json.dumps(
        {
            "id": doc.id,
            "source_id": doc.source_id,
            "published_at": doc.published_at.isoformat(),
            "title": doc.title,
            "body": doc.body,
            "tags": sorted(doc.tags),
        },
        ensure_ascii=False,
    )


def document_from_json(line: str) -> Document:
    obj = json.loads(line)
    return Document(
        id=obj["id"],
        source_id=obj["source_id"],
        published_at=date.fromisoformat(obj["published_at"]),
        title=obj["title"],
        body=obj["body"],
        tags=frozenset(obj["tags"]),
    )


def write_corpus(path: str | Path, docs: Iterable[Document]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for doc in docs:
            fh.write(document_to_json(doc) + "\n")


def read_corpus(path: str | Path) -> list[Document]:
    docs = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            doc = document_from_json(line)
            if doc.id in seen:
                raise MediaseriesError(f"duplicate document id {doc.id!r} at {path}:{lineno}")
            seen.add(doc.id)
            docs.append(doc)
    return docs


def write_normalized(path: str | Path, docs: Iterable[NormalizedDoc]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for doc in docs:
            fh.write(json.dumps({"doc_id": doc.doc_id, "tokens": list(doc.tokens)}, ensure_ascii=False) + "\n")


def read_normalized(path: str | Path) -> list[NormalizedDoc]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            out.append(NormalizedDoc(doc_id=obj["doc_id"], tokens=tuple(obj["tokens"])))
    return out


def read_manifest(html_dir: str | Path) -> Iterator[tuple[Path, str, str, date | None]]:
    """Yield (file path, url, source_id, fallback date) from a fixture manifest.

    ``manifest.json`` in the directory is a list of objects with keys
    ``file``, ``url``, ``source_id`` and optional ``fallback_date``.
    """
    html_dir = Path(html_dir)
    manifest_path = html_dir / "manifest.json"
    if not manifest_path.exists():
        raise ConfigInvalid(f"missing manifest.json in {html_dir}")
    entries = json.loads(manifest_path.read_text("utf-8"))
    for entry in entries:
        fallback = entry.get("fallback_date")
        yield (
            html_dir / entry["file"],
            entry["url"],
            entry["source_id"],
            date.fromisoformat(fallback) if fallback else None,
        )
