"""Tolerant extraction of article content from raw page markup."""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from datetime import date, datetime
from html.parser import HTMLParser

from ..errors import DateUnparseable, ExtractionFailed
from .io import Document

_SKIP_TAGS = {"script", "style", "nav", "noscript"}
_KEYWORD_META = {"keywords", "news_keywords", "article:tag", "og:article:tag"}
_DATE_META = {
    "article:published_time",
    "og:article:published_time",
    "date",
    "dc.date",
    "dc.date.issued",
    "publish-date",
    "pubdate",
    "publishdate",
}
_DATE_RE = re.compile(r"(\d{4})[-/](\d{1,2})[-/](\d{1,2})")


@dataclass(frozen=True)
class RawArticle:
    """One fetched page: full markup plus fetch metadata."""

    url: str
    fetched_at: datetime
    markup: str
    source_id: str

    def __post_init__(self) -> None:
        if not self.url:
            raise ValueError("RawArticle.url must be non-empty")
        if not self.markup:
            raise ValueError("RawArticle.markup must be non-empty")


class _ArticleParser(HTMLParser):
    """Collects title, paragraph text, keyword metadata and date candidates."""

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.title_parts: list[str] = []
        self.h1_parts: list[str] = []
        self.paragraphs: list[str] = []
        self.keywords: list[str] = []
        self.date_candidates: list[str] = []
        self._skip_depth = 0
        self._in_title = False
        self._in_h1 = False
        self._para_parts: list[str] | None = None

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
            return
        if self._skip_depth:
            return
        attrs_d = dict(attrs)
        if tag == "title":
            self._in_title = True
        elif tag == "h1":
            self._in_h1 = True
        elif tag == "p":
            self._para_parts = []
        elif tag == "meta":
            key = (attrs_d.get("name") or attrs_d.get("property") or "").lower()
            content = attrs_d.get("content") or ""
            if key in _KEYWORD_META and content:
                self.keywords.append(content)
            elif key in _DATE_META and content:
                self.date_candidates.append(content)
        elif tag == "time" and attrs_d.get("datetime"):
            self.date_candidates.append(attrs_d["datetime"])

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS:
            self._skip_depth = max(0, self._skip_depth - 1)
            return
        if tag == "title":
            self._in_title = False
        elif tag == "h1":
            self._in_h1 = False
        elif tag == "p" and self._para_parts is not None:
            text = _clean_text("".join(self._para_parts))
            if text:
                self.paragraphs.append(text)
            self._para_parts = None

    def handle_data(self, data):
        if self._skip_depth:
            return
        if self._in_title:
            self.title_parts.append(data)
        if self._in_h1:
            self.h1_parts.append(data)
        if self._para_parts is not None:
            self._para_parts.append(data)


def _clean_text(text: str) -> str:
    """Collapse whitespace and drop literal angle brackets (entity-decoded
    ones included) so no markup can survive into extracted text."""
    return " ".join(text.replace("<", " ").replace(">", " ").split())


def _parse_date(value: str) -> date | None:
    m = _DATE_RE.search(value)
    if not m:
        return None
    year, month, day = (int(g) for g in m.groups())
    try:
        return date(year, month, day)
    except ValueError:
        return None


def _doc_id(url: str) -> str:
    return hashlib.sha1(url.encode("utf-8")).hexdigest()[:16]


def extract_article(raw: RawArticle, fallback_date: date | None = None) -> Document:
    """Extract a Document from raw markup.

    Title is the first title-like element (``<title>``, else first ``<h1>``);
    body is the paragraph text with script/style/nav content removed; tags
    come from keyword metadata, lowercased. The published date is parsed from
    metadata date fields, falling back to ``fallback_date``.
    """
    parser = _ArticleParser()
    parser.feed(raw.markup)
    parser.close()

    if not parser.paragraphs:
        raise ExtractionFailed(f"no paragraph text in {raw.url}")

    title = _clean_text("".join(parser.title_parts))
    if not title:
        title = _clean_text("".join(parser.h1_parts))

    tags = set()
    for chunk in parser.keywords:
        for part in chunk.split(","):
            tag = part.strip().lower()
            if tag:
                tags.add(tag)

    published = None
    for candidate in parser.date_candidates:
        published = _parse_date(candidate)
        if published is not None:
            break
    if published is None:
        if fallback_date is None:
            raise DateUnparseable(f"no parseable date in {raw.url} and no fallback given")
        published = fallback_date

    return Document(
        id=_doc_id(raw.url),
        source_id=raw.source_id,
        published_at=published,
        title=title,
        body="\n".join(parser.paragraphs),
        tags=frozenset(tags),
    )
