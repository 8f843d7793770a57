from datetime import date, datetime, timezone

import pytest

from mediaseries.corpus import RawArticle, extract_article
from mediaseries.errors import DateUnparseable, ExtractionFailed

FETCHED = datetime(2020, 3, 1, tzinfo=timezone.utc)


def raw(markup: str, url: str = "https://example.es/a") -> RawArticle:
    return RawArticle(url=url, fetched_at=FETCHED, markup=markup, source_id="example")


def test_minimal_page_with_fallback_date() -> None:
    doc = extract_article(
        raw("<html><head><title>T</title></head><body><p>Hola mundo</p></body></html>"),
        fallback_date=date(2020, 1, 1),
    )
    assert doc.title == "T"
    assert doc.body == "Hola mundo"
    assert doc.tags == frozenset()
    assert doc.published_at == date(2020, 1, 1)


def test_script_only_body_fails() -> None:
    with pytest.raises(ExtractionFailed):
        extract_article(raw("<html><body><script>x()</script></body></html>"),
                        fallback_date=date(2020, 1, 1))


def test_keyword_metadata_fixture() -> None:
    markup = """
    <html><head>
      <title>Sentencia</title>
      <meta name="keywords" content="Política, Justicia">
      <meta property="article:published_time" content="2019-06-22T10:00:00+02:00">
    </head>
    <body>
      <nav><p>menu item</p></nav>
      <p>Primer párrafo.</p>
      <script>tracker()</script>
      <p>Segundo párrafo.</p>
    </body></html>
    """
    doc = extract_article(raw(markup))
    assert doc.tags == {"política", "justicia"}
    assert doc.published_at == date(2019, 6, 22)
    assert doc.body == "Primer párrafo.\nSegundo párrafo."


def test_no_date_and_no_fallback_raises() -> None:
    with pytest.raises(DateUnparseable):
        extract_article(raw("<html><body><p>texto</p></body></html>"))


def test_h1_fallback_title_and_malformed_markup() -> None:
    doc = extract_article(
        raw("<html><body><h1>Titular</h1><p>cuerpo <b>roto</p><div>"),
        fallback_date=date(2021, 5, 1),
    )
    assert doc.title == "Titular"
    assert "cuerpo" in doc.body


def test_body_never_contains_angle_brackets() -> None:
    doc = extract_article(
        raw("<html><body><p>a &lt;tag&gt; b</p><p>c <em>d</em></p></body></html>"),
        fallback_date=date(2021, 5, 1),
    )
    assert "<" not in doc.body and ">" not in doc.body
    assert "d" in doc.body


def test_ids_are_stable_per_url() -> None:
    markup = "<html><body><p>x y</p></body></html>"
    a = extract_article(raw(markup, url="https://example.es/1"), fallback_date=date(2020, 1, 1))
    b = extract_article(raw(markup, url="https://example.es/1"), fallback_date=date(2020, 1, 1))
    c = extract_article(raw(markup, url="https://example.es/2"), fallback_date=date(2020, 1, 1))
    assert a.id == b.id != c.id


def test_raw_article_invariants() -> None:
    with pytest.raises(ValueError):
        RawArticle(url="", fetched_at=FETCHED, markup="<p>x</p>", source_id="s")
    with pytest.raises(ValueError):
        RawArticle(url="u", fetched_at=FETCHED, markup="", source_id="s")
