"""Command-line pipeline: ingest -> normalize -> train -> score -> analyses.

Every subcommand reads one JSON config (``--config`` or the
MEDIASERIES_CONFIG environment variable) and accepts overrides as flags of
the same dotted name (``--train.epochs 30``). Outputs land only under the
configured output directory and every artifact path is printed to stdout.
Exit codes: 0 success, 2 config error, 3 data error, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import date, datetime, timezone
from pathlib import Path

import numpy as np

from . import classify, corpus as corpus_mod, emit, tda, timeseries as ts
from .config import ENV_CONFIG, load_config, parse_overrides, require_input
from .errors import ConfigInvalid, EmptyInput, MediaseriesError

SUBCOMMANDS = (
    "ingest", "normalize", "train-tags", "train-gbv", "score",
    "series", "anomalies", "ccf", "mapper", "report", "all",
)


def _out(cfg) -> Path:
    return Path(cfg["paths"]["output"])


def _corpus_path(cfg) -> Path:
    if cfg["paths"]["corpus"]:
        return Path(require_input(cfg, "corpus", "reading the corpus"))
    fallback = _out(cfg) / "corpus.jsonl"
    if not fallback.exists():
        raise ConfigInvalid("no corpus available: set paths.corpus or run ingest first")
    return fallback


def _need(path: Path, hint: str) -> Path:
    if not path.exists():
        raise MediaseriesError(f"missing {path.name}: run {hint} first")
    return path


def _chunked(items, size=64):
    for i in range(0, len(items), size):
        yield items[i : i + size]


def _parallel_map(fn, chunks, jobs: int):
    if jobs <= 1:
        return [fn(chunk) for chunk in chunks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, chunks))


# --- subcommands -------------------------------------------------------------


def cmd_ingest(cfg) -> list[Path]:
    html_dir = require_input(cfg, "html_dir", "ingest")
    docs = []
    fetched_at = datetime.fromtimestamp(0, timezone.utc)  # offline dumps carry no fetch time
    for path, url, source_id, fallback in corpus_mod.read_manifest(html_dir):
        markup = Path(path).read_text("utf-8")
        raw = corpus_mod.RawArticle(url=url, fetched_at=fetched_at, markup=markup, source_id=source_id)
        docs.append(corpus_mod.extract_article(raw, fallback_date=fallback))
    docs.sort(key=lambda d: d.id)
    out = _out(cfg)
    out.mkdir(parents=True, exist_ok=True)
    target = out / "corpus.jsonl"
    corpus_mod.write_corpus(target, docs)
    return [target]


def cmd_normalize(cfg) -> list[Path]:
    docs = corpus_mod.read_corpus(_corpus_path(cfg))
    stopwords = corpus_mod.load_stopwords(cfg["paths"]["stopwords"])
    include_title = cfg["corpus"]["include_title"]

    def work(chunk):
        out = []
        for doc in chunk:
            text = doc.title + "\n" + doc.body if include_title else doc.body
            out.append(corpus_mod.NormalizedDoc(doc_id=doc.id, tokens=tuple(corpus_mod.normalize(text, stopwords))))
        return out

    results = _parallel_map(work, list(_chunked(docs)), cfg["jobs"])
    normalized = sorted((nd for chunk in results for nd in chunk), key=lambda d: d.doc_id)
    out = _out(cfg)
    out.mkdir(parents=True, exist_ok=True)
    target = out / "normalized.jsonl"
    corpus_mod.write_normalized(target, normalized)
    return [target]


def _load_vocab(cfg, normalized) -> tuple[corpus_mod.Vocabulary, list[Path]]:
    out = _out(cfg)
    vocab_path = out / "vocab.json"
    if vocab_path.exists():
        return corpus_mod.load_vocabulary(vocab_path), []
    vocab = corpus_mod.build_vocabulary(
        normalized,
        min_df=cfg["corpus"]["min_df"],
        max_size=cfg["corpus"]["max_vocab"],
        max_sequence_length=cfg["corpus"]["max_sequence_length"],
    )
    corpus_mod.save_vocabulary(vocab_path, vocab)
    return vocab, [vocab_path]


def _vectorized(cfg, normalized, vocab):
    return {nd.doc_id: corpus_mod.vectorize(nd, vocab) for nd in normalized}


def _training_parts(cfg):
    docs = corpus_mod.read_corpus(_corpus_path(cfg))
    normalized = corpus_mod.read_normalized(_need(_out(cfg) / "normalized.jsonl", "normalize"))
    vocab, artifacts = _load_vocab(cfg, normalized)
    return docs, normalized, vocab, artifacts


def cmd_train_tags(cfg) -> list[Path]:
    docs, normalized, vocab, artifacts = _training_parts(cfg)
    min_tag_df = cfg["corpus"]["min_tag_df"]
    counts: dict[str, int] = {}
    for doc in docs:
        for tag in doc.tags:
            counts[tag] = counts.get(tag, 0) + 1
    labels = sorted(t for t, c in counts.items() if c >= min_tag_df)
    if not labels:
        raise MediaseriesError(f"no tag reaches min_tag_df={min_tag_df}")
    vectors = _vectorized(cfg, normalized, vocab)
    dataset = []
    for doc in sorted(docs, key=lambda d: d.id):
        target = np.array([1.0 if t in doc.tags else 0.0 for t in labels])
        dataset.append((vectors[doc.id], target))
    model = classify.nn1_model(
        vocab.n_embeddings,
        vocab.max_sequence_length,
        labels,
        embedding_dim=cfg["model"]["embedding_dim"],
        channels=tuple(cfg["model"]["nn1_channels"]),
        kernel_width=cfg["model"]["kernel_width"],
        seed=cfg["seed"],
    )
    tc = classify.TrainConfig(
        learning_rate=cfg["train"]["learning_rate"],
        epochs=cfg["train"]["epochs"],
        batch_size=cfg["train"]["batch_size"],
        seed=cfg["seed"] + 1,
        optimizer=cfg["train"]["optimizer"],
    )
    trained, history = classify.train(model, dataset, tc)
    models_dir = _out(cfg) / "models"
    models_dir.mkdir(parents=True, exist_ok=True)
    model_path = models_dir / "nn1.json"
    history_path = models_dir / "nn1_history.csv"
    classify.save_model(model_path, trained)
    classify.write_history_csv(history_path, history)
    return artifacts + [model_path, history_path]


def cmd_train_gbv(cfg) -> list[Path]:
    docs, normalized, vocab, artifacts = _training_parts(cfg)
    gbv_tags = set(cfg["gbv_tags"])
    vectors = _vectorized(cfg, normalized, vocab)
    dataset = []
    for doc in sorted(docs, key=lambda d: d.id):
        target = np.array([1.0 if doc.tags & gbv_tags else 0.0])
        dataset.append((vectors[doc.id], target))
    model = classify.nn2_model(
        vocab.n_embeddings,
        vocab.max_sequence_length,
        embedding_dim=cfg["model"]["embedding_dim"],
        channels=tuple(cfg["model"]["nn2_channels"]),
        kernel_width=cfg["model"]["kernel_width"],
        pool_after=tuple(cfg["model"]["nn2_pool_after"]),
        seed=cfg["seed"] + 2,
    )
    tc = classify.TrainConfig(
        learning_rate=cfg["train"]["learning_rate"],
        epochs=cfg["train"]["epochs"],
        batch_size=cfg["train"]["batch_size"],
        seed=cfg["seed"] + 3,
        optimizer=cfg["train"]["optimizer"],
    )
    trained, history = classify.train(model, dataset, tc)
    models_dir = _out(cfg) / "models"
    models_dir.mkdir(parents=True, exist_ok=True)
    model_path = models_dir / "nn2.json"
    history_path = models_dir / "nn2_history.csv"
    classify.save_model(model_path, trained)
    classify.write_history_csv(history_path, history)
    return artifacts + [model_path, history_path]


def cmd_score(cfg) -> list[Path]:
    out = _out(cfg)
    docs = corpus_mod.read_corpus(_corpus_path(cfg))
    normalized = corpus_mod.read_normalized(_need(out / "normalized.jsonl", "normalize"))
    vocab = corpus_mod.load_vocabulary(_need(out / "vocab.json", "train-tags"))
    nn1 = classify.load_model(_need(out / "models" / "nn1.json", "train-tags"))
    nn2 = classify.load_model(_need(out / "models" / "nn2.json", "train-gbv"))
    threshold = cfg["thresholds"]["tag"]
    vectors = _vectorized(cfg, normalized, vocab)
    by_id = {doc.id: doc for doc in docs}
    ordered_ids = sorted(vectors)

    def work(chunk_ids):
        ids_batch = np.stack([vectors[i] for i in chunk_ids])
        tag_probs = classify.forward_batch(nn1, ids_batch)
        gbv_probs = classify.forward_batch(nn2, ids_batch)
        rows = []
        for j, doc_id in enumerate(chunk_ids):
            tags = sorted(
                name for name, p in zip(nn1.label_names, tag_probs[j]) if p > threshold
            )
            rows.append(
                {
                    "id": doc_id,
                    "date": by_id[doc_id].published_at.isoformat(),
                    "tags": tags,
                    "gbv": float(gbv_probs[j][0]),
                }
            )
        return rows

    results = _parallel_map(work, list(_chunked(ordered_ids)), cfg["jobs"])
    rows = sorted((r for chunk in results for r in chunk), key=lambda r: r["id"])
    target = out / "scores.jsonl"
    with open(target, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    return [target]


def _load_scores(cfg) -> list[dict]:
    path = _need(_out(cfg) / "scores.jsonl", "score")
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append(json.loads(line))
    if not rows:
        raise EmptyInput("scores.jsonl is empty")
    return rows


def _gbv_series(cfg, granularity: str) -> ts.TimeSeries:
    rows = _load_scores(cfg)
    pairs = [(date.fromisoformat(r["date"]), r["gbv"]) for r in rows]
    return ts.aggregate(pairs, granularity)


def cmd_series(cfg) -> list[Path]:
    series = _gbv_series(cfg, cfg["series"]["granularity"])
    out = _out(cfg) / "series"
    out.mkdir(parents=True, exist_ok=True)
    series_path = out / "series.csv"
    ts.write_series_csv(series_path, series)
    decomp = ts.decompose_ma(series, cfg["series"]["decompose_period"])
    decomp_path = out / "decomposition.csv"
    emit.write_decomposition_csv(decomp_path, decomp)
    svg_path = out / "series_trend.svg"
    svg_path.write_text(emit.series_plot_svg(series, decomp.trend, title="series with trend"), "utf-8")
    ratio = ts.trend_ratio(decomp, cfg["series"]["trend_ratio_window"])
    ratio_path = out / "trend_ratio.json"
    ratio_path.write_text(
        json.dumps(
            {
                "window": cfg["series"]["trend_ratio_window"],
                "ratio": ratio,
                "note": "ratio of last defined trend value to the value one window earlier; an interpretation, not a fitted rate",
            },
            indent=1,
        )
        + "\n",
        "utf-8",
    )
    return [series_path, decomp_path, svg_path, ratio_path]


def _fit_config(cfg) -> ts.FitConfig:
    holidays = {}
    if cfg["paths"]["holidays"]:
        holidays = ts.load_holidays(require_input(cfg, "holidays", "holiday effects"))
    extra = ()
    if cfg["structural"]["weekly_order"] > 0:
        extra = ((7.0, cfg["structural"]["weekly_order"]),)
    return ts.FitConfig(
        n_changepoints=cfg["structural"]["n_changepoints"],
        changepoint_range=cfg["structural"]["changepoint_range"],
        fourier_order=cfg["structural"]["fourier_order"],
        seasonal_period=cfg["structural"]["seasonal_period"],
        extra_seasonalities=extra,
        holidays=holidays,
        ridge_lambda=cfg["structural"]["ridge_lambda"],
    )


def cmd_anomalies(cfg) -> list[Path]:
    series = _gbv_series(cfg, "daily")
    model = ts.fit_structural(series, _fit_config(cfg))
    report = ts.detect_anomalies(series, model)
    docs = corpus_mod.read_corpus(_corpus_path(cfg))
    scores = {r["id"]: r["gbv"] for r in _load_scores(cfg)}
    best: dict[date, tuple[float, str]] = {}
    for doc in docs:
        p = scores.get(doc.id, 0.0)
        if doc.published_at not in best or p > best[doc.published_at][0]:
            best[doc.published_at] = (p, doc.title)
    headlines = {d: title for d, (_, title) in best.items()}
    out = _out(cfg) / "anomalies"
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "anomalies.csv"
    emit.write_anomaly_csv(csv_path, report)
    table_path = out / "anomalies_table.csv"
    emit.write_anomaly_table_csv(table_path, report, headlines)
    svg_path = out / "fit.svg"
    svg_path.write_text(emit.anomaly_plot_svg(report), "utf-8")
    return [csv_path, table_path, svg_path]


def cmd_ccf(cfg) -> list[Path]:
    survey_path = require_input(cfg, "survey", "cross-correlation")
    granularity = cfg["ccf"]["granularity"]
    gbv = _gbv_series(cfg, granularity)
    survey = ts.read_series_csv(survey_path, granularity)
    result = ts.ccf(gbv, survey, cfg["ccf"]["max_lag"])
    out = _out(cfg) / "ccf"
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "ccf.csv"
    emit.write_ccf_csv(csv_path, result)
    svg_path = out / "ccf.svg"
    svg_path.write_text(emit.ccf_plot_svg(result.lags, result.correlations), "utf-8")
    peak_path = out / "ccf_peak.json"
    peak_path.write_text(
        json.dumps({"peak_lag": result.peak_lag, "correlation": result.peak_correlation}, indent=1) + "\n",
        "utf-8",
    )
    return [csv_path, svg_path, peak_path]


def cmd_mapper(cfg) -> list[Path]:
    out = _out(cfg)
    scores = _load_scores(cfg)
    normalized = corpus_mod.read_normalized(_need(out / "normalized.jsonl", "normalize"))
    vocab = corpus_mod.load_vocabulary(_need(out / "vocab.json", "train-tags"))
    nn1 = classify.load_model(_need(out / "models" / "nn1.json", "train-tags"))
    mcfg = cfg["mapper"]
    rows = scores
    if mcfg["year"] is not None:
        rows = [r for r in rows if date.fromisoformat(r["date"]).year == mcfg["year"]]
    gbv_probs = {r["id"]: r["gbv"] for r in rows}
    if mcfg["gbv_only"]:
        subset = tda.select_high_gbv(gbv_probs, cfg["thresholds"]["gbv_select"])
    else:
        subset = sorted(gbv_probs)
    if not subset:
        raise EmptyInput(
            f"no document passes gbv probability > {cfg['thresholds']['gbv_select']}"
        )
    vectors = _vectorized(cfg, normalized, vocab)
    docs = [(doc_id, vectors[doc_id]) for doc_id in subset]
    cloud = tda.tag_probability_cloud(nn1, docs, gbv_probs)
    k = min(mcfg["pca_dim"], cloud.coords.shape[1], max(1, cloud.coords.shape[0] - 1))
    pca = tda.pca_fit(cloud.coords, k)
    reduced = cloud.with_coords(tda.pca_transform(pca, cloud.coords))
    lens = mcfg["lens"] if mcfg["lens"] == "pc1" else int(mcfg["lens"])
    graph = tda.mapper(
        reduced,
        lens=lens,
        cover=tda.Cover(mcfg["n_intervals"], mcfg["overlap"]),
        cluster_eps=mcfg["cluster_eps"],
    )
    graph = tda.decorate(graph)
    out_dir = out / "mapper"
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / "mapper.json"
    dot_path = out_dir / "mapper.dot"
    emit.write_mapper_files(graph, json_path, dot_path)
    return [json_path, dot_path]


def cmd_report(cfg) -> list[Path]:
    scores = _load_scores(cfg)
    out = _out(cfg) / "report"
    out.mkdir(parents=True, exist_ok=True)
    top_n = cfg["report"]["top_n_tags"]
    artifacts = []

    all_tags = [set(r["tags"]) for r in scores]
    freq = emit.tag_frequency(all_tags, top_n)
    freq_csv = out / "tag_frequency.csv"
    emit.write_tag_frequency_csv(freq_csv, freq)
    freq_svg = out / "tag_frequency.svg"
    freq_svg.write_text(
        emit.bar_chart_svg([r.tag for r in freq.rows], [r.percent for r in freq.rows],
                           title="tag frequency (% of documents)"),
        "utf-8",
    )
    artifacts += [freq_csv, freq_svg]

    gbv_subset = [set(r["tags"]) for r in scores if r["gbv"] > cfg["thresholds"]["gbv_select"]]
    if gbv_subset:
        gfreq = emit.tag_frequency(gbv_subset, top_n)
        gfreq_csv = out / "gbv_tag_frequency.csv"
        emit.write_tag_frequency_csv(gfreq_csv, gfreq)
        gfreq_svg = out / "gbv_tag_frequency.svg"
        gfreq_svg.write_text(
            emit.bar_chart_svg([r.tag for r in gfreq.rows], [r.percent for r in gfreq.rows],
                               title="tag frequency in high-probability documents (%)"),
            "utf-8",
        )
        artifacts += [gfreq_csv, gfreq_svg]

    series = _gbv_series(cfg, "daily")
    years = cfg["report"]["years"] or sorted({d.year for d in series.dates()})
    scale = None
    if cfg["report"]["heatmap_scale"] == "global":
        values = series.values()
        scale = (float(values.min()), float(values.max()))
    for year in years:
        hm_path = out / f"heatmap_{year}.svg"
        emit.render_heatmap(series, year, path=str(hm_path), scale=scale)
        artifacts.append(hm_path)
    return artifacts


def cmd_all(cfg) -> list[Path]:
    artifacts = []
    if cfg["paths"]["html_dir"]:
        artifacts += cmd_ingest(cfg)
    artifacts += cmd_normalize(cfg)
    artifacts += cmd_train_tags(cfg)
    artifacts += cmd_train_gbv(cfg)
    artifacts += cmd_score(cfg)
    artifacts += cmd_series(cfg)
    artifacts += cmd_anomalies(cfg)
    if cfg["paths"]["survey"]:
        artifacts += cmd_ccf(cfg)
    artifacts += cmd_mapper(cfg)
    artifacts += cmd_report(cfg)
    return artifacts


_HANDLERS = {
    "ingest": cmd_ingest,
    "normalize": cmd_normalize,
    "train-tags": cmd_train_tags,
    "train-gbv": cmd_train_gbv,
    "score": cmd_score,
    "series": cmd_series,
    "anomalies": cmd_anomalies,
    "ccf": cmd_ccf,
    "mapper": cmd_mapper,
    "report": cmd_report,
    "all": cmd_all,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mediaseries",
        description="News-corpus scoring, time-series analyses and Mapper graphs.",
        epilog=f"Default config path comes from ${ENV_CONFIG}; any config field "
        "can be overridden with a flag of the same dotted name.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="path to the JSON run config")
    return parser


def main(argv: list[str] | None = None) -> int:
    args, extra = build_parser().parse_known_args(argv)
    try:
        overrides = parse_overrides(extra)
        cfg = load_config(args.config, overrides)
        artifacts = _HANDLERS[args.subcommand](cfg)
    except MediaseriesError as exc:
        print(f"error ({args.subcommand}): {exc}", file=sys.stderr)
        return exc.exit_code
    for path in artifacts:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
