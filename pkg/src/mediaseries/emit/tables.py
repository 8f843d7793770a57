"""Tabular reports and CSV emission (RFC-4180, UTF-8, LF).

Every writer has a matching reader so emitted files round-trip losslessly;
floats are written with ``repr`` (shortest exact form).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from ..errors import EmptyInput
from ..timeseries.anomalies import AnomalyReport, AnomalyRow
from ..timeseries.ccf import CcfResult
from ..timeseries.decompose import Decomposition


@dataclass(frozen=True)
class TagFrequencyRow:
    tag: str
    count: int
    percent: float


@dataclass(frozen=True)
class TagFrequencyReport:
    rows: tuple[TagFrequencyRow, ...]  # descending count, ties lexicographic
    total_docs: int


def tag_frequency(doc_tags: Sequence[set[str] | frozenset[str]], top_n: int) -> TagFrequencyReport:
    """Per-tag document counts: each document counts once per tag it carries;
    percent is of documents, not of tag occurrences."""
    if not doc_tags:
        raise EmptyInput("no documents for tag frequency")
    counts: dict[str, int] = {}
    for tags in doc_tags:
        for tag in tags:
            counts[tag] = counts.get(tag, 0) + 1
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]
    n = len(doc_tags)
    rows = tuple(
        TagFrequencyRow(tag=t, count=c, percent=100.0 * c / n) for t, c in ordered
    )
    return TagFrequencyReport(rows=rows, total_docs=n)


def _open_w(path: str | Path):
    return open(path, "w", encoding="utf-8", newline="")


def write_tag_frequency_csv(path: str | Path, report: TagFrequencyReport) -> None:
    with _open_w(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["tag", "count", "percent"])
        for row in report.rows:
            w.writerow([row.tag, row.count, repr(row.percent)])


def read_tag_frequency_csv(path: str | Path) -> list[TagFrequencyRow]:
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        for tag, count, percent in reader:
            out.append(TagFrequencyRow(tag=tag, count=int(count), percent=float(percent)))
    return out


def write_anomaly_csv(path: str | Path, report: AnomalyReport) -> None:
    with _open_w(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["date", "observed", "expected", "lower", "upper", "is_anomaly"])
        for r in report.rows:
            w.writerow(
                [r.date.isoformat(), repr(r.observed), repr(r.expected), repr(r.lower_99),
                 repr(r.upper_99), "true" if r.is_anomaly else "false"]
            )


def read_anomaly_csv(path: str | Path) -> AnomalyReport:
    rows = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        for d, obs, exp, lo, hi, flag in reader:
            rows.append(
                AnomalyRow(
                    date=date.fromisoformat(d),
                    observed=float(obs),
                    expected=float(exp),
                    lower_99=float(lo),
                    upper_99=float(hi),
                    is_anomaly=flag == "true",
                )
            )
    return AnomalyReport(rows=tuple(rows))


def write_anomaly_table_csv(
    path: str | Path, report: AnomalyReport, headlines: Mapping[date, str] | None = None
) -> None:
    """Anomalous dates only, most recent first, with the day's mean
    probability and an optional headline joined from the corpus."""
    with _open_w(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["date", "mean_probability", "headline"])
        for r in report.anomalies():
            headline = (headlines or {}).get(r.date, "")
            w.writerow([r.date.isoformat(), repr(r.observed), headline])


def write_decomposition_csv(path: str | Path, decomp: Decomposition) -> None:
    with _open_w(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["date", "observed", "trend", "seasonal", "residual"])
        for i, d in enumerate(decomp.dates):
            w.writerow(
                [d.isoformat(), repr(float(decomp.observed[i])), _nan_repr(decomp.trend[i]),
                 repr(float(decomp.seasonal[i])), _nan_repr(decomp.residual[i])]
            )


def _nan_repr(x: float) -> str:
    return "" if np.isnan(x) else repr(float(x))


def read_decomposition_csv(path: str | Path) -> dict[str, list]:
    cols: dict[str, list] = {"date": [], "observed": [], "trend": [], "seasonal": [], "residual": []}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        for d, obs, tr, se, re_ in reader:
            cols["date"].append(date.fromisoformat(d))
            cols["observed"].append(float(obs))
            cols["trend"].append(float(tr) if tr else float("nan"))
            cols["seasonal"].append(float(se))
            cols["residual"].append(float(re_) if re_ else float("nan"))
    return cols


def write_ccf_csv(path: str | Path, result: CcfResult) -> None:
    with _open_w(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["lag", "correlation"])
        for lag, corr in zip(result.lags, result.correlations):
            w.writerow([lag, repr(corr)])


def read_ccf_csv(path: str | Path) -> list[tuple[int, float]]:
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        for lag, corr in reader:
            out.append((int(lag), float(corr)))
    return out
