"""Time series container, aggregation from per-document scores, and CSV I/O."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from ..errors import EmptyInput

DAILY = "daily"
MONTHLY = "monthly"


def _next_month(d: date) -> date:
    return date(d.year + 1, 1, 1) if d.month == 12 else date(d.year, d.month + 1, 1)


@dataclass(frozen=True)
class TimeSeries:
    """Dated values at daily or monthly granularity.

    Dates are strictly increasing; missing dates are simply absent (never
    NaN-filled). Monthly points are keyed to the first day of the month.
    """

    points: tuple[tuple[date, float], ...]
    granularity: str

    def __post_init__(self) -> None:
        if self.granularity not in (DAILY, MONTHLY):
            raise ValueError(f"unknown granularity {self.granularity!r}")
        last = None
        for d, _ in self.points:
            if last is not None and d <= last:
                raise ValueError("dates must be strictly increasing")
            if self.granularity == MONTHLY and d.day != 1:
                raise ValueError("monthly points must be keyed to the first of the month")
            last = d

    def __len__(self) -> int:
        return len(self.points)

    def dates(self) -> list[date]:
        return [d for d, _ in self.points]

    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.points], dtype=np.float64)

    def gap_free(self) -> bool:
        step = timedelta(days=1)
        for (d1, _), (d2, _) in zip(self.points, self.points[1:]):
            if self.granularity == DAILY:
                if d2 - d1 != step:
                    return False
            else:
                if d2 != _next_month(d1):
                    return False
        return True

    def scaled(self, a: float, b: float = 0.0) -> "TimeSeries":
        return TimeSeries(tuple((d, a * v + b) for d, v in self.points), self.granularity)


def aggregate(predictions: Iterable[tuple[date, float]], granularity: str) -> TimeSeries:
    """Arithmetic-mean bucketing of (date, probability) pairs by day or month."""
    buckets: dict[date, list[float]] = {}
    for d, value in predictions:
        key = d if granularity == DAILY else date(d.year, d.month, 1)
        buckets.setdefault(key, []).append(float(value))
    if not buckets:
        raise EmptyInput("no predictions to aggregate")
    points = tuple((d, float(np.mean(buckets[d]))) for d in sorted(buckets))
    return TimeSeries(points, granularity)


def write_series_csv(path: str | Path, series: TimeSeries) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["date", "value"])
        for d, v in series.points:
            writer.writerow([d.isoformat(), repr(float(v))])


def read_series_csv(path: str | Path, granularity: str | None = None) -> TimeSeries:
    """Read a ``date,value`` CSV; granularity is inferred unless given."""
    points: list[tuple[date, float]] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise EmptyInput(f"empty series file {path}")
        for row in reader:
            if not row:
                continue
            points.append((date.fromisoformat(row[0]), float(row[1])))
    if not points:
        raise EmptyInput(f"no data rows in {path}")
    if granularity is None:
        granularity = MONTHLY if all(d.day == 1 for d, _ in points) and len(points) > 1 else DAILY
    return TimeSeries(tuple(points), granularity)


def align(x: TimeSeries, y: TimeSeries) -> tuple[list[date], np.ndarray, np.ndarray]:
    """Intersect two series on their common dates, preserving order."""
    ydict = dict(y.points)
    common = [(d, v, ydict[d]) for d, v in x.points if d in ydict]
    dates = [d for d, _, _ in common]
    xv = np.array([v for _, v, _ in common], dtype=np.float64)
    yv = np.array([w for _, _, w in common], dtype=np.float64)
    return dates, xv, yv
