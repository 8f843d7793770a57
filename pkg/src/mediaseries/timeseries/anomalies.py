"""Anomaly detection: points outside the structural model's 99% interval."""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date

from .series import TimeSeries
from .structural import StructuralModel, predict


@dataclass(frozen=True)
class AnomalyRow:
    date: date
    observed: float
    expected: float
    lower_99: float
    upper_99: float
    is_anomaly: bool


@dataclass(frozen=True)
class AnomalyReport:
    rows: tuple[AnomalyRow, ...]  # sorted by date descending, most recent first

    def anomalies(self) -> list[AnomalyRow]:
        return [r for r in self.rows if r.is_anomaly]


def detect_anomalies(series: TimeSeries, model: StructuralModel) -> AnomalyReport:
    """One row per series point; a value strictly outside [lower, upper] is
    an anomaly. Rows are ordered most recent first, mirroring a "list of
    recent anomalies" table."""
    bands = predict(model, series.dates())
    rows = []
    for (d, observed), (expected, lower, upper) in zip(series.points, bands):
        rows.append(
            AnomalyRow(
                date=d,
                observed=observed,
                expected=expected,
                lower_99=lower,
                upper_99=upper,
                is_anomaly=not (lower <= observed <= upper),
            )
        )
    rows.sort(key=lambda r: r.date, reverse=True)
    return AnomalyReport(rows=tuple(rows))
