"""Hand-assembled SVG charts: line plots with bands/markers and calendar
heatmaps. No plotting dependency; output is byte-deterministic with all
coordinates at 4 decimal places. The color ramp runs from cold #313695 to
warm #a50026, linear in RGB.
"""

from __future__ import annotations

import calendar
from dataclasses import dataclass
from datetime import date, timedelta
from typing import Sequence

import numpy as np

from ..errors import YearOutOfRange
from ..timeseries.anomalies import AnomalyReport
from ..timeseries.series import TimeSeries

COLD = (0x31, 0x36, 0x95)
WARM = (0xA5, 0x00, 0x26)
NEUTRAL = "#dddddd"


def fmt(x: float) -> str:
    return f"{x:.4f}"


def ramp_color(v: float) -> str:
    """Linear RGB interpolation, v clamped to [0, 1]."""
    v = min(1.0, max(0.0, v))
    channels = (round(c + (w - c) * v) for c, w in zip(COLD, WARM))
    return "#{:02x}{:02x}{:02x}".format(*channels)


@dataclass(frozen=True)
class CalendarHeatmap:
    year: int
    cells: dict[date, float]
    scale_min: float
    scale_max: float

    def __post_init__(self) -> None:
        for d in self.cells:
            if d.year != self.year:
                raise ValueError(f"cell date {d} outside year {self.year}")


def build_heatmap(series: TimeSeries, year: int,
                  scale: tuple[float, float] | None = None) -> CalendarHeatmap:
    cells = {d: v for d, v in series.points if d.year == year}
    if not cells:
        raise YearOutOfRange(f"series has no data in {year}")
    if scale is None:
        values = list(cells.values())
        scale = (min(values), max(values))
    return CalendarHeatmap(year=year, cells=cells, scale_min=scale[0], scale_max=scale[1])


CELL = 12.0
MONTH_W = 7 * CELL + 18.0
MONTH_H = 6 * CELL + 26.0


def heatmap_svg(hm: CalendarHeatmap) -> str:
    """Month-grid layout: 4 columns x 3 rows of months, each month a
    weeks-by-weekday grid (Monday first). Days without data are neutral;
    every day rect carries a data-date attribute."""
    width = 4 * MONTH_W + 20.0
    height = 3 * MONTH_H + 30.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(width)}" height="{fmt(height)}" '
        f'viewBox="0 0 {fmt(width)} {fmt(height)}">',
        f'<text x="10" y="18" font-family="sans-serif" font-size="14">{hm.year}</text>',
    ]
    span = hm.scale_max - hm.scale_min
    for month in range(1, 13):
        ox = 10.0 + ((month - 1) % 4) * MONTH_W
        oy = 30.0 + ((month - 1) // 4) * MONTH_H
        parts.append(
            f'<text x="{fmt(ox)}" y="{fmt(oy + 10.0)}" font-family="sans-serif" '
            f'font-size="10">{calendar.month_abbr[month]}</text>'
        )
        first_weekday, n_days = calendar.monthrange(hm.year, month)
        for day in range(1, n_days + 1):
            d = date(hm.year, month, day)
            slot = first_weekday + day - 1
            week, weekday = divmod(slot, 7)
            x = ox + week * CELL
            y = oy + 14.0 + weekday * CELL
            if d in hm.cells:
                v = hm.cells[d]
                norm = 0.0 if span == 0.0 else (v - hm.scale_min) / span
                fill = ramp_color(norm)
            else:
                fill = NEUTRAL
            parts.append(
                f'<rect data-date="{d.isoformat()}" x="{fmt(x)}" y="{fmt(y)}" '
                f'width="{fmt(CELL - 1.0)}" height="{fmt(CELL - 1.0)}" fill="{fill}"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_heatmap(series: TimeSeries, year: int, path: str | None = None,
                   scale: tuple[float, float] | None = None) -> tuple[CalendarHeatmap, str]:
    hm = build_heatmap(series, year, scale=scale)
    svg = heatmap_svg(hm)
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    return hm, svg


# --- line plots -------------------------------------------------------------

PLOT_W, PLOT_H = 800.0, 300.0
MARGIN = 40.0


def _scale_points(dates: Sequence[date], values: np.ndarray,
                  lo: float, hi: float) -> list[tuple[float, float]]:
    t0, t1 = dates[0].toordinal(), dates[-1].toordinal()
    t_span = max(1, t1 - t0)
    v_span = hi - lo if hi > lo else 1.0
    pts = []
    for d, v in zip(dates, values):
        x = MARGIN + (d.toordinal() - t0) / t_span * (PLOT_W - 2 * MARGIN)
        y = PLOT_H - MARGIN - (v - lo) / v_span * (PLOT_H - 2 * MARGIN)
        pts.append((x, y))
    return pts


def _polyline(pts: Sequence[tuple[float, float]], stroke: str, width: float = 1.5) -> str:
    coords = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in pts)
    return f'<polyline fill="none" stroke="{stroke}" stroke-width="{fmt(width)}" points="{coords}"/>'


def _finite_range(*arrays: np.ndarray) -> tuple[float, float]:
    stacked = np.concatenate([a[np.isfinite(a)] for a in arrays])
    return float(stacked.min()), float(stacked.max())


def _svg_open(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(PLOT_W)}" height="{fmt(PLOT_H)}" '
        f'viewBox="0 0 {fmt(PLOT_W)} {fmt(PLOT_H)}">',
        f'<rect x="{fmt(MARGIN)}" y="{fmt(MARGIN)}" width="{fmt(PLOT_W - 2 * MARGIN)}" '
        f'height="{fmt(PLOT_H - 2 * MARGIN)}" fill="none" stroke="#888888"/>',
        f'<text x="{fmt(MARGIN)}" y="{fmt(MARGIN - 10.0)}" font-family="sans-serif" '
        f'font-size="12">{title}</text>',
    ]


def series_plot_svg(series: TimeSeries, trend: np.ndarray | None = None,
                    title: str = "series") -> str:
    dates = series.dates()
    values = series.values()
    arrays = [values] + ([trend] if trend is not None else [])
    lo, hi = _finite_range(*arrays)
    parts = _svg_open(title)
    parts.append(_polyline(_scale_points(dates, values, lo, hi), "#313695"))
    if trend is not None:
        defined = np.isfinite(trend)
        pts = _scale_points([d for d, ok in zip(dates, defined) if ok], trend[defined], lo, hi)
        parts.append(_polyline(pts, "#a50026", 2.0))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def anomaly_plot_svg(report: AnomalyReport, title: str = "structural fit") -> str:
    """Observed series with the fitted expectation, the 99% band, and a
    marker on every anomalous point."""
    rows = sorted(report.rows, key=lambda r: r.date)
    dates = [r.date for r in rows]
    observed = np.array([r.observed for r in rows])
    expected = np.array([r.expected for r in rows])
    lower = np.array([r.lower_99 for r in rows])
    upper = np.array([r.upper_99 for r in rows])
    lo, hi = _finite_range(observed, lower, upper)
    parts = _svg_open(title)
    band_pts = _scale_points(dates, upper, lo, hi) + _scale_points(dates, lower, lo, hi)[::-1]
    coords = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in band_pts)
    parts.append(f'<polygon fill="#c7d7ee" stroke="none" points="{coords}"/>')
    parts.append(_polyline(_scale_points(dates, expected, lo, hi), "#2a7e3e", 1.5))
    parts.append(_polyline(_scale_points(dates, observed, lo, hi), "#333333", 1.0))
    for (x, y), row in zip(_scale_points(dates, observed, lo, hi), rows):
        if row.is_anomaly:
            parts.append(f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="3.0" fill="#d62728"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def ccf_plot_svg(lags: Sequence[int], correlations: Sequence[float],
                 title: str = "cross-correlation") -> str:
    parts = _svg_open(title)
    n = len(lags)
    x_step = (PLOT_W - 2 * MARGIN) / max(1, n - 1)
    zero_y = PLOT_H - MARGIN - (0.0 - (-1.0)) / 2.0 * (PLOT_H - 2 * MARGIN)
    parts.append(
        f'<line x1="{fmt(MARGIN)}" y1="{fmt(zero_y)}" x2="{fmt(PLOT_W - MARGIN)}" '
        f'y2="{fmt(zero_y)}" stroke="#bbbbbb"/>'
    )
    for i, (lag, r) in enumerate(zip(lags, correlations)):
        x = MARGIN + i * x_step
        y = PLOT_H - MARGIN - (r - (-1.0)) / 2.0 * (PLOT_H - 2 * MARGIN)
        parts.append(
            f'<line data-lag="{lag}" x1="{fmt(x)}" y1="{fmt(zero_y)}" x2="{fmt(x)}" '
            f'y2="{fmt(y)}" stroke="#313695" stroke-width="2.0"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def bar_chart_svg(labels: Sequence[str], values: Sequence[float], title: str = "") -> str:
    """Horizontal bar chart for tag-frequency reports."""
    n = len(labels)
    row_h = 18.0
    height = 2 * MARGIN + n * row_h
    width = PLOT_W
    vmax = max(values) if values else 1.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(width)}" height="{fmt(height)}" '
        f'viewBox="0 0 {fmt(width)} {fmt(height)}">',
        f'<text x="{fmt(MARGIN)}" y="{fmt(MARGIN - 10.0)}" font-family="sans-serif" '
        f'font-size="12">{title}</text>',
    ]
    for i, (label, value) in enumerate(zip(labels, values)):
        y = MARGIN + i * row_h
        bar = 0.0 if vmax == 0 else value / vmax * (width - 2 * MARGIN - 150.0)
        parts.append(
            f'<text x="{fmt(MARGIN)}" y="{fmt(y + 12.0)}" font-family="sans-serif" '
            f'font-size="11">{label}</text>'
        )
        parts.append(
            f'<rect x="{fmt(MARGIN + 150.0)}" y="{fmt(y + 3.0)}" width="{fmt(bar)}" '
            f'height="{fmt(row_h - 6.0)}" fill="#313695"/>'
        )
        parts.append(
            f'<text x="{fmt(MARGIN + 155.0 + bar)}" y="{fmt(y + 12.0)}" font-family="sans-serif" '
            f'font-size="10">{fmt(value)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
