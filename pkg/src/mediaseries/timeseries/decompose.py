"""Classical additive decomposition by centered moving averages.

Splits a gap-free series into trend + seasonal + residual. The trend is a
centered moving average (even periods use the standard half-weighted window
of length period+1); the seasonal component is the per-phase mean of the
detrended interior, re-centered to sum to zero over one period; the residual
is what remains. Trend and residual are NaN on the half-window edges where
the moving average is undefined.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date

import numpy as np

from ..errors import GapsPresent, TooShort
from .series import TimeSeries


@dataclass(frozen=True)
class Decomposition:
    dates: tuple[date, ...]
    observed: np.ndarray
    trend: np.ndarray
    seasonal: np.ndarray
    residual: np.ndarray
    period: int


def decompose_ma(series: TimeSeries, period: int) -> Decomposition:
    if period < 2:
        raise ValueError("period must be >= 2")
    n = len(series)
    if n < 2 * period:
        raise TooShort(f"need at least {2 * period} points for period {period}, got {n}")
    if not series.gap_free():
        raise GapsPresent("moving-average decomposition requires a gap-free series")

    x = series.values()
    if period % 2 == 0:
        filt = np.concatenate([[0.5], np.ones(period - 1), [0.5]]) / period
    else:
        filt = np.full(period, 1.0 / period)
    half = len(filt) // 2

    trend = np.full(n, np.nan)
    trend[half : n - half] = np.convolve(x, filt, mode="valid")  # filt is symmetric

    detrended = x - trend
    phase_means = np.array(
        [np.nanmean(detrended[phase::period]) for phase in range(period)]
    )
    phase_means -= phase_means.mean()
    seasonal = np.tile(phase_means, n // period + 1)[:n]

    residual = x - trend - seasonal
    return Decomposition(
        dates=tuple(series.dates()),
        observed=x,
        trend=trend,
        seasonal=seasonal,
        residual=residual,
        period=period,
    )


def trend_ratio(decomp: Decomposition, window: int = 36) -> float | None:
    """Ratio of the last defined trend value to the one ``window`` points
    earlier; None when the trend does not span that far. This is an
    interpretation of "growth over the last N periods", not a fitted rate."""
    defined = np.flatnonzero(~np.isnan(decomp.trend))
    if defined.size == 0:
        return None
    last = defined[-1]
    earlier = last - window
    if earlier < 0 or np.isnan(decomp.trend[earlier]) or decomp.trend[earlier] == 0.0:
        return None
    return float(decomp.trend[last] / decomp.trend[earlier])
