"""Cross-correlation function between two aligned series.

For each lag k the Pearson correlation is computed between x_t and y_{t+k}
over the overlapping window, with each window re-centered by its own mean
and scaled by its own standard deviation. The peak lag maximizes |r|, ties
broken toward the smallest |k| and then the negative lag.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InsufficientOverlap, ZeroVariance
from .series import TimeSeries, align


@dataclass(frozen=True)
class CcfResult:
    lags: tuple[int, ...]
    correlations: tuple[float, ...]
    peak_lag: int

    @property
    def peak_correlation(self) -> float:
        return self.correlations[self.lags.index(self.peak_lag)]


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    a = a - a.mean()
    b = b - b.mean()
    sa = np.sqrt(np.dot(a, a))
    sb = np.sqrt(np.dot(b, b))
    if sa == 0.0 or sb == 0.0:
        raise ZeroVariance("constant window in cross-correlation")
    return float(np.dot(a, b) / (sa * sb))


def ccf(x: TimeSeries, y: TimeSeries, max_lag: int) -> CcfResult:
    if max_lag < 1:
        raise ValueError("max_lag must be >= 1")
    if x.granularity != y.granularity:
        raise ValueError("series must share a granularity")
    _, xv, yv = align(x, y)
    n = xv.size
    if n <= max_lag + 2:
        raise InsufficientOverlap(f"need overlap > max_lag + 2 = {max_lag + 2}, got {n}")

    lags = tuple(range(-max_lag, max_lag + 1))
    corrs = []
    for k in lags:
        if k >= 0:
            a, b = xv[: n - k], yv[k:]
        else:
            a, b = xv[-k:], yv[: n + k]
        corrs.append(_pearson(a, b))

    order = sorted(range(len(lags)), key=lambda i: (-abs(corrs[i]), abs(lags[i]), lags[i]))
    return CcfResult(lags=lags, correlations=tuple(corrs), peak_lag=lags[order[0]])
