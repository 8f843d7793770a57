"""Structural time-series model: piecewise-linear trend, Fourier seasonality,
holiday effects, and a homoscedastic Gaussian 99% interval.

The observed series is modeled as trend + seasonality + holidays + error.
Time is rescaled to t in [0, 1] over the training span. The design matrix is

    [1, t, max(0, t - s_j) for each changepoint s_j,
     cos/sin(2*pi*n*t*T_days/P) for n = 1..N per seasonal block,
     one 0/1 indicator per named holiday set]

with changepoints equally spaced over the first ``changepoint_range``
fraction of the span. Coefficients come from least squares, with an L2
penalty applied only to the changepoint-delta columns (a deterministic
stand-in for a sparsity prior on slope changes); the residual scale is the
sample standard deviation of the fit residuals, and the 99% interval is
expected +- 2.5758293 * sigma (hard-coded two-sided normal quantile).
Only the linear growth model is implemented.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date, timedelta
from pathlib import Path

import numpy as np

from ..errors import RankDeficient, TooShort
from .series import TimeSeries

Z_99 = 2.5758293


def load_holidays(path: str | Path) -> dict[str, frozenset[date]]:
    """Read a JSON map of holiday-set name to list of ISO dates."""
    obj = json.loads(Path(path).read_text("utf-8"))
    return {name: frozenset(date.fromisoformat(d) for d in days) for name, days in obj.items()}


@dataclass(frozen=True)
class FourierBlock:
    period_days: float
    order: int
    cos_coef: tuple[float, ...] = ()
    sin_coef: tuple[float, ...] = ()


@dataclass(frozen=True)
class FitConfig:
    n_changepoints: int = 25
    changepoint_range: float = 0.8
    fourier_order: int = 10
    seasonal_period: float = 365.25
    extra_seasonalities: tuple[tuple[float, int], ...] = ()
    holidays: dict[str, frozenset[date]] = field(default_factory=dict)
    ridge_lambda: float = 1e-3

    def __post_init__(self) -> None:
        if not 0.0 < self.changepoint_range <= 1.0:
            raise ValueError("changepoint_range must be in (0, 1]")
        if self.n_changepoints < 0 or self.fourier_order < 0 or self.ridge_lambda < 0:
            raise ValueError("n_changepoints, fourier_order and ridge_lambda must be >= 0")


@dataclass(frozen=True)
class StructuralModel:
    start: date
    span_days: float
    base_level: float
    base_slope: float
    changepoints: tuple[tuple[date, float], ...]  # (date, slope delta)
    changepoints_t: tuple[float, ...]  # exact rescaled positions used in the fit
    fourier_blocks: tuple[FourierBlock, ...]
    holiday_effects: dict[str, float]
    holiday_dates: dict[str, frozenset[date]]
    residual_sigma: float


def _t_values(dates: list[date], start: date, span_days: float) -> np.ndarray:
    return np.array([(d - start).days for d in dates], dtype=np.float64) / span_days


def _design_matrix(
    dates: list[date],
    start: date,
    span_days: float,
    changepoints_t: tuple[float, ...],
    blocks: tuple[FourierBlock, ...],
    holiday_sets: list[tuple[str, frozenset[date]]],
) -> np.ndarray:
    t = _t_values(dates, start, span_days)
    cols = [np.ones_like(t), t]
    for s in changepoints_t:
        cols.append(np.maximum(0.0, t - s))
    days = t * span_days
    for block in blocks:
        for n in range(1, block.order + 1):
            angle = 2.0 * np.pi * n * days / block.period_days
            cols.append(np.cos(angle))
            cols.append(np.sin(angle))
    for _, dates_set in holiday_sets:
        cols.append(np.array([1.0 if d in dates_set else 0.0 for d in dates]))
    return np.column_stack(cols)


def fit_structural(series: TimeSeries, cfg: FitConfig) -> StructuralModel:
    dates = series.dates()
    y = series.values()
    n = len(dates)
    holiday_sets = sorted(cfg.holidays.items())
    blocks = tuple(
        FourierBlock(p, order)
        for p, order in [(cfg.seasonal_period, cfg.fourier_order), *cfg.extra_seasonalities]
        if order > 0
    )
    n_fourier = sum(2 * b.order for b in blocks)
    n_params = 2 + cfg.n_changepoints + n_fourier + len(holiday_sets)
    if n < 2 * (n_params):
        raise TooShort(f"need at least {2 * n_params} points to fit {n_params} coefficients, got {n}")

    start = dates[0]
    span_days = float((dates[-1] - start).days)
    if span_days <= 0:
        raise TooShort("series must span more than one date")

    if cfg.n_changepoints > 0:
        step = cfg.changepoint_range / cfg.n_changepoints
        changepoints_t = tuple(step * j for j in range(1, cfg.n_changepoints + 1))
    else:
        changepoints_t = ()

    X = _design_matrix(dates, start, span_days, changepoints_t, blocks, holiday_sets)

    if cfg.ridge_lambda > 0:
        penalty = np.zeros(X.shape[1])
        penalty[2 : 2 + len(changepoints_t)] = cfg.ridge_lambda
        lhs = X.T @ X + np.diag(penalty)
        rhs = X.T @ y
        try:
            beta = np.linalg.solve(lhs, rhs)
        except np.linalg.LinAlgError as exc:
            raise RankDeficient(f"normal equations singular despite ridge term: {exc}") from exc
    else:
        beta, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
        if rank < X.shape[1]:
            raise RankDeficient(
                f"design matrix rank {rank} < {X.shape[1]} columns and ridge_lambda = 0"
            )

    residuals = y - X @ beta
    sigma = float(np.std(residuals, ddof=1)) if n > 1 else 0.0

    pos = 2
    deltas = beta[pos : pos + len(changepoints_t)]
    pos += len(changepoints_t)
    fitted_blocks = []
    for block in blocks:
        coef = beta[pos : pos + 2 * block.order]
        pos += 2 * block.order
        fitted_blocks.append(
            FourierBlock(
                period_days=block.period_days,
                order=block.order,
                cos_coef=tuple(float(c) for c in coef[0::2]),
                sin_coef=tuple(float(c) for c in coef[1::2]),
            )
        )
    holiday_effects = {name: float(beta[pos + i]) for i, (name, _) in enumerate(holiday_sets)}

    changepoint_dates = tuple(
        (start + timedelta(days=round(s * span_days)), float(d))
        for s, d in zip(changepoints_t, deltas)
    )
    return StructuralModel(
        start=start,
        span_days=span_days,
        base_level=float(beta[0]),
        base_slope=float(beta[1]),
        changepoints=changepoint_dates,
        changepoints_t=changepoints_t,
        fourier_blocks=tuple(fitted_blocks),
        holiday_effects=holiday_effects,
        holiday_dates={name: dates_set for name, dates_set in holiday_sets},
        residual_sigma=sigma,
    )


def predict(model: StructuralModel, dates: list[date]) -> list[tuple[float, float, float]]:
    """(expected, lower_99, upper_99) per date; the interval has constant
    width 2 * Z_99 * sigma, and trend extrapolation continues the last
    segment beyond the training range."""
    holiday_sets = sorted(model.holiday_dates.items())
    X = _design_matrix(
        dates, model.start, model.span_days, model.changepoints_t, model.fourier_blocks, holiday_sets
    )
    beta = [model.base_level, model.base_slope]
    beta.extend(delta for _, delta in model.changepoints)
    for block in model.fourier_blocks:
        for a, b in zip(block.cos_coef, block.sin_coef):
            beta.extend((a, b))
    beta.extend(model.holiday_effects[name] for name, _ in holiday_sets)
    expected = X @ np.array(beta, dtype=np.float64)
    half = Z_99 * model.residual_sigma
    return [(float(e), float(e - half), float(e + half)) for e in expected]
