from .anomalies import AnomalyReport, AnomalyRow, detect_anomalies
from .ccf import CcfResult, ccf
from .decompose import Decomposition, decompose_ma, trend_ratio
from .series import (
    DAILY,
    MONTHLY,
    TimeSeries,
    aggregate,
    align,
    read_series_csv,
    write_series_csv,
)
from .structural import (
    Z_99,
    FitConfig,
    FourierBlock,
    StructuralModel,
    fit_structural,
    load_holidays,
    predict,
)

__all__ = [
    "TimeSeries",
    "DAILY",
    "MONTHLY",
    "aggregate",
    "align",
    "read_series_csv",
    "write_series_csv",
    "Decomposition",
    "decompose_ma",
    "trend_ratio",
    "CcfResult",
    "ccf",
    "FitConfig",
    "FourierBlock",
    "StructuralModel",
    "fit_structural",
    "predict",
    "Z_99",
    "AnomalyRow",
    "AnomalyReport",
    "detect_anomalies",
]
