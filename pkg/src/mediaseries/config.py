"""Run configuration: JSON file + dotted-name command-line overrides.

A run is described by one JSON document; every field can be overridden on
the command line with a flag of the same dotted name (``--train.epochs 30``).
Relative input paths are resolved against the config file's directory;
the output path is resolved against the working directory.
"""

from __future__ import annotations

import copy
import json
import os
from pathlib import Path
from typing import Any

from .errors import ConfigInvalid

ENV_CONFIG = "MEDIASERIES_CONFIG"

DEFAULTS: dict[str, Any] = {
    "seed": 1234,
    "jobs": 1,
    "paths": {
        "corpus": None,
        "html_dir": None,
        "stopwords": None,
        "survey": None,
        "holidays": None,
        "output": "out",
    },
    "corpus": {
        "max_sequence_length": 512,
        "max_vocab": 50000,
        "min_df": 1,
        "min_tag_df": 1,
        "include_title": True,
    },
    "model": {
        "embedding_dim": 64,
        "kernel_width": 5,
        "nn1_channels": [128, 128],
        "nn2_channels": [64, 128, 128, 128],
        "nn2_pool_after": [2, 4],
    },
    "train": {
        "learning_rate": 0.005,
        "epochs": 50,
        "batch_size": 32,
        "optimizer": "adam",
    },
    "thresholds": {"tag": 0.5, "gbv_select": 0.9999},
    "gbv_tags": ["violencia-genero", "violencia machista", "agresion sexual", "abusos sexuales"],
    "series": {"granularity": "daily", "decompose_period": 12, "trend_ratio_window": 36},
    "structural": {
        "n_changepoints": 25,
        "changepoint_range": 0.8,
        "fourier_order": 10,
        "seasonal_period": 365.25,
        "weekly_order": 0,
        "ridge_lambda": 0.001,
    },
    "ccf": {"max_lag": 12, "granularity": "monthly"},
    "mapper": {
        "year": None,
        "gbv_only": True,
        "pca_dim": 3,
        "n_intervals": 10,
        "overlap": 0.35,
        "cluster_eps": None,
        "lens": "pc1",
    },
    "report": {"years": None, "heatmap_scale": "global", "top_n_tags": 20},
}

_PATH_KEYS = ("corpus", "html_dir", "stopwords", "survey", "holidays")


def _deep_merge(base: dict, override: dict, prefix: str = "") -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        dotted = f"{prefix}{key}"
        if key not in out:
            raise ConfigInvalid(f"unknown config field {dotted!r}")
        if isinstance(out[key], dict) and isinstance(value, dict):
            out[key] = _deep_merge(out[key], value, prefix=dotted + ".")
        else:
            out[key] = copy.deepcopy(value)
    return out


def parse_overrides(tokens: list[str]) -> dict[str, Any]:
    """Parse ``--dotted.name value`` / ``--dotted.name=value`` pairs.

    Values are JSON-decoded when possible (so ``30`` is an int, ``null`` is
    None, ``[2,4]`` a list) and kept as strings otherwise.
    """
    flat: dict[str, Any] = {}
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if not token.startswith("--"):
            raise ConfigInvalid(f"unexpected argument {token!r}")
        body = token[2:]
        if "=" in body:
            name, raw = body.split("=", 1)
            i += 1
        else:
            name = body
            if i + 1 >= len(tokens):
                raise ConfigInvalid(f"flag --{name} needs a value")
            raw = tokens[i + 1]
            i += 2
        try:
            flat[name] = json.loads(raw)
        except json.JSONDecodeError:
            flat[name] = raw
    nested: dict[str, Any] = {}
    for dotted, value in flat.items():
        node = nested
        parts = dotted.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigInvalid(f"override {dotted!r} conflicts with an earlier flag")
        node[parts[-1]] = value
    return nested


def load_config(path: str | None, overrides: dict[str, Any] | None = None) -> dict[str, Any]:
    if path is None:
        path = os.environ.get(ENV_CONFIG)
    cfg = copy.deepcopy(DEFAULTS)
    base_dir = Path.cwd()
    if path is not None:
        p = Path(path)
        if not p.exists():
            raise ConfigInvalid(f"config file not found: {p}")
        try:
            user = json.loads(p.read_text("utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigInvalid(f"config is not valid JSON: {exc}") from exc
        if not isinstance(user, dict):
            raise ConfigInvalid("config root must be a JSON object")
        cfg = _deep_merge(cfg, user)
        base_dir = p.parent
    if overrides:
        cfg = _deep_merge(cfg, overrides)
    for key in _PATH_KEYS:
        value = cfg["paths"].get(key)
        if value is not None:
            cfg["paths"][key] = str((base_dir / value).resolve()) if not Path(value).is_absolute() else value
    validate_config(cfg)
    return cfg


def validate_config(cfg: dict[str, Any]) -> None:
    for name in ("tag", "gbv_select"):
        t = cfg["thresholds"][name]
        if not (isinstance(t, (int, float)) and 0.0 < t < 1.0):
            raise ConfigInvalid(f"thresholds.{name} must be strictly inside (0, 1), got {t!r}")
    if cfg["jobs"] < 1:
        raise ConfigInvalid("jobs must be >= 1")
    if cfg["series"]["granularity"] not in ("daily", "monthly"):
        raise ConfigInvalid("series.granularity must be 'daily' or 'monthly'")
    if cfg["ccf"]["granularity"] not in ("daily", "monthly"):
        raise ConfigInvalid("ccf.granularity must be 'daily' or 'monthly'")
    if cfg["report"]["heatmap_scale"] not in ("global", "per-year"):
        raise ConfigInvalid("report.heatmap_scale must be 'global' or 'per-year'")
    if cfg["train"]["optimizer"] not in ("adam", "sgd"):
        raise ConfigInvalid("train.optimizer must be 'adam' or 'sgd'")
    if len(cfg["model"]["nn1_channels"]) != 2:
        raise ConfigInvalid("model.nn1_channels must list exactly two convolution widths")
    if len(cfg["model"]["nn2_channels"]) != 4:
        raise ConfigInvalid("model.nn2_channels must list exactly four convolution widths")


def require_input(cfg: dict[str, Any], key: str, purpose: str) -> str:
    value = cfg["paths"].get(key)
    if not value:
        raise ConfigInvalid(f"paths.{key} is required for {purpose}")
    if not Path(value).exists():
        raise ConfigInvalid(f"paths.{key} does not exist: {value}")
    return value
