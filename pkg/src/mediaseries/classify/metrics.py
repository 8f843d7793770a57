"""Prediction helpers and evaluation metrics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import EmptyDataset, NotBinaryModel
from .model import ConvTextModel, forward
from .train import bce_loss


@dataclass(frozen=True)
class Prediction:
    doc_id: str
    probabilities: np.ndarray


@dataclass(frozen=True)
class EvalMetrics:
    bce: float
    subset_accuracy: float
    precision: float
    recall: float


def predict_tags(model: ConvTextModel, ids: np.ndarray, threshold: float = 0.5) -> set[str]:
    """Tags whose probability is strictly greater than the threshold."""
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must be in (0, 1)")
    probs = forward(model, ids)
    return {name for name, p in zip(model.label_names, probs) if p > threshold}


def gbv_probability(model: ConvTextModel, ids: np.ndarray) -> float:
    """Scalar probability from the binary scorer."""
    if model.n_labels != 1:
        raise NotBinaryModel(f"expected a single-output model, got {model.n_labels} labels")
    return float(forward(model, ids)[0])


def evaluate(model: ConvTextModel, dataset: Sequence[tuple[np.ndarray, np.ndarray]],
             threshold: float = 0.5) -> EvalMetrics:
    """BCE, exact-match subset accuracy, and micro-averaged precision/recall.

    Precision with no predicted positives and recall with no actual positives
    both return 1.0 by convention, so a perfect all-negative run scores 1.
    """
    if not dataset:
        raise EmptyDataset("evaluation dataset is empty")
    total_bce = 0.0
    exact = 0
    tp = fp = fn = 0
    for ids, target in dataset:
        probs = forward(model, ids)
        target = np.asarray(target, dtype=np.float64)
        total_bce += bce_loss(probs, target)
        predicted = probs > threshold
        actual = target > 0.5
        if np.array_equal(predicted, actual):
            exact += 1
        tp += int(np.sum(predicted & actual))
        fp += int(np.sum(predicted & ~actual))
        fn += int(np.sum(~predicted & actual))
    n = len(dataset)
    precision = tp / (tp + fp) if (tp + fp) > 0 else 1.0
    recall = tp / (tp + fn) if (tp + fn) > 0 else 1.0
    return EvalMetrics(
        bce=total_bce / n,
        subset_accuracy=exact / n,
        precision=precision,
        recall=recall,
    )
