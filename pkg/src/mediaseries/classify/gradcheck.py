"""Numerical validation of backpropagation against central finite differences."""

from __future__ import annotations

import numpy as np

from .model import ConvTextModel, forward, forward_batch
from .train import backward_batch, bce_loss, loss_grad_logits, param_items


def analytic_gradients(model: ConvTextModel, ids: np.ndarray, targets: np.ndarray) -> dict[str, np.ndarray]:
    """Backprop gradients of bce_loss(forward(model, ids), targets)."""
    ids2 = np.asarray(ids, dtype=np.int64)[None, :]
    targets = np.asarray(targets, dtype=np.float64)
    probs, cache = forward_batch(model, ids2, return_cache=True)
    dlogits = loss_grad_logits(probs, targets[None, :]) / targets.shape[0]
    return backward_batch(model, cache, dlogits)


def numeric_gradients(model: ConvTextModel, ids: np.ndarray, targets: np.ndarray,
                      h: float = 1e-5) -> dict[str, np.ndarray]:
    """Central finite differences of the same loss, parameter by parameter.

    Embedding row 0 is the fixed padding vector, not a parameter; its entries
    are reported as zero without being perturbed.
    """
    grads: dict[str, np.ndarray] = {}
    for name, arr in param_items(model):
        g = np.zeros_like(arr)
        flat = arr.reshape(-1)
        gflat = g.reshape(-1)
        skip = model.embedding.shape[1] if name == "embedding" else 0
        for idx in range(skip, flat.size):
            orig = flat[idx]
            flat[idx] = orig + h
            up = bce_loss(forward(model, ids), targets)
            flat[idx] = orig - h
            down = bce_loss(forward(model, ids), targets)
            flat[idx] = orig
            gflat[idx] = (up - down) / (2.0 * h)
        grads[name] = g
    return grads


def max_relative_error(analytic: dict[str, np.ndarray], numeric: dict[str, np.ndarray]) -> float:
    worst = 0.0
    for name, ga in analytic.items():
        gn = numeric[name]
        denom = np.maximum(np.maximum(np.abs(ga), np.abs(gn)), 1e-8)
        worst = max(worst, float(np.max(np.abs(ga - gn) / denom)))
    return worst


def gradient_check(model: ConvTextModel, ids: np.ndarray, targets: np.ndarray,
                   h: float = 1e-5) -> float:
    """Max over parameters of |g_analytic - g_numeric| / max(|g_a|, |g_n|, 1e-8)."""
    ga = analytic_gradients(model, ids, targets)
    gn = numeric_gradients(model, ids, targets, h=h)
    return max_relative_error(ga, gn)
