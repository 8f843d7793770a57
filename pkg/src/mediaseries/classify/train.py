"""Binary-cross-entropy training loop with exact backpropagation.

Determinism contract: identical seed + data + config produce bit-identical
loss histories. Within a batch the examples are reduced in a canonical order
(sorted by their byte representation), so with batch_size == dataset size a
permutation of the input leaves the history bit-identical.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from ..errors import EmptyDataset, LengthMismatch, ShapeMismatch
from .model import ConvTextModel, forward_batch

EPS = 1e-12


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.005
    epochs: int = 50
    batch_size: int = 32
    seed: int = 0
    optimizer: str = "adam"  # "adam" or "sgd"

    def __post_init__(self) -> None:
        if self.learning_rate < 0:
            raise ValueError("learning_rate must be >= 0")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.optimizer not in ("adam", "sgd"):
            raise ValueError(f"unknown optimizer {self.optimizer!r}")


def bce_loss(probabilities: np.ndarray, targets: np.ndarray) -> float:
    """Mean over labels of -[t*ln(p) + (1-t)*ln(1-p)], p clamped to [eps, 1-eps]."""
    p = np.asarray(probabilities, dtype=np.float64)
    t = np.asarray(targets, dtype=np.float64)
    if p.shape != t.shape:
        raise LengthMismatch(f"probabilities {p.shape} vs targets {t.shape}")
    pc = np.clip(p, EPS, 1.0 - EPS)
    return float(np.mean(-(t * np.log(pc) + (1.0 - t) * np.log1p(-pc))))


def _batch_losses(probs: np.ndarray, targets: np.ndarray) -> np.ndarray:
    pc = np.clip(probs, EPS, 1.0 - EPS)
    return -(targets * np.log(pc) + (1.0 - targets) * np.log1p(-pc)).mean(axis=1)


def param_items(model: ConvTextModel) -> list[tuple[str, np.ndarray]]:
    """Named parameter tensors, in a fixed order. Embedding row 0 is listed
    with the tensor but is never updated (its gradient is defined as zero)."""
    items: list[tuple[str, np.ndarray]] = [("embedding", model.embedding)]
    for i, layer in enumerate(model.conv_layers, start=1):
        items.append((f"conv{i}.weights", layer.weights))
        items.append((f"conv{i}.bias", layer.bias))
    items.append(("dense.weights", model.dense_weights))
    items.append(("dense.bias", model.dense_bias))
    return items


def loss_grad_logits(probs: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """d(mean-over-labels BCE)/d(logit) per example: (p - t), zero where the
    probability clamp is active (the clamped loss is flat there)."""
    active = (probs > EPS) & (probs < 1.0 - EPS)
    return np.where(active, probs - targets, 0.0)


def backward_batch(model: ConvTextModel, cache: dict, dlogits: np.ndarray) -> dict[str, np.ndarray]:
    """Gradients of the summed per-example objective w.r.t. every parameter.

    ``dlogits`` carries whatever scaling the caller wants (e.g. 1/(B*L) for
    a batch-mean loss).
    """
    grads: dict[str, np.ndarray] = {}
    feats = cache["feats"]
    grads["dense.weights"] = feats.T @ dlogits
    grads["dense.bias"] = dlogits.sum(axis=0)

    dfeats = dlogits @ model.dense_weights.T
    last = cache["last"]
    dx = np.zeros_like(last)
    np.put_along_axis(dx, cache["argmax"][:, None, :], dfeats[:, None, :], axis=1)

    for i in range(len(model.conv_layers), 0, -1):
        layer = model.conv_layers[i - 1]
        lc = cache["conv"][i - 1]
        if lc["pool_mask"] is not None:
            act = lc["act"]
            b, s, c = act.shape
            dact = np.zeros_like(act)
            dact[:, 0::2] += np.where(lc["pool_mask"], dx, 0.0)
            second = np.where(~lc["pool_mask"], dx, 0.0)
            dact[:, 1::2] += second[:, : s // 2]
            dx = dact
        dpre = dx * (lc["pre"] > 0.0)
        cols = lc["cols"]
        w2d = layer.weights.reshape(-1, layer.out_channels)
        grads[f"conv{i}.weights"] = np.einsum("bsi,bso->io", cols, dpre).reshape(layer.weights.shape)
        grads[f"conv{i}.bias"] = dpre.sum(axis=(0, 1))
        dcols = (dpre @ w2d.T).reshape(dpre.shape[0], dpre.shape[1], layer.kernel_width, layer.in_channels)
        s_in = lc["in_len"]
        half = layer.kernel_width // 2
        dxp = np.zeros((dpre.shape[0], s_in + layer.kernel_width - 1, layer.in_channels))
        for j in range(layer.kernel_width):
            dxp[:, j : j + dpre.shape[1]] += dcols[:, :, j]
        dx = dxp[:, half : half + s_in]

    demb = np.zeros_like(model.embedding)
    np.add.at(demb, cache["ids"], dx)
    demb[0] = 0.0
    grads["embedding"] = demb
    return grads


class _Optimizer:
    def __init__(self, model: ConvTextModel, config: TrainConfig) -> None:
        self.lr = config.learning_rate
        self.kind = config.optimizer
        self.params = param_items(model)
        if self.kind == "adam":
            self.beta1, self.beta2, self.eps = 0.9, 0.999, 1e-8
            self.t = 0
            self.m = {name: np.zeros_like(arr) for name, arr in self.params}
            self.v = {name: np.zeros_like(arr) for name, arr in self.params}

    def step(self, grads: dict[str, np.ndarray]) -> None:
        if self.kind == "sgd":
            for name, arr in self.params:
                arr -= self.lr * grads[name]
        else:
            self.t += 1
            c1 = 1.0 - self.beta1**self.t
            c2 = 1.0 - self.beta2**self.t
            for name, arr in self.params:
                g = grads[name]
                m = self.m[name]
                v = self.v[name]
                m *= self.beta1
                m += (1.0 - self.beta1) * g
                v *= self.beta2
                v += (1.0 - self.beta2) * np.square(g)
                arr -= self.lr * (m / c1) / (np.sqrt(v / c2) + self.eps)


def _canonical_batch_order(ids: np.ndarray, targets: np.ndarray, batch: np.ndarray) -> np.ndarray:
    keys = [(ids[i].tobytes(), targets[i].tobytes()) for i in batch]
    return batch[sorted(range(len(batch)), key=keys.__getitem__)]


def train(
    model: ConvTextModel,
    dataset: Sequence[tuple[np.ndarray, np.ndarray]],
    config: TrainConfig,
) -> tuple[ConvTextModel, list[float]]:
    """Mini-batch gradient descent on the BCE loss.

    Returns a trained copy of the model (the input is left untouched) and the
    per-epoch mean training loss, one entry per epoch.
    """
    if not dataset:
        raise EmptyDataset("training dataset is empty")
    n = len(dataset)
    ids = np.stack([np.asarray(x, dtype=np.int64) for x, _ in dataset])
    targets = np.stack([np.asarray(t, dtype=np.float64) for _, t in dataset])
    if ids.shape[1] != model.sequence_length:
        raise ShapeMismatch(f"id sequences must have length {model.sequence_length}")
    if targets.shape[1] != model.n_labels:
        raise LengthMismatch(f"targets must have length {model.n_labels}")

    trained = model.copy()
    optimizer = _Optimizer(trained, config)
    rng = np.random.Generator(np.random.PCG64(config.seed))
    n_labels = trained.n_labels
    history: list[float] = []

    for _ in range(config.epochs):
        perm = rng.permutation(n)
        epoch_loss = 0.0
        for start in range(0, n, config.batch_size):
            batch = _canonical_batch_order(ids, targets, perm[start : start + config.batch_size])
            b_ids, b_targets = ids[batch], targets[batch]
            probs, cache = forward_batch(trained, b_ids, return_cache=True)
            epoch_loss += float(_batch_losses(probs, b_targets).sum())
            dlogits = loss_grad_logits(probs, b_targets) / (len(batch) * n_labels)
            grads = backward_batch(trained, cache, dlogits)
            optimizer.step(grads)
            trained.embedding[0] = 0.0
        history.append(epoch_loss / n)
    return trained, history


def write_history_csv(path: str | Path, history: Sequence[float]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["epoch", "loss"])
        for i, loss in enumerate(history, start=1):
            writer.writerow([i, repr(float(loss))])
