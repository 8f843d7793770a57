"""Convolutional text classifier: architecture, forward pass, serialization.

One model class serves both classifier shapes:

* tagger (NN1): embedding, two 1-D convolutions, one pooling, dense sigmoid
  head with one output per tag;
* binary scorer (NN2): embedding, four 1-D convolutions, two poolings after
  the second and fourth convolution, dense sigmoid head with one output.

Convolutions use same-padding and ReLU; ``pool_after`` lists the (1-based)
convolution indices followed by a width-2/stride-2 max-pool over time, and a
global max-pool over time always precedes the dense layer. All arithmetic is
64-bit; embedding row 0 is the padding vector, fixed at zero.
"""

from __future__ import annotations

import base64
import json
from copy import deepcopy
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import ShapeMismatch

MODEL_FORMAT_VERSION = "mediaseries-model/1"


@dataclass
class ConvLayer:
    kernel_width: int
    in_channels: int
    out_channels: int
    weights: np.ndarray  # (kernel_width, in_channels, out_channels)
    bias: np.ndarray  # (out_channels,)


@dataclass
class ConvTextModel:
    embedding: np.ndarray  # (vocab_rows, dim), row 0 all zeros
    conv_layers: list[ConvLayer]
    pool_after: tuple[int, ...]
    dense_weights: np.ndarray  # (features, n_labels)
    dense_bias: np.ndarray  # (n_labels,)
    label_names: tuple[str, ...]
    sequence_length: int

    @property
    def n_labels(self) -> int:
        return len(self.label_names)

    def validate(self) -> None:
        rows, dim = self.embedding.shape
        if not np.all(self.embedding[0] == 0.0):
            raise ValueError("embedding row 0 (padding) must be all zeros")
        channels = dim
        for i, layer in enumerate(self.conv_layers, start=1):
            if layer.kernel_width % 2 != 1 or layer.kernel_width < 1:
                raise ValueError(f"conv {i}: kernel width must be odd and positive")
            if layer.in_channels != channels:
                raise ValueError(f"conv {i}: expected {channels} input channels, got {layer.in_channels}")
            if layer.weights.shape != (layer.kernel_width, layer.in_channels, layer.out_channels):
                raise ValueError(f"conv {i}: weight shape mismatch")
            channels = layer.out_channels
        if self.dense_weights.shape != (channels, self.n_labels):
            raise ValueError("dense weight shape does not chain from the conv stack")
        if self.dense_bias.shape != (self.n_labels,):
            raise ValueError("dense bias shape mismatch")
        if self.n_labels < 1:
            raise ValueError("model needs at least one output label")
        for p in self.pool_after:
            if not 1 <= p <= len(self.conv_layers):
                raise ValueError(f"pool position {p} outside conv stack")

    def copy(self) -> "ConvTextModel":
        return deepcopy(self)


def _glorot(rng: np.random.Generator, shape: tuple[int, ...], fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def init_model(
    n_embeddings: int,
    sequence_length: int,
    label_names: tuple[str, ...] | list[str],
    embedding_dim: int = 64,
    channels: tuple[int, ...] = (128, 128),
    kernel_width: int = 5,
    pool_after: tuple[int, ...] = (),
    seed: int = 0,
) -> ConvTextModel:
    """Seeded uniform +-sqrt(6/(fan_in+fan_out)) initialization.

    Biases are drawn from the same envelope as their layer's weights so that
    pre-activations sit away from the ReLU kink even on all-padding input.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    emb = _glorot(rng, (n_embeddings, embedding_dim), n_embeddings, embedding_dim)
    emb[0] = 0.0
    layers = []
    c_in = embedding_dim
    for c_out in channels:
        fan_in, fan_out = kernel_width * c_in, kernel_width * c_out
        layers.append(
            ConvLayer(
                kernel_width=kernel_width,
                in_channels=c_in,
                out_channels=c_out,
                weights=_glorot(rng, (kernel_width, c_in, c_out), fan_in, fan_out),
                bias=_glorot(rng, (c_out,), fan_in, fan_out),
            )
        )
        c_in = c_out
    dense_w = _glorot(rng, (c_in, len(label_names)), c_in, len(label_names))
    dense_b = _glorot(rng, (len(label_names),), c_in, len(label_names))
    model = ConvTextModel(
        embedding=emb,
        conv_layers=layers,
        pool_after=tuple(pool_after),
        dense_weights=dense_w,
        dense_bias=dense_b,
        label_names=tuple(label_names),
        sequence_length=sequence_length,
    )
    model.validate()
    return model


def nn1_model(n_embeddings: int, sequence_length: int, label_names, *, embedding_dim: int = 64,
              channels: tuple[int, ...] = (128, 128), kernel_width: int = 5, seed: int = 0) -> ConvTextModel:
    """Tagger shape: two convolutions, global pooling only."""
    return init_model(n_embeddings, sequence_length, label_names, embedding_dim,
                      channels, kernel_width, pool_after=(), seed=seed)


def nn2_model(n_embeddings: int, sequence_length: int, *, embedding_dim: int = 64,
              channels: tuple[int, ...] = (64, 128, 128, 128), kernel_width: int = 5,
              pool_after: tuple[int, ...] = (2, 4), label_name: str = "gbv", seed: int = 0) -> ConvTextModel:
    """Binary scorer shape: four convolutions, pools after the 2nd and 4th."""
    return init_model(n_embeddings, sequence_length, (label_name,), embedding_dim,
                      channels, kernel_width, pool_after=pool_after, seed=seed)


def sigmoid(x: np.ndarray) -> np.ndarray:
    """Numerically stable sigmoid, clamped into the open interval (0, 1) so
    saturated logits cannot round to an exact 0 or 1 in float64."""
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return np.clip(out, np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0))


def _conv_cols(x: np.ndarray, kernel_width: int) -> np.ndarray:
    """im2col for same-padded 1-D convolution: (B,S,C) -> (B,S,k*C)."""
    b, s, c = x.shape
    half = kernel_width // 2
    xp = np.zeros((b, s + kernel_width - 1, c), dtype=x.dtype)
    xp[:, half : half + s] = x
    windows = np.lib.stride_tricks.sliding_window_view(xp, kernel_width, axis=1)
    # windows: (B, S, C, k) -> (B, S, k, C)
    return np.ascontiguousarray(windows.transpose(0, 1, 3, 2)).reshape(b, s, kernel_width * c)


def _maxpool2(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Width-2 stride-2 max-pool over time (ceil mode). Returns output and
    a boolean mask marking whether the first element of each window won."""
    b, s, c = x.shape
    if s % 2 == 1:
        pad = np.full((b, 1, c), -np.inf, dtype=x.dtype)
        x = np.concatenate([x, pad], axis=1)
    first, second = x[:, 0::2], x[:, 1::2]
    take_first = first >= second
    return np.where(take_first, first, second), take_first


def forward_batch(model: ConvTextModel, ids: np.ndarray, return_cache: bool = False):
    """Forward pass over a batch of id sequences (B, S) -> probabilities (B, L)."""
    if ids.ndim != 2 or ids.shape[1] != model.sequence_length:
        raise ShapeMismatch(
            f"expected id sequences of length {model.sequence_length}, got shape {ids.shape}"
        )
    cache: dict = {"ids": ids, "conv": []}
    x = model.embedding[ids]
    for i, layer in enumerate(model.conv_layers, start=1):
        cols = _conv_cols(x, layer.kernel_width)
        pre = cols @ layer.weights.reshape(-1, layer.out_channels) + layer.bias
        act = np.maximum(pre, 0.0)
        pool_mask = None
        pooled = act
        if i in model.pool_after:
            pooled, pool_mask = _maxpool2(act)
        cache["conv"].append(
            {"in_len": x.shape[1], "cols": cols, "pre": pre, "act": act, "pool_mask": pool_mask}
        )
        x = pooled
    cache["last"] = x
    argmax = np.argmax(x, axis=1)  # (B, C): first max wins
    feats = np.take_along_axis(x, argmax[:, None, :], axis=1)[:, 0, :]
    cache["argmax"] = argmax
    cache["feats"] = feats
    logits = feats @ model.dense_weights + model.dense_bias
    probs = sigmoid(logits)
    if return_cache:
        cache["probs"] = probs
        return probs, cache
    return probs


def forward(model: ConvTextModel, ids: np.ndarray) -> np.ndarray:
    """Probability vector (length = number of labels) for one id sequence."""
    ids = np.asarray(ids, dtype=np.int64)
    if ids.ndim != 1:
        raise ShapeMismatch(f"expected a 1-D id sequence, got shape {ids.shape}")
    return forward_batch(model, ids[None, :])[0]


def _encode(arr: np.ndarray) -> str:
    return base64.b64encode(np.ascontiguousarray(arr, dtype="<f8").tobytes()).decode("ascii")


def _decode(blob: str, shape: tuple[int, ...]) -> np.ndarray:
    data = np.frombuffer(base64.b64decode(blob), dtype="<f8")
    return data.reshape(shape).astype(np.float64)


def model_to_json(model: ConvTextModel) -> str:
    payload = {
        "version": MODEL_FORMAT_VERSION,
        "sequence_length": model.sequence_length,
        "label_names": list(model.label_names),
        "pool_after": list(model.pool_after),
        "embedding": {"shape": list(model.embedding.shape), "data": _encode(model.embedding)},
        "conv_layers": [
            {
                "kernel_width": l.kernel_width,
                "in_channels": l.in_channels,
                "out_channels": l.out_channels,
                "weights": _encode(l.weights),
                "bias": _encode(l.bias),
            }
            for l in model.conv_layers
        ],
        "dense": {
            "shape": list(model.dense_weights.shape),
            "weights": _encode(model.dense_weights),
            "bias": _encode(model.dense_bias),
        },
    }
    return json.dumps(payload)


def model_from_json(text: str) -> ConvTextModel:
    obj = json.loads(text)
    if obj.get("version") != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format: {obj.get('version')!r}")
    emb = _decode(obj["embedding"]["data"], tuple(obj["embedding"]["shape"]))
    layers = []
    for l in obj["conv_layers"]:
        k, ci, co = l["kernel_width"], l["in_channels"], l["out_channels"]
        layers.append(
            ConvLayer(
                kernel_width=k,
                in_channels=ci,
                out_channels=co,
                weights=_decode(l["weights"], (k, ci, co)),
                bias=_decode(l["bias"], (co,)),
            )
        )
    dense_shape = tuple(obj["dense"]["shape"])
    model = ConvTextModel(
        embedding=emb,
        conv_layers=layers,
        pool_after=tuple(obj["pool_after"]),
        dense_weights=_decode(obj["dense"]["weights"], dense_shape),
        dense_bias=_decode(obj["dense"]["bias"], (dense_shape[1],)),
        label_names=tuple(obj["label_names"]),
        sequence_length=int(obj["sequence_length"]),
    )
    model.validate()
    return model


def save_model(path: str | Path, model: ConvTextModel) -> None:
    Path(path).write_text(model_to_json(model) + "\n", "utf-8")


def load_model(path: str | Path) -> ConvTextModel:
    return model_from_json(Path(path).read_text("utf-8"))
