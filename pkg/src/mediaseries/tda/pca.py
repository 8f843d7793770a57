"""Principal component analysis via mean-centered SVD."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateInput, ShapeMismatch


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray  # (d,)
    components: np.ndarray  # (k, d), rows orthonormal
    explained_variance: np.ndarray  # (k,), nonincreasing


def pca_fit(coords: np.ndarray, k: int) -> PcaModel:
    """Top-k principal directions of a point cloud.

    Sign convention: the largest-magnitude entry of each component is made
    positive, so the decomposition is reproducible across runs.
    """
    x = np.asarray(coords, dtype=np.float64)
    n, d = x.shape
    if n < 2:
        raise ValueError("need at least two points")
    if not 1 <= k <= min(n - 1, d):
        raise ValueError(f"k must be in [1, min(n-1, d)] = [1, {min(n - 1, d)}]")
    mean = x.mean(axis=0)
    centered = x - mean
    if not np.any(centered):
        raise DegenerateInput("all points identical")
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    components = vt[:k].copy()
    for row in components:
        pivot = np.argmax(np.abs(row))
        if row[pivot] < 0:
            row *= -1.0
    explained = (s[:k] ** 2) / (n - 1)
    return PcaModel(mean=mean, components=components, explained_variance=explained)


def pca_transform(model: PcaModel, coords: np.ndarray) -> np.ndarray:
    x = np.asarray(coords, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != model.mean.shape[0]:
        raise ShapeMismatch(f"expected (n, {model.mean.shape[0]}) coordinates, got {x.shape}")
    return (x - model.mean) @ model.components.T


def pca_inverse(model: PcaModel, reduced: np.ndarray) -> np.ndarray:
    """Map reduced coordinates back: the orthogonal projection onto the
    component span, offset by the mean."""
    return model.mean + np.asarray(reduced, dtype=np.float64) @ model.components
