"""Thematic point clouds built from tagger probability vectors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..errors import EmptyInput
from ..classify.model import ConvTextModel, forward_batch


@dataclass(frozen=True)
class PointCloud:
    ids: tuple[str, ...]
    coords: np.ndarray  # (n, d)
    extra: dict[str, float]  # doc id -> scalar annotation (e.g. GBV probability)

    def __post_init__(self) -> None:
        if self.coords.shape[0] != len(self.ids):
            raise ValueError("coords row count must match ids")
        if not np.all(np.isfinite(self.coords)):
            raise ValueError("coordinates must be finite")

    def with_coords(self, coords: np.ndarray) -> "PointCloud":
        return PointCloud(ids=self.ids, coords=coords, extra=self.extra)


def tag_probability_cloud(
    tagger: ConvTextModel,
    docs: Sequence[tuple[str, np.ndarray]],
    gbv_probs: Mapping[str, float],
) -> PointCloud:
    """One row per document: the tagger's full per-label probability vector.

    ``gbv_probs`` supplies the scalar annotation carried alongside each point
    (missing ids default to 0).
    """
    if not docs:
        raise EmptyInput("no documents for the point cloud")
    ids_batch = np.stack([np.asarray(v, dtype=np.int64) for _, v in docs])
    coords = forward_batch(tagger, ids_batch)
    doc_ids = tuple(doc_id for doc_id, _ in docs)
    return PointCloud(
        ids=doc_ids,
        coords=coords,
        extra={doc_id: float(gbv_probs.get(doc_id, 0.0)) for doc_id in doc_ids},
    )


def select_high_gbv(gbv_probs: Mapping[str, float], threshold: float = 0.9999) -> list[str]:
    """Doc ids whose probability is strictly greater than the threshold."""
    return sorted(doc_id for doc_id, p in gbv_probs.items() if p > threshold)
