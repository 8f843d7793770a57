"""Mapper nerve graphs over a point cloud.

The lens value of every point is computed, the lens range is split into
``n_intervals`` equal-length intervals symmetrically widened so consecutive
intervals share ``overlap`` of their length, points in each interval's
preimage are clustered by single linkage at a fixed merge threshold, and two
clusters are connected exactly when they share points. Deterministic
tie-breaks: boundary points belong to every covering interval (intervals are
closed), and node ids follow (interval index, smallest member id).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from ..errors import BadCover, EmptyInput
from .cloud import PointCloud
from .pca import pca_fit, pca_transform


@dataclass(frozen=True)
class Cover:
    n_intervals: int = 10
    overlap: float = 0.35

    def __post_init__(self) -> None:
        if self.n_intervals < 1:
            raise BadCover("n_intervals must be >= 1")
        if not 0.0 < self.overlap < 1.0:
            raise BadCover("overlap must be strictly inside (0, 1)")


@dataclass(frozen=True)
class MapperNode:
    node_id: str
    members: tuple[str, ...]  # doc ids, sorted
    mean_gbv: float
    size: int
    color: float | None = None  # set by decorate()
    radius: float | None = None


@dataclass(frozen=True)
class MapperGraph:
    nodes: tuple[MapperNode, ...]
    edges: tuple[tuple[str, str, int], ...]  # (node_id, node_id, shared member count)

    def components(self) -> int:
        index = {n.node_id: i for i, n in enumerate(self.nodes)}
        parent = list(range(len(self.nodes)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for a, b, _ in self.edges:
            ra, rb = find(index[a]), find(index[b])
            if ra != rb:
                parent[ra] = rb
        return len({find(i) for i in range(len(self.nodes))})

    def first_betti(self) -> int:
        """Independent cycles: edges - nodes + connected components."""
        return len(self.edges) - len(self.nodes) + self.components()


def _lens_values(points: PointCloud, lens: int | str) -> np.ndarray:
    if isinstance(lens, int):
        if not 0 <= lens < points.coords.shape[1]:
            raise ValueError(f"lens coordinate {lens} out of range")
        return points.coords[:, lens].astype(np.float64)
    if lens == "pc1":
        if points.coords.shape[0] < 2:
            return points.coords[:, 0].astype(np.float64)
        model = pca_fit(points.coords, 1)
        return pca_transform(model, points.coords)[:, 0]
    raise ValueError(f"unknown lens {lens!r}")


def _intervals(lo: float, hi: float, cover: Cover) -> list[tuple[float, float]]:
    length = (hi - lo) / cover.n_intervals
    if length == 0.0:
        # all lens values identical: one degenerate closed interval suffices
        return [(lo, hi)] * cover.n_intervals
    widen = cover.overlap * length / (2.0 * (1.0 - cover.overlap))
    return [
        (lo + i * length - widen, lo + (i + 1) * length + widen)
        for i in range(cover.n_intervals)
    ]


def _single_linkage(coords: np.ndarray, eps: float) -> list[list[int]]:
    """Connected components of the graph linking points at distance <= eps."""
    m = coords.shape[0]
    parent = list(range(m))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    diffs = coords[:, None, :] - coords[None, :, :]
    dists = np.sqrt(np.sum(diffs * diffs, axis=2))
    for i in range(m):
        for j in range(i + 1, m):
            if dists[i, j] <= eps:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    clusters: dict[int, list[int]] = {}
    for i in range(m):
        clusters.setdefault(find(i), []).append(i)
    return list(clusters.values())


def _default_eps(coords: np.ndarray) -> float:
    m = coords.shape[0]
    if m < 2:
        return 0.0
    diffs = coords[:, None, :] - coords[None, :, :]
    dists = np.sqrt(np.sum(diffs * diffs, axis=2))
    upper = dists[np.triu_indices(m, k=1)]
    return float(np.median(upper) / 2.0)


def mapper(
    points: PointCloud,
    lens: int | str = "pc1",
    cover: Cover = Cover(),
    cluster_eps: float | None = None,
) -> MapperGraph:
    if len(points.ids) == 0:
        raise EmptyInput("no points for mapper")
    values = _lens_values(points, lens)
    intervals = _intervals(float(values.min()), float(values.max()), cover)

    nodes: list[MapperNode] = []
    raw_members: list[set[str]] = []
    for interval_index, (lo, hi) in enumerate(intervals):
        selector = np.flatnonzero((values >= lo) & (values <= hi))
        if interval_index > 0 and intervals[interval_index] == intervals[interval_index - 1]:
            continue  # degenerate duplicated interval
        if selector.size == 0:
            continue
        bin_coords = points.coords[selector]
        eps = _default_eps(bin_coords) if cluster_eps is None else cluster_eps
        clusters = _single_linkage(bin_coords, eps)
        cluster_members = [
            sorted(points.ids[selector[i]] for i in cluster) for cluster in clusters
        ]
        cluster_members.sort(key=lambda ms: ms[0])
        for members in cluster_members:
            node_id = f"n{len(nodes)}"
            gbv_values = [points.extra.get(doc_id, 0.0) for doc_id in members]
            nodes.append(
                MapperNode(
                    node_id=node_id,
                    members=tuple(members),
                    mean_gbv=float(np.mean(gbv_values)),
                    size=len(members),
                )
            )
            raw_members.append(set(members))

    edges = []
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            shared = len(raw_members[i] & raw_members[j])
            if shared >= 1:
                edges.append((nodes[i].node_id, nodes[j].node_id, shared))
    return MapperGraph(nodes=tuple(nodes), edges=tuple(edges))


def decorate(graph: MapperGraph) -> MapperGraph:
    """Attach render hints: color = min-max normalized mean_gbv (0 when all
    nodes share one value), radius proportional to sqrt(size). Membership is
    untouched."""
    if not graph.nodes:
        return graph
    gbv = [n.mean_gbv for n in graph.nodes]
    lo, hi = min(gbv), max(gbv)
    span = hi - lo
    decorated = tuple(
        replace(
            node,
            color=0.0 if span == 0.0 else (node.mean_gbv - lo) / span,
            radius=float(np.sqrt(node.size)),
        )
        for node in graph.nodes
    )
    return MapperGraph(nodes=decorated, edges=graph.edges)
