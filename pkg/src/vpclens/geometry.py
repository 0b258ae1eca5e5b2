"""Cluster separability of labeled point clouds.

The discrimination value computed here compares mean within-class
distances against mean between-class distances on per-dimension
half-z-scored data, normalized by 1/sqrt(D). Zero means no separation;
more negative means stronger separation. Z-scoring makes the value
invariant under global scaling and shifting, the Euclidean metric makes
it invariant under coordinate permutation, and the 1/sqrt(D) factor
makes it invariant under dimension duplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .errors import DegenerateDataError


@dataclass(frozen=True)
class LabeledCloud:
    """N points in D dimensions with one class label per point."""

    points: np.ndarray
    labels: tuple[Hashable, ...]

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError("points must be a 2-D array")
        if pts.shape[0] != len(self.labels):
            raise ValueError("one label per point required")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", tuple(self.labels))


@dataclass(frozen=True)
class RescaledCloud:
    """Half-z-scored points plus the per-dimension moments used."""

    points: np.ndarray
    mean: np.ndarray
    std: np.ndarray


@dataclass(frozen=True)
class SeparabilityReport:
    """Per-class and per-pair mean distances and the resulting scalar."""

    intra: dict
    inter: dict
    gdv: float


def rescale_half_zscore(points: np.ndarray) -> RescaledCloud:
    """Z-score each dimension with the population standard deviation, then halve.

    Dimensions with zero spread are mapped to all-zero columns; they
    contribute nothing to any distance but still count toward D.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2:
        raise ValueError("points must be a 2-D array")
    if pts.shape[0] < 2:
        raise ValueError("need at least two points")
    mean = pts.mean(axis=0)
    std = pts.std(axis=0)
    scaled = np.zeros_like(pts)
    live = std > 0.0
    scaled[:, live] = 0.5 * (pts[:, live] - mean[live]) / std[live]
    return RescaledCloud(scaled, mean, std)


def _cross_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Euclidean distances between every row of a and every row of b."""
    sq = (
        np.sum(a * a, axis=1)[:, None]
        + np.sum(b * b, axis=1)[None, :]
        - 2.0 * (a @ b.T)
    )
    np.maximum(sq, 0.0, out=sq)
    return np.sqrt(sq)


def mean_intra_class(points: np.ndarray) -> float:
    """Mean Euclidean distance over the unordered pairs within one class."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise DegenerateDataError("intra-class distance needs at least two points")
    dist = _cross_distances(pts, pts)
    iu = np.triu_indices(pts.shape[0], k=1)
    return float(dist[iu].mean())


def mean_inter_class(points_l: np.ndarray, points_m: np.ndarray) -> float:
    """Mean Euclidean distance over all cross pairs of two classes."""
    a = np.asarray(points_l, dtype=np.float64)
    b = np.asarray(points_m, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[0] == 0 or b.shape[0] == 0:
        raise DegenerateDataError("inter-class distance needs two nonempty classes")
    return float(_cross_distances(a, b).mean())


def gdv(points: np.ndarray, labels: Sequence[Hashable]) -> SeparabilityReport:
    """Generalized discrimination value of a labeled cloud.

    Rescales via :func:`rescale_half_zscore`, averages the per-class
    intra distances and the per-pair inter distances, and returns
    (mean_intra - mean_inter) / sqrt(D) together with every
    intermediate mean.

    Raises :class:`DegenerateDataError` when fewer than two classes are
    present or any class has fewer than two members; silently dropping a
    class would invisibly change the inter-class average.
    """
    pts = np.asarray(points, dtype=np.float64)
    labels = list(labels)
    if pts.ndim != 2:
        raise ValueError("points must be a 2-D array")
    if pts.shape[0] != len(labels):
        raise ValueError("one label per point required")

    classes = list(dict.fromkeys(labels))
    if len(classes) < 2:
        raise DegenerateDataError(f"need at least two classes, got {len(classes)}")
    counts = {c: labels.count(c) for c in classes}
    degenerate = [c for c in classes if counts[c] < 2]
    if degenerate:
        raise DegenerateDataError(
            "classes with fewer than two members: " + ", ".join(map(str, degenerate))
        )

    rescaled = rescale_half_zscore(pts).points
    idx = {c: [i for i, l in enumerate(labels) if l == c] for c in classes}
    groups = {c: rescaled[idx[c]] for c in classes}

    intra = {c: mean_intra_class(groups[c]) for c in classes}
    inter = {}
    for i, cl in enumerate(classes[:-1]):
        for cm in classes[i + 1 :]:
            inter[(cl, cm)] = mean_inter_class(groups[cl], groups[cm])

    n_classes = len(classes)
    intra_term = sum(intra.values()) / n_classes
    inter_term = 2.0 * sum(inter.values()) / (n_classes * (n_classes - 1))
    value = (intra_term - inter_term) / np.sqrt(pts.shape[1])
    return SeparabilityReport(intra=intra, inter=inter, gdv=float(value))
