"""Layer-wise analysis of an embedding bundle.

Computes the separability curve over layers for a chosen grouping of
samples, projects individual layers to 2-D, and flags within-class
outliers by a robust distance-to-centroid rule. Each layer is treated
independently; the separability rescaling is re-derived per layer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry, mds
from .bundle import EmbeddingBundle
from .errors import DegenerateDataError

GROUPING_KINDS = ("all", "within_category", "by_category")


@dataclass(frozen=True)
class GroupingMode:
    """How bundle rows become a labeled cloud.

    ``all``: every sample, labeled by construction.
    ``within_category``: samples of one verb category, labeled by construction.
    ``by_category``: every sample, labeled by verb category.
    """

    kind: str
    category: str | None = None

    def __post_init__(self):
        if self.kind not in GROUPING_KINDS:
            raise ValueError(f"unknown grouping kind {self.kind!r}")
        if self.kind == "within_category" and not self.category:
            raise ValueError("within_category grouping needs a category")
        if self.kind != "within_category" and self.category is not None:
            raise ValueError(f"{self.kind} grouping takes no category")

    @property
    def name(self) -> str:
        if self.kind == "within_category":
            return f"within_category:{self.category}"
        return self.kind


def parse_grouping(text: str) -> list[GroupingMode]:
    """Parse a CLI grouping argument; a comma list of categories expands."""
    if text == "all" or text == "by_category":
        return [GroupingMode(text)]
    prefix = "within_category:"
    if text.startswith(prefix):
        categories = [c.strip() for c in text[len(prefix) :].split(",") if c.strip()]
        if not categories:
            raise ValueError(f"no categories in grouping {text!r}")
        return [GroupingMode("within_category", c) for c in categories]
    raise ValueError(f"unknown grouping {text!r}")


def _select(bundle: EmbeddingBundle, grouping: GroupingMode) -> tuple[list[int], list[str]]:
    """Row indices and labels for a grouping."""
    if grouping.kind == "within_category":
        rows = [i for i, s in enumerate(bundle.samples) if s.verb_category == grouping.category]
        if not rows:
            raise DegenerateDataError(
                f"bundle has no samples for category {grouping.category!r}"
            )
        labels = [bundle.samples[i].construction for i in rows]
    elif grouping.kind == "by_category":
        rows = list(range(bundle.num_samples))
        labels = [s.verb_category for s in bundle.samples]
    else:
        rows = list(range(bundle.num_samples))
        labels = [s.construction for s in bundle.samples]
    return rows, labels


def _check_classes(grouping: GroupingMode, labels: list[str]) -> None:
    classes = list(dict.fromkeys(labels))
    offending = [c for c in classes if labels.count(c) < 2]
    if len(classes) < 2 or offending:
        raise DegenerateDataError(
            f"grouping {grouping.name!r} yields {len(classes)} class(es); "
            f"classes with fewer than two samples: {offending or 'none'}"
        )


@dataclass(frozen=True)
class GdvCurve:
    """Separability per layer for one grouping of one model's bundle."""

    grouping: GroupingMode
    model_id: str
    values: dict[int, float]


def per_layer_gdv(bundle: EmbeddingBundle, grouping: GroupingMode) -> GdvCurve:
    """Discrimination value of every layer under the given grouping."""
    rows, labels = _select(bundle, grouping)
    _check_classes(grouping, labels)
    values = {}
    for index in bundle.layer_indices:
        points = bundle.layer(index)[rows].astype(np.float64)
        values[index] = geometry.gdv(points, labels).gdv
    return GdvCurve(grouping=grouping, model_id=bundle.model_id, values=values)


@dataclass(frozen=True)
class LayerProjection:
    """2-D projection of one layer plus per-point plotting labels."""

    layer: int
    result: mds.MdsResult
    sample_ids: list[str]
    constructions: list[str]
    verb_categories: list[str]


def per_layer_mds(
    bundle: EmbeddingBundle,
    layer: int,
    k: int = 2,
    method: str = "classical",
    rescale: bool = False,
    smacof_max_iter: int = 300,
    smacof_tol: float = 1e-9,
) -> LayerProjection:
    """Project one layer's vectors to k dimensions.

    ``method`` is "classical" (default) or "smacof"; the iterative
    path is seeded with the classical solution. ``rescale`` applies
    the half-z-scoring before computing distances (off by default:
    projections are of raw vectors). With fewer than k+1 samples only
    n-1 dimensions are informative; the remaining coordinate columns
    are zero-padded so the output is always n x k.
    """
    points = bundle.layer(layer).astype(np.float64)
    if rescale:
        points = geometry.rescale_half_zscore(points).points
    dist = mds.pairwise_distances(points)
    effective_k = min(k, dist.n - 1)
    result = mds.classical_mds(dist, k=effective_k)
    if method == "smacof":
        result = mds.smacof(dist, result.coordinates, max_iter=smacof_max_iter, tol=smacof_tol)
    elif method != "classical":
        raise ValueError(f"unknown MDS method {method!r}")
    if effective_k < k:
        padded = np.zeros((dist.n, k))
        padded[:, :effective_k] = result.coordinates
        result = mds.MdsResult(
            coordinates=padded,
            method=result.method,
            eigenvalues=result.eigenvalues,
            stress_trace=result.stress_trace,
        )
    return LayerProjection(
        layer=layer,
        result=result,
        sample_ids=[s.id for s in bundle.samples],
        constructions=[s.construction for s in bundle.samples],
        verb_categories=[s.verb_category for s in bundle.samples],
    )


@dataclass(frozen=True)
class OutlierEntry:
    sample_id: str
    score: float
    flagged: bool


@dataclass(frozen=True)
class OutlierFlags:
    """Per-sample centroid-distance scores and flags for one layer."""

    layer: int
    grouping: GroupingMode
    entries: list[OutlierEntry]


def flag_outliers(
    bundle: EmbeddingBundle,
    layer: int,
    grouping: GroupingMode,
    k: float = 3.5,
) -> OutlierFlags:
    """Flag samples far from their class centroid at one layer.

    A sample is flagged when its Euclidean distance to the class
    centroid exceeds median + k * MAD of the within-class distances.
    With all scores equal (MAD 0) nothing is flagged; scaling the layer
    globally scales scores and threshold together, leaving flags
    unchanged.
    """
    rows, labels = _select(bundle, grouping)
    _check_classes(grouping, labels)
    points = bundle.layer(layer)[rows].astype(np.float64)

    entries: list[OutlierEntry | None] = [None] * len(rows)
    for cls in dict.fromkeys(labels):
        members = [i for i, l in enumerate(labels) if l == cls]
        cloud = points[members]
        centroid = cloud.mean(axis=0)
        scores = np.sqrt(np.sum((cloud - centroid) ** 2, axis=1))
        med = float(np.median(scores))
        mad = float(np.median(np.abs(scores - med)))
        threshold = med + k * mad
        for i, score in zip(members, scores):
            entries[i] = OutlierEntry(
                sample_id=bundle.samples[rows[i]].id,
                score=float(score),
                flagged=bool(score > threshold),
            )
    return OutlierFlags(layer=layer, grouping=grouping, entries=list(entries))


def format_float(value: float) -> str:
    """Six significant digits, '.' decimal separator."""
    return format(value, ".6g")


def gdv_curves_csv(curves: list[GdvCurve]) -> str:
    lines = ["model_id,grouping,layer,gdv"]
    for curve in curves:
        for layer in sorted(curve.values):
            lines.append(
                f"{curve.model_id},{curve.grouping.name},{layer},{format_float(curve.values[layer])}"
            )
    return "\n".join(lines) + "\n"


def mds_layer_csv(projection: LayerProjection) -> str:
    lines = ["sample_id,construction,verb_category,x,y"]
    coords = projection.result.coordinates
    for i, sample_id in enumerate(projection.sample_ids):
        x = format_float(float(coords[i, 0]))
        y = format_float(float(coords[i, 1])) if coords.shape[1] > 1 else format_float(0.0)
        lines.append(
            f"{sample_id},{projection.constructions[i]},{projection.verb_categories[i]},{x},{y}"
        )
    return "\n".join(lines) + "\n"


def outliers_csv(flag_sets: list[OutlierFlags]) -> str:
    lines = ["layer,grouping,sample_id,score,flagged"]
    for flags in flag_sets:
        for entry in flags.entries:
            lines.append(
                f"{flags.layer},{flags.grouping.name},{entry.sample_id},"
                f"{format_float(entry.score)},{'true' if entry.flagged else 'false'}"
            )
    return "\n".join(lines) + "\n"
