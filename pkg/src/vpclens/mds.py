"""Metric multidimensional scaling.

The default projection is classical (spectral) scaling: double-center
the squared distance matrix and read coordinates off the top
eigenpairs. It is deterministic and parameter-free. An optional
stress-majorization refinement (Guttman transform iterations) is
provided for callers who want to squeeze the raw stress further,
seeded with the classical solution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateDataError


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric nonnegative distance matrix with zero diagonal."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 2 or vals.shape[0] != vals.shape[1]:
            raise ValueError("distance matrix must be square")
        if not np.isfinite(vals).all():
            raise ValueError("distance matrix contains NaN or Inf")
        if np.abs(vals - vals.T).max() > 1e-12:
            raise ValueError("distance matrix is not symmetric")
        if np.abs(np.diagonal(vals)).max() > 0.0:
            raise ValueError("distance matrix diagonal is not zero")
        if vals.min() < 0.0:
            raise ValueError("distance matrix has negative entries")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class MdsResult:
    """Projection output.

    ``eigenvalues`` is populated (descending, unclamped) on the
    classical path; ``stress_trace`` on the iterative path, one raw
    stress value per recorded iterate, nonincreasing.
    """

    coordinates: np.ndarray
    method: str
    eigenvalues: np.ndarray = field(default_factory=lambda: np.empty(0))
    stress_trace: tuple[float, ...] = ()


def _as_distance(dist) -> DistanceMatrix:
    if isinstance(dist, DistanceMatrix):
        return dist
    return DistanceMatrix(dist)


def pairwise_distances(points: np.ndarray) -> DistanceMatrix:
    """Euclidean distance matrix, each unordered pair computed once."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 2:
        raise ValueError("need a 2-D array with at least two points")
    if not np.isfinite(pts).all():
        raise ValueError("points contain NaN or Inf")
    n = pts.shape[0]
    vals = np.zeros((n, n))
    for i in range(n - 1):
        diff = pts[i + 1 :] - pts[i]
        row = np.sqrt(np.sum(diff * diff, axis=1))
        vals[i, i + 1 :] = row
        vals[i + 1 :, i] = row
    return DistanceMatrix(vals)


def classical_mds(dist, k: int = 2) -> MdsResult:
    """Spectral embedding of a distance matrix into k dimensions.

    Double-centers the squared distances, takes the top-k eigenpairs of
    the resulting Gram-like matrix, and scales eigenvectors by the
    square roots of their (zero-clamped) eigenvalues. All n eigenvalues
    are reported unclamped so non-Euclidean input stays diagnosable.
    Column signs are canonicalized: the largest-magnitude entry of each
    coordinate column is made positive.
    """
    d = _as_distance(dist)
    n = d.n
    if n < k + 1:
        raise ValueError(f"need at least {k + 1} points for a {k}-D embedding")

    j = np.eye(n) - 1.0 / n
    b = -0.5 * j @ (d.values * d.values) @ j
    b = 0.5 * (b + b.T)
    evals, evecs = np.linalg.eigh(b)
    order = np.argsort(evals)[::-1]
    evals = evals[order]
    evecs = evecs[:, order]

    # Numerical-rank cutoff: eigenvalues indistinguishable from zero
    # would otherwise inject sqrt(eps)-sized noise columns.
    cutoff = np.abs(evals).max(initial=0.0) * 1e-12
    scale = np.sqrt(np.where(evals[:k] > cutoff, evals[:k], 0.0))
    coords = evecs[:, :k] * scale

    for c in range(k):
        col = coords[:, c]
        peak = np.argmax(np.abs(col))
        if col[peak] < 0.0:
            coords[:, c] = -col
    return MdsResult(coordinates=coords, method="classical", eigenvalues=evals)


def stress(dist, coords: np.ndarray) -> float:
    """Raw stress: sum of squared gaps between target and embedded distances."""
    d = _as_distance(dist)
    x = np.asarray(coords, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] != d.n:
        raise ValueError("coordinates do not match the distance matrix")
    iu = np.triu_indices(d.n, k=1)
    diff = x[:, None, :] - x[None, :, :]
    embedded = np.sqrt(np.sum(diff * diff, axis=2))
    gap = embedded[iu] - d.values[iu]
    return float(np.sum(gap * gap))


def smacof(dist, init: np.ndarray, max_iter: int = 300, tol: float = 1e-9) -> MdsResult:
    """Stress majorization from a given starting configuration.

    Each Guttman-transform step cannot increase the raw stress; the
    iteration stops when the relative stress decrease drops below
    ``tol`` or after ``max_iter`` steps. The recorded stress trace is
    nonincreasing: a step that fails to improve (floating-point wobble
    at a fixed point) is discarded and iteration stops.
    """
    d = _as_distance(dist)
    n = d.n
    delta = d.values
    x = np.asarray(init, dtype=np.float64).copy()
    if x.ndim != 2 or x.shape[0] != n:
        raise ValueError("init does not match the distance matrix")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if not delta.any():
        raise DegenerateDataError("all-zero distance matrix has no defined update")

    x -= x.mean(axis=0)
    trace = [stress(d, x)]
    for _ in range(max_iter):
        if trace[-1] == 0.0:
            break
        diff = x[:, None, :] - x[None, :, :]
        emb = np.sqrt(np.sum(diff * diff, axis=2))
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(emb > 0.0, delta / np.where(emb > 0.0, emb, 1.0), 0.0)
        b = -ratio
        np.fill_diagonal(b, 0.0)
        np.fill_diagonal(b, -b.sum(axis=1))
        x_new = (b @ x) / n
        s_new = stress(d, x_new)
        if s_new > trace[-1]:
            break
        x = x_new
        previous = trace[-1]
        trace.append(s_new)
        if previous > 0.0 and (previous - s_new) < tol * previous:
            break
    return MdsResult(coordinates=x, method="smacof", stress_trace=tuple(trace))
