"""Classical (Euclidean) K-means: K-means++ seeding, Lloyd iteration,
multi-restart selection.

All tie-breaking is pinned (nearest centroid ties go to the lowest
centroid index, argmax/argmin ties to the lowest row index, equal-SSE
restarts to the lowest restart index) so a fit is a pure function of
(data, parameters, stream identity) regardless of thread count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError
from .rng import RngStream

DEFAULT_N_INIT = 10
DEFAULT_MAX_ITER = 300
DEFAULT_TOL = 1e-4


@dataclass
class Partition:
    """Hard assignment of n rows to k clusters."""

    labels: np.ndarray  # (n,) int64 in [0, k)
    k: int

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.labels.ndim != 1:
            raise InvalidArgumentError("labels must be 1-D")
        if self.labels.size and (self.labels.min() < 0 or self.labels.max() >= self.k):
            raise InvalidArgumentError(f"labels must lie in [0, {self.k})")


@dataclass
class CentroidModel:
    """Cluster representatives plus the geometry they live in."""

    centroids: np.ndarray  # (k, d)
    geometry: str = "euclidean"  # "euclidean" | "spherical"

    def __post_init__(self):
        self.centroids = np.asarray(self.centroids, dtype=np.float64)
        if self.centroids.ndim != 2:
            raise InvalidArgumentError("centroids must be (k, d)")
        if self.geometry not in ("euclidean", "spherical"):
            raise InvalidArgumentError(f"unknown geometry '{self.geometry}'")

    @property
    def k(self) -> int:
        return self.centroids.shape[0]


@dataclass
class ClusteringResult:
    """Outcome of one fit: partition, model, objective, and run metadata.

    `objective` is the SSE for Euclidean fits and the total cosine
    similarity for spherical fits. `sse` is always the Euclidean SSE on
    the geometry's working matrix, so spherical fits can report an L2
    curve too. `objective_history` holds the per-iteration objective.
    """

    partition: Partition
    model: CentroidModel
    objective: float
    iterations: int
    converged: bool
    sse: float
    seed: dict = field(default_factory=dict)
    objective_history: list[float] = field(default_factory=list)


def _check_matrix(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    if z.ndim != 2 or z.shape[0] == 0 or z.shape[1] == 0:
        raise InvalidArgumentError(f"expected a non-empty 2-D matrix, got shape {z.shape}")
    return z


def _sq_dist_to_row(z: np.ndarray, idx: int) -> np.ndarray:
    diff = z - z[idx]
    return np.einsum("ij,ij->i", diff, diff)


def plusplus_indices(z: np.ndarray, k: int, stream: RngStream, weight_fn=None) -> list[int]:
    """Row indices chosen by the K-means++ scheme.

    The first index is uniform; each further index is sampled with
    probability proportional to `weight_fn`'s distance-squared weight to
    the nearest chosen row (squared Euclidean distance by default). When
    every remaining row has zero weight (duplicates of chosen rows), the
    next index falls back to a uniform pick among unchosen rows, so k = n
    always yields a permutation.
    """
    n = z.shape[0]
    if not 1 <= k <= n:
        raise InvalidArgumentError(f"need 1 <= k <= n={n}, got k={k}")
    if weight_fn is None:
        weight_fn = _sq_dist_to_row
    first = stream.randint(n)
    chosen = [first]
    weights = weight_fn(z, first)
    weights = np.maximum(weights, 0.0)
    weights[first] = 0.0
    for _ in range(k - 1):
        total = float(weights.sum())
        if total > 0.0:
            idx = stream.weighted_index(weights)
        else:
            remaining = [i for i in range(n) if i not in set(chosen)]
            idx = remaining[stream.randint(len(remaining))]
        chosen.append(idx)
        weights = np.minimum(weights, np.maximum(weight_fn(z, idx), 0.0))
        weights[idx] = 0.0
    return chosen


def kmeanspp_init(z: np.ndarray, k: int, stream: RngStream) -> CentroidModel:
    """K-means++ seeding in Euclidean geometry; centroids are data rows."""
    z = _check_matrix(z)
    chosen = plusplus_indices(z, k, stream)
    return CentroidModel(z[chosen].copy(), geometry="euclidean")


def _assign(z: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    # Squared distances via the Gram expansion; argmin takes the first
    # (lowest-index) centroid on ties.
    sq_c = np.einsum("ij,ij->i", centroids, centroids)
    d2 = sq_c[None, :] - 2.0 * (z @ centroids.T)
    return np.argmin(d2, axis=1).astype(np.int64)


def _cluster_means(z: np.ndarray, labels: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    counts = np.bincount(labels, minlength=k)
    sums = np.empty((k, z.shape[1]), dtype=np.float64)
    for j in range(z.shape[1]):
        sums[:, j] = np.bincount(labels, weights=z[:, j], minlength=k)
    means = sums / np.maximum(counts, 1)[:, None]
    return means, counts


def _repair_empty(z: np.ndarray, labels: np.ndarray, centroids: np.ndarray, counts: np.ndarray) -> bool:
    """Reassign the worst-served row to each empty cluster (lowest id first)."""
    empty = np.nonzero(counts == 0)[0]
    if empty.size == 0:
        return False
    diff = z - centroids[labels]
    contrib = np.einsum("ij,ij->i", diff, diff)
    for c in empty:
        idx = int(np.argmax(contrib))
        counts[labels[idx]] -= 1
        labels[idx] = c
        counts[c] += 1
        contrib[idx] = -1.0  # cannot be picked for another empty cluster
    return True


def lloyd(z: np.ndarray, init: CentroidModel, max_iter: int = DEFAULT_MAX_ITER,
          tol: float = DEFAULT_TOL) -> ClusteringResult:
    """Lloyd iteration from the given centroids.

    Alternates nearest-centroid assignment and mean updates until the
    assignment reaches a fixed point (at which the centroid displacement
    is exactly 0 < tol, so the returned state is exactly self-consistent)
    or `max_iter` is hit. Clusters that lose all points are reseeded with
    the row farthest from its current centroid.
    """
    z = _check_matrix(z)
    if init.geometry != "euclidean":
        raise InvalidArgumentError("lloyd requires a euclidean-geometry init")
    centroids = init.centroids.copy()
    k = centroids.shape[0]
    if k > z.shape[0]:
        raise InvalidArgumentError(f"k={k} exceeds n={z.shape[0]}")
    if max_iter < 1:
        raise InvalidArgumentError(f"max_iter must be >= 1, got {max_iter}")

    labels_prev: np.ndarray | None = None
    history: list[float] = []
    converged = False
    iterations = 0
    for _ in range(max_iter):
        iterations += 1
        labels = _assign(z, centroids)
        counts = np.bincount(labels, minlength=k)
        repaired = _repair_empty(z, labels, centroids, counts)
        if not repaired and labels_prev is not None and np.array_equal(labels, labels_prev):
            converged = True
            break
        centroids, _ = _cluster_means(z, labels, k)
        diff = z - centroids[labels]
        history.append(float(np.einsum("ij,ij->", diff, diff)))
        labels_prev = labels

    assert labels_prev is not None
    objective = history[-1]
    return ClusteringResult(
        partition=Partition(labels_prev, k),
        model=CentroidModel(centroids, geometry="euclidean"),
        objective=objective,
        iterations=iterations,
        converged=converged,
        sse=objective,
        objective_history=history,
    )


def kmeans_fit(z: np.ndarray, k: int, n_init: int = DEFAULT_N_INIT,
               max_iter: int = DEFAULT_MAX_ITER, tol: float = DEFAULT_TOL,
               stream: RngStream | None = None) -> ClusteringResult:
    """Best-of-`n_init` K-means++ / Lloyd pipelines (lowest SSE wins).

    Each restart runs on a child stream derived from `stream`, so the
    result does not depend on evaluation order; SSE ties keep the lowest
    restart index.
    """
    z = _check_matrix(z)
    if stream is None:
        raise InvalidArgumentError("kmeans_fit requires a stream")
    if not 2 <= k <= z.shape[0]:
        raise InvalidArgumentError(f"need 2 <= k <= n={z.shape[0]}, got k={k}")
    if n_init < 1:
        raise InvalidArgumentError(f"n_init must be >= 1, got {n_init}")
    best: ClusteringResult | None = None
    for r in range(n_init):
        sub = stream.child(r)
        init = kmeanspp_init(z, k, sub)
        result = lloyd(z, init, max_iter=max_iter, tol=tol)
        result.seed = {
            "master_seed": sub.master_seed,
            "stream_index": sub.stream_index,
            "restart": r,
        }
        if best is None or result.objective < best.objective:
            best = result
    assert best is not None
    return best
