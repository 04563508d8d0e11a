"""Spherical K-means over cosine geometry.

Works on row-normalized data: assignment maximizes the dot product with
unit centroids, updates renormalize cluster means, and the objective is
the total cosine similarity (monotone non-decreasing). Degenerate
clusters (empty, or with an exactly cancelling mean) are repaired
deterministically instead of emitting NaNs.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidArgumentError
from .kmeans import CentroidModel, ClusteringResult, Partition, _check_matrix, plusplus_indices
from .preprocess import unit_rows
from .rng import RngStream

DEFAULT_MAX_ITER = 300
DEFAULT_TOL = 1e-6  # angular displacement threshold, 1 - cos(old, new)

_UNIT_TOL = 1e-8
_DEGENERATE_NORM = 1e-12


def _check_unit_rows(u: np.ndarray, what: str) -> np.ndarray:
    u = _check_matrix(u)
    norms = np.sqrt(np.einsum("ij,ij->i", u, u))
    if float(np.abs(norms - 1.0).max()) > _UNIT_TOL:
        raise InvalidArgumentError(f"{what} must be unit-normalized rows")
    return u


def spherical_assign(u: np.ndarray, model: CentroidModel) -> Partition:
    """Assign each unit row to the centroid with the largest dot product.

    Ties go to the lowest centroid index.
    """
    u = _check_unit_rows(u, "input")
    c = _check_unit_rows(model.centroids, "centroids")
    sims = u @ c.T
    labels = np.argmax(sims, axis=1).astype(np.int64)
    return Partition(labels, model.k)


def spherical_update(u: np.ndarray, partition: Partition,
                     prev_model: CentroidModel | None = None) -> CentroidModel:
    """Renormalized cluster means.

    A cluster whose mean direction cancels out (norm < 1e-12, e.g. two
    antipodal members) is reseeded with its member of lowest cosine
    similarity to the previous centroid (lowest row index on ties); with
    no previous model, the lowest-index member is used.
    """
    u = _check_unit_rows(u, "input")
    labels = partition.labels
    k = partition.k
    counts = np.bincount(labels, minlength=k)
    if np.any(counts == 0):
        raise InvalidArgumentError("spherical_update requires every cluster non-empty")
    sums = np.empty((k, u.shape[1]), dtype=np.float64)
    for j in range(u.shape[1]):
        sums[:, j] = np.bincount(labels, weights=u[:, j], minlength=k)
    means = sums / counts[:, None]
    norms = np.sqrt(np.einsum("ij,ij->i", means, means))
    centroids = np.empty_like(means)
    for c in range(k):
        if norms[c] < _DEGENERATE_NORM:
            members = np.nonzero(labels == c)[0]
            if prev_model is not None:
                sims = u[members] @ prev_model.centroids[c]
                pick = members[int(np.argmin(sims))]
            else:
                pick = members[0]
            centroids[c] = u[pick]
        else:
            centroids[c] = means[c] / norms[c]
    return CentroidModel(centroids, geometry="spherical")


def _cosine_weight_fn(u: np.ndarray, idx: int) -> np.ndarray:
    dist = 1.0 - u @ u[idx]
    return dist * dist


def _repair_empty_spherical(u: np.ndarray, labels: np.ndarray, centroids: np.ndarray,
                            counts: np.ndarray) -> bool:
    """Hand the globally worst-served row to each empty cluster (lowest id first)."""
    empty = np.nonzero(counts == 0)[0]
    if empty.size == 0:
        return False
    sim_own = np.einsum("ij,ij->i", u, centroids[labels])
    for c in empty:
        idx = int(np.argmin(sim_own))
        counts[labels[idx]] -= 1
        labels[idx] = c
        counts[c] += 1
        sim_own[idx] = 2.0  # above any true cosine, immune to the next pick
    return True


def skmeans_fit(z: np.ndarray, k: int, n_init: int = 10,
                max_iter: int = DEFAULT_MAX_ITER, tol: float = DEFAULT_TOL,
                stream: RngStream | None = None) -> ClusteringResult:
    """Multi-restart spherical K-means on standardized data.

    Rows are unit-normalized internally; seeding is K-means++ with
    squared cosine-distance weights; the restart with the highest total
    cosine similarity wins (lowest restart index on ties). The result's
    `sse` field carries the Euclidean SSE of the normalized rows to the
    unit centroids for L2 reporting.
    """
    z = _check_matrix(z)
    if stream is None:
        raise InvalidArgumentError("skmeans_fit requires a stream")
    if not 2 <= k <= z.shape[0]:
        raise InvalidArgumentError(f"need 2 <= k <= n={z.shape[0]}, got k={k}")
    if n_init < 1:
        raise InvalidArgumentError(f"n_init must be >= 1, got {n_init}")
    u = unit_rows(z)
    best: ClusteringResult | None = None
    for r in range(n_init):
        sub = stream.child(r)
        result = _single_run(u, k, max_iter, sub)
        result.seed = {
            "master_seed": sub.master_seed,
            "stream_index": sub.stream_index,
            "restart": r,
        }
        if best is None or result.objective > best.objective:
            best = result
    assert best is not None
    return best


def _single_run(u: np.ndarray, k: int, max_iter: int, stream: RngStream) -> ClusteringResult:
    if max_iter < 1:
        raise InvalidArgumentError(f"max_iter must be >= 1, got {max_iter}")
    chosen = plusplus_indices(u, k, stream, weight_fn=_cosine_weight_fn)
    centroids = u[chosen].copy()
    labels_prev: np.ndarray | None = None
    history: list[float] = []
    converged = False
    iterations = 0
    for _ in range(max_iter):
        iterations += 1
        sims = u @ centroids.T
        labels = np.argmax(sims, axis=1).astype(np.int64)
        counts = np.bincount(labels, minlength=k)
        repaired = _repair_empty_spherical(u, labels, centroids, counts)
        if not repaired and labels_prev is not None and np.array_equal(labels, labels_prev):
            converged = True
            break
        model = spherical_update(u, Partition(labels, k), CentroidModel(centroids, "spherical"))
        centroids = model.centroids
        history.append(float(np.einsum("ij,ij->", u, centroids[labels])))
        labels_prev = labels

    assert labels_prev is not None
    objective = history[-1]
    diff = u - centroids[labels_prev]
    sse_l2 = float(np.einsum("ij,ij->", diff, diff))
    return ClusteringResult(
        partition=Partition(labels_prev, k),
        model=CentroidModel(centroids, geometry="spherical"),
        objective=objective,
        iterations=iterations,
        converged=converged,
        sse=sse_l2,
        objective_history=history,
    )
