"""Model-selection and stability metrics.

Silhouette supports Euclidean and cosine distance (cosine on unit rows,
defined as 1 - dot, range [0, 2]). The adjusted Rand index uses exact
integer pair counting, so symmetry and label-permutation invariance hold
exactly. The stability protocol measures initialization sensitivity with
repeated single-init fits, and the k-sweep drives both over a range of k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError
from .kmeans import (
    CentroidModel,
    ClusteringResult,
    Partition,
    _check_matrix,
    kmeans_fit,
)
from .preprocess import unit_rows
from .rng import RngStream
from .skmeans import skmeans_fit

METHODS = ("classical", "spherical")


@dataclass
class SilhouetteBreakdown:
    """Per-point silhouette decomposition plus the overall mean."""

    a: np.ndarray       # mean intra-cluster distance (0 for singletons)
    b: np.ndarray       # lowest mean distance to another cluster
    s: np.ndarray       # (b - a) / max(a, b), 0 when max(a, b) == 0
    mean_s: float


@dataclass
class StabilityReport:
    """Pairwise-ARI summary over repeated single-init fits at fixed k."""

    k: int
    runs: int
    ari_values: list[float]  # all unordered pairs, lexicographic order
    mean: float
    sd: float                # population SD over the pairs
    min: float


@dataclass
class SweepRow:
    k: int
    silhouette: float
    sse: float
    stability_mean: float | None = None
    stability_sd: float | None = None


@dataclass
class SweepConfig:
    n_init: int = 10
    max_iter: int = 300
    tol: float | None = None      # per-geometry default when None
    stability_runs: int = 0       # per-k stability when > 0


@dataclass
class KSweepReport:
    method: str
    distance: str
    rows: list[SweepRow] = field(default_factory=list)
    best_k: int = 0
    elbow_k: int | None = None


def sse(x: np.ndarray, partition: Partition, model: CentroidModel) -> float:
    """Within-cluster sum of squared Euclidean distances to centroids."""
    x = _check_matrix(x)
    labels = partition.labels
    if labels.shape[0] != x.shape[0]:
        raise InvalidArgumentError("partition length must match row count")
    if labels.size and labels.max() >= model.k:
        raise InvalidArgumentError(f"label {int(labels.max())} out of range for k={model.k}")
    if model.centroids.shape[1] != x.shape[1]:
        raise InvalidArgumentError("centroid dimension must match data")
    diff = x - model.centroids[labels]
    return float(np.einsum("ij,ij->", diff, diff))


def _pairwise_distances(x: np.ndarray, distance: str) -> np.ndarray:
    if distance == "euclidean":
        sq = np.einsum("ij,ij->i", x, x)
        d2 = sq[:, None] + sq[None, :] - 2.0 * (x @ x.T)
        np.maximum(d2, 0.0, out=d2)
        dist = np.sqrt(d2)
    elif distance == "cosine":
        norms = np.sqrt(np.einsum("ij,ij->i", x, x))
        if float(np.abs(norms - 1.0).max()) > 1e-8:
            raise InvalidArgumentError("cosine silhouette requires unit-normalized rows")
        dist = 1.0 - x @ x.T
        np.clip(dist, 0.0, 2.0, out=dist)
    else:
        raise InvalidArgumentError(f"unknown distance '{distance}'")
    np.fill_diagonal(dist, 0.0)
    return dist


def silhouette(x: np.ndarray, partition: Partition, distance: str = "euclidean") -> SilhouetteBreakdown:
    """Silhouette decomposition under the given distance.

    Requires k >= 2 and every cluster non-empty. Singleton points get
    s = 0 by convention, as do points where max(a, b) = 0.
    """
    x = _check_matrix(x)
    labels = partition.labels
    k = partition.k
    if k < 2:
        raise InvalidArgumentError(f"silhouette needs k >= 2, got k={k}")
    if labels.shape[0] != x.shape[0]:
        raise InvalidArgumentError("partition length must match row count")
    counts = np.bincount(labels, minlength=k)
    if np.any(counts == 0):
        empty = int(np.nonzero(counts == 0)[0][0])
        raise InvalidArgumentError(f"cluster {empty} is empty")

    dist = _pairwise_distances(x, distance)
    n = x.shape[0]
    sums = np.empty((n, k), dtype=np.float64)
    for c in range(k):
        sums[:, c] = dist[:, labels == c].sum(axis=1)

    own = counts[labels]
    own_sums = sums[np.arange(n), labels]
    a = np.where(own > 1, own_sums / np.maximum(own - 1, 1), 0.0)

    other_means = sums / counts[None, :]
    other_means[np.arange(n), labels] = np.inf
    b = other_means.min(axis=1)

    denom = np.maximum(a, b)
    s = np.where(denom > 0.0, (b - a) / np.where(denom > 0.0, denom, 1.0), 0.0)
    s = np.where(own == 1, 0.0, s)
    return SilhouetteBreakdown(a=a, b=b, s=s, mean_s=float(s.mean()))


def _canonical_labels(labels: np.ndarray) -> np.ndarray:
    _, inverse = np.unique(labels, return_inverse=True)
    first = {}
    out = np.empty(labels.size, dtype=np.int64)
    next_id = 0
    for i, v in enumerate(inverse):
        v = int(v)
        if v not in first:
            first[v] = next_id
            next_id += 1
        out[i] = first[v]
    return out


def ari(labels_a: np.ndarray, labels_b: np.ndarray) -> float:
    """Hubert-Arabie adjusted Rand index between two hard partitions.

    Computed with exact integer arithmetic from the contingency table.
    When the adjustment denominator is zero (both partitions are
    all-singletons or all-one-cluster), returns 1.0 if the partitions are
    identical and 0.0 otherwise.
    """
    labels_a = np.asarray(labels_a, dtype=np.int64).ravel()
    labels_b = np.asarray(labels_b, dtype=np.int64).ravel()
    if labels_a.shape != labels_b.shape:
        raise InvalidArgumentError(
            f"partition lengths differ: {labels_a.shape[0]} vs {labels_b.shape[0]}"
        )
    n = labels_a.shape[0]
    if n == 0:
        raise InvalidArgumentError("cannot compare empty partitions")

    _, ia = np.unique(labels_a, return_inverse=True)
    _, ib = np.unique(labels_b, return_inverse=True)
    ka = int(ia.max()) + 1
    kb = int(ib.max()) + 1
    table = np.bincount(ia * kb + ib, minlength=ka * kb).reshape(ka, kb)

    def comb2_sum(counts) -> int:
        return sum(int(c) * (int(c) - 1) // 2 for c in counts)

    sum_cells = comb2_sum(table.ravel())
    sum_a = comb2_sum(table.sum(axis=1))
    sum_b = comb2_sum(table.sum(axis=0))
    pairs = n * (n - 1) // 2

    # ARI = (sum_cells - E) / (M - E) with E = sum_a*sum_b/pairs and
    # M = (sum_a + sum_b)/2, scaled by 2*pairs to stay in exact integers.
    numer = 2 * pairs * sum_cells - 2 * sum_a * sum_b
    denom = pairs * (sum_a + sum_b) - 2 * sum_a * sum_b
    if denom == 0:
        identical = np.array_equal(_canonical_labels(labels_a), _canonical_labels(labels_b))
        return 1.0 if identical else 0.0
    return numer / denom


def _fit(z: np.ndarray, k: int, method: str, n_init: int, max_iter: int,
         tol: float | None, stream: RngStream) -> ClusteringResult:
    if method == "classical":
        return kmeans_fit(z, k, n_init=n_init, max_iter=max_iter,
                          tol=1e-4 if tol is None else tol, stream=stream)
    if method == "spherical":
        return skmeans_fit(z, k, n_init=n_init, max_iter=max_iter,
                           tol=1e-6 if tol is None else tol, stream=stream)
    raise InvalidArgumentError(f"unknown method '{method}'")


def stability(z: np.ndarray, k: int, method: str, runs: int,
              stream: RngStream, max_iter: int = 300) -> StabilityReport:
    """Initialization-stability protocol: `runs` single-init fits, all-pairs ARI.

    Single-init fits (n_init = 1) deliberately expose sensitivity to the
    starting centroids that multi-restart fits would mask.
    """
    z = _check_matrix(z)
    if runs < 2:
        raise InvalidArgumentError(f"need runs >= 2, got {runs}")
    if k < 2:
        raise InvalidArgumentError(f"need k >= 2, got {k}")
    label_sets = []
    for r in range(runs):
        result = _fit(z, k, method, n_init=1, max_iter=max_iter, tol=None,
                      stream=stream.child(r))
        label_sets.append(result.partition.labels)
    values = []
    for i in range(runs):
        for j in range(i + 1, runs):
            values.append(ari(label_sets[i], label_sets[j]))
    arr = np.array(values)
    return StabilityReport(
        k=k,
        runs=runs,
        ari_values=[float(v) for v in values],
        mean=float(arr.mean()),
        sd=float(arr.std()),
        min=float(arr.min()),
    )


def elbow_k(sweep: KSweepReport) -> int:
    """Elbow heuristic: interior k with the largest perpendicular distance
    from (k, SSE) to the chord joining the sweep endpoints; ties (and a
    perfectly linear curve) resolve to the smallest interior k.
    """
    rows = sweep.rows
    if len(rows) < 3:
        raise InvalidArgumentError(f"elbow needs at least 3 sweep rows, got {len(rows)}")
    ks = np.array([row.k for row in rows], dtype=np.float64)
    sses = np.array([row.sse for row in rows], dtype=np.float64)
    x0, y0 = ks[0], sses[0]
    x1, y1 = ks[-1], sses[-1]
    chord = float(np.hypot(x1 - x0, y1 - y0))
    if chord == 0.0:
        return int(ks[1])
    cross = (x1 - x0) * (sses - y0) - (y1 - y0) * (ks - x0)
    distances = np.abs(cross) / chord
    interior = distances[1:-1]
    best = int(np.argmax(interior)) + 1  # argmax takes the first max: smallest k
    return int(ks[best])


def k_sweep(z: np.ndarray, k_min: int, k_max: int, method: str,
            config: SweepConfig | None = None,
            stream: RngStream | None = None) -> KSweepReport:
    """Fit every k in [k_min, k_max] and collect selection metrics.

    Classical sweeps score Euclidean silhouette on the standardized
    matrix; spherical sweeps score cosine silhouette and SSE on the
    row-normalized matrix. best_k is the silhouette argmax (smallest k on
    ties); the elbow is computed whenever the sweep has >= 3 rows.
    """
    z = _check_matrix(z)
    if config is None:
        config = SweepConfig()
    if stream is None:
        raise InvalidArgumentError("k_sweep requires a stream")
    if method not in METHODS:
        raise InvalidArgumentError(f"unknown method '{method}'")
    n = z.shape[0]
    if not (2 <= k_min <= k_max <= n - 1):
        raise InvalidArgumentError(
            f"need 2 <= k_min <= k_max <= n-1={n - 1}, got k_min={k_min}, k_max={k_max}"
        )
    if method == "spherical":
        work = unit_rows(z)
        distance = "cosine"
    else:
        work = z
        distance = "euclidean"

    report = KSweepReport(method=method, distance=distance)
    best_k = 0
    best_sil = -np.inf
    for k in range(k_min, k_max + 1):
        base = stream.child(k)
        result = _fit(z, k, method, config.n_init, config.max_iter, config.tol, base.child(0))
        sil = silhouette(work, result.partition, distance).mean_s
        row = SweepRow(k=k, silhouette=sil, sse=result.sse)
        if config.stability_runs >= 2:
            stab = stability(z, k, method, config.stability_runs, base.child(1),
                             max_iter=config.max_iter)
            row.stability_mean = stab.mean
            row.stability_sd = stab.sd
        report.rows.append(row)
        if sil > best_sil:
            best_sil = sil
            best_k = k
    report.best_k = best_k
    if len(report.rows) >= 3:
        report.elbow_k = elbow_k(report)
    return report
