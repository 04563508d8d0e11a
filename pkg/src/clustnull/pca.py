"""Principal-component projection for diagnostic plots.

Strictly a visualization aid: nothing in the fitting path imports this
module, so projected coordinates can never leak into clustering.
Covariance uses the population convention, matching preprocessing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .kmeans import Partition, _check_matrix
from .linalg import covariance, sym_eigen


@dataclass
class PcaModel:
    center: np.ndarray              # (d,)
    components: np.ndarray          # (d, m), orthonormal columns
    explained_variance: np.ndarray  # (m,), descending
    explained_ratio: np.ndarray     # (m,), shares of total variance


@dataclass
class Projection:
    coords: np.ndarray            # (n, m)
    labels: np.ndarray            # (n,)
    explained_ratio: np.ndarray   # carried from the model

    @property
    def m(self) -> int:
        return self.coords.shape[1]


def pca_fit(x: np.ndarray, m: int) -> PcaModel:
    """Top-m principal axes of the population covariance of `x`."""
    x = _check_matrix(x)
    n, d = x.shape
    if n < 2:
        raise InvalidArgumentError(f"pca needs n >= 2 rows, got {n}")
    if not 1 <= m <= d:
        raise InvalidArgumentError(f"need 1 <= m <= d={d}, got m={m}")
    center = x.mean(axis=0)
    values, vectors = sym_eigen(covariance(x - center))
    total = float(np.maximum(values, 0.0).sum())
    if total <= 0.0:
        raise InvalidArgumentError("data has zero total variance")
    return PcaModel(
        center=center,
        components=vectors[:, :m].copy(),
        explained_variance=values[:m].copy(),
        explained_ratio=np.maximum(values[:m], 0.0) / total,
    )


def pca_project(model: PcaModel, x: np.ndarray, partition: Partition | None = None) -> Projection:
    """Project rows onto the fitted axes; labels are attached for coloring.

    Projections are emitted for 2-D or 3-D plots only.
    """
    x = _check_matrix(x)
    m = model.components.shape[1]
    if m not in (2, 3):
        raise InvalidArgumentError(f"projection wants m in {{2, 3}}, got m={m}")
    if x.shape[1] != model.center.shape[0]:
        raise InvalidArgumentError(
            f"data has {x.shape[1]} columns, model expects {model.center.shape[0]}"
        )
    if partition is not None and partition.labels.shape[0] != x.shape[0]:
        raise InvalidArgumentError("partition length must match row count")
    coords = (x - model.center) @ model.components
    labels = partition.labels.copy() if partition is not None else np.zeros(x.shape[0], dtype=np.int64)
    return Projection(coords=coords, labels=labels, explained_ratio=model.explained_ratio.copy())
