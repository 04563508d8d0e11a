"""Synthetic dataset generators.

Five generators cover the benchmark scenarios: structure-free uniform
noise, a single isotropic Gaussian, a single equicorrelated Gaussian, a
well-separated five-component mixture (positive control), and a
cytometer-like mixture with unequal weights and one deliberately merged
pair of populations. Each generator is a pure function of its parameters
and the stream, and records provenance on the returned matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import presets
from .errors import InvalidArgumentError
from .linalg import cholesky
from .rng import RngStream, mvn_sample


@dataclass
class DataMatrix:
    """n x d observation table with names, optional truth labels, provenance."""

    values: np.ndarray
    feature_names: list[str]
    truth_labels: np.ndarray | None = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2:
            raise InvalidArgumentError(f"values must be 2-D, got ndim={self.values.ndim}")
        if not np.all(np.isfinite(self.values)):
            raise InvalidArgumentError("values contain non-finite entries")
        if len(self.feature_names) != self.values.shape[1]:
            raise InvalidArgumentError(
                f"{len(self.feature_names)} feature names for {self.values.shape[1]} columns"
            )
        if self.truth_labels is not None:
            self.truth_labels = np.asarray(self.truth_labels, dtype=np.int64)
            if self.truth_labels.shape != (self.values.shape[0],):
                raise InvalidArgumentError("truth_labels length must match row count")
            if self.truth_labels.size and self.truth_labels.min() < 0:
                raise InvalidArgumentError("truth_labels must be non-negative")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]


@dataclass
class MixtureSpec:
    """Gaussian mixture layout: means, covariance Cholesky factors, weights."""

    means: np.ndarray          # (K, d)
    chol_factors: np.ndarray   # (K, d, d), lower-triangular
    weights: np.ndarray        # (K,)

    def __post_init__(self):
        self.means = np.asarray(self.means, dtype=np.float64)
        self.chol_factors = np.asarray(self.chol_factors, dtype=np.float64)
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.means.ndim != 2:
            raise InvalidArgumentError("means must be (K, d)")
        k, d = self.means.shape
        if self.chol_factors.shape != (k, d, d):
            raise InvalidArgumentError(
                f"chol_factors must be (K, d, d) = ({k}, {d}, {d}), got {self.chol_factors.shape}"
            )
        if self.weights.shape != (k,):
            raise InvalidArgumentError(f"weights must have length {k}")
        if np.any(self.weights <= 0.0):
            raise InvalidArgumentError("weights must be strictly positive")
        if abs(float(self.weights.sum()) - 1.0) > 1e-12:
            raise InvalidArgumentError("weights must sum to 1 within 1e-12")
        for j in range(k):
            lower = self.chol_factors[j]
            if np.any(np.triu(lower, 1) != 0.0):
                raise InvalidArgumentError(f"chol_factors[{j}] is not lower-triangular")
            if np.any(np.diag(lower) <= 0.0):
                raise InvalidArgumentError(f"chol_factors[{j}] has a non-positive diagonal")

    @property
    def k(self) -> int:
        return self.means.shape[0]

    @property
    def d(self) -> int:
        return self.means.shape[1]


def _feature_names(d: int) -> list[str]:
    return [f"f{j + 1}" for j in range(d)]


def _provenance(generator: str, stream: RngStream, **params) -> dict:
    return {
        "generator": generator,
        "master_seed": stream.master_seed,
        "stream_index": stream.stream_index,
        **params,
    }


def gen_random(n: int, d: int, stream: RngStream) -> DataMatrix:
    """Structure-free null: i.i.d. uniform [0, 1) entries."""
    if n < 1 or d < 1:
        raise InvalidArgumentError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    values = stream.uniforms(n * d).reshape(n, d)
    return DataMatrix(values, _feature_names(d), provenance=_provenance("random", stream, n=n, d=d))


def gen_unimodal_gaussian(n: int, d: int, stream: RngStream) -> DataMatrix:
    """Continuous-variation null: i.i.d. N(0, 1) entries, no latent classes."""
    if n < 1 or d < 1:
        raise InvalidArgumentError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    values = stream.normals(n * d).reshape(n, d)
    return DataMatrix(values, _feature_names(d), provenance=_provenance("gaussian", stream, n=n, d=d))


def equicorrelation(d: int, rho: float) -> np.ndarray:
    """Unit-diagonal covariance with constant off-diagonal correlation."""
    return (1.0 - rho) * np.eye(d) + rho * np.ones((d, d))


def gen_correlated_gaussian(n: int, d: int, rho: float, stream: RngStream) -> DataMatrix:
    """Single elongated Gaussian: N(0, S) with S equicorrelated at `rho`.

    `rho` must lie in (-1/(d-1), 1) for S to be positive definite.
    """
    if n < 1 or d < 2:
        raise InvalidArgumentError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    low = -1.0 / (d - 1)
    if not (low < rho < 1.0):
        raise InvalidArgumentError(
            f"rho must be in ({low:.6g}, 1) for d={d}, got {rho}"
        )
    lower = cholesky(equicorrelation(d, rho))
    z = stream.normals(n * d).reshape(n, d)
    values = z @ lower.T
    return DataMatrix(
        values,
        _feature_names(d),
        provenance=_provenance("correlated", stream, n=n, d=d, rho=rho),
    )


def default_multimodal_spec() -> MixtureSpec:
    """The pinned five-component positive-control layout (see presets)."""
    means = presets.MULTIMODAL_SCALE * presets.MULTIMODAL_SIGNS
    k, d = means.shape
    chol = np.broadcast_to(np.eye(d), (k, d, d)).copy()
    return MixtureSpec(means=means, chol_factors=chol, weights=presets.MULTIMODAL_WEIGHTS.copy())


def gen_multimodal(n: int, d: int, spec: MixtureSpec | None, stream: RngStream) -> DataMatrix:
    """Gaussian mixture with known component labels (positive control)."""
    if spec is None:
        spec = default_multimodal_spec()
    if n < 1:
        raise InvalidArgumentError(f"need n >= 1, got n={n}")
    if d != spec.d:
        raise InvalidArgumentError(f"spec is {spec.d}-dimensional, got d={d}")
    values = np.empty((n, d), dtype=np.float64)
    labels = np.empty(n, dtype=np.int64)
    for i in range(n):
        j = stream.weighted_index(spec.weights)
        labels[i] = j
        values[i] = mvn_sample(spec.means[j], spec.chol_factors[j], stream)
    return DataMatrix(
        values,
        _feature_names(d),
        truth_labels=labels,
        provenance=_provenance("multimodal", stream, n=n, d=d, k=spec.k),
    )


def gen_cytometer(n: int, stream: RngStream) -> DataMatrix:
    """Cytometer-like mixture: five anisotropic populations, unequal weights.

    Two populations are deliberately close, and every entry receives
    additive measurement noise, so the separation is realistic rather
    than perfect. Uses the pinned layout from presets (d = 6).
    """
    if n < 100:
        raise InvalidArgumentError(f"need n >= 100, got n={n}")
    means = presets.CYTOMETER_MEANS
    sds = presets.CYTOMETER_SDS
    weights = presets.CYTOMETER_WEIGHTS
    noise_sd = presets.CYTOMETER_NOISE_SD
    d = means.shape[1]
    values = np.empty((n, d), dtype=np.float64)
    labels = np.empty(n, dtype=np.int64)
    for i in range(n):
        j = stream.weighted_index(weights)
        labels[i] = j
        draw = means[j] + sds[j] * stream.normals(d)
        values[i] = draw + noise_sd * stream.normals(d)
    return DataMatrix(
        values,
        _feature_names(d),
        truth_labels=labels,
        provenance=_provenance("cytometer", stream, n=n, d=d, k=means.shape[0]),
    )


def dataset_csv_bytes(data: DataMatrix) -> bytes:
    """Serialize a DataMatrix to the interchange CSV: header f1..fd[,label].

    Floats use their shortest round-trip decimal representation with '.'
    as the separator, one observation per row.
    """
    header = list(data.feature_names)
    if data.truth_labels is not None:
        header.append("label")
    lines = [",".join(header)]
    for i in range(data.n):
        cells = [repr(float(v)) for v in data.values[i]]
        if data.truth_labels is not None:
            cells.append(str(int(data.truth_labels[i])))
        lines.append(",".join(cells))
    return ("\n".join(lines) + "\n").encode("utf-8")
