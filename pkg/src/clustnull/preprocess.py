"""Ingestion and feature scaling.

Loading is strict: a missing column or an unparsable cell is a hard error
with coordinates, never silently imputed. Standardization uses the
population (divide-by-n) standard deviation so z-scores are bit-stable
and consistent with the covariance convention used elsewhere.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .datagen import DataMatrix
from .errors import InvalidArgumentError

# A feature with population SD at or below this (relative) level is
# treated as constant and rejected.
_ZERO_VARIANCE_TOL = 1e-12

# Rows whose L2 norm falls below this cannot be given a direction.
_NEAR_ZERO_ROW_TOL = 1e-12


@dataclass
class StandardizationModel:
    """Per-feature centering and scaling learned by `standardize`."""

    mean: np.ndarray   # (d,)
    scale: np.ndarray  # (d,) population standard deviations, all > 0


def load_csv(
    path: str | Path,
    feature_names: list[str] | None = None,
    label_column: str = "label",
) -> DataMatrix:
    """Load numeric columns from a CSV file with a header row.

    `feature_names` selects columns by name, in the given order; when
    omitted, every column except `label_column` is used in file order.
    A `label_column`, when present and not selected as a feature, is
    parsed as integer truth labels. Parse errors cite the 1-based data
    row (header excluded) and the column name.
    """
    path = Path(path)
    if not path.exists():
        raise InvalidArgumentError(f"file not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InvalidArgumentError(f"{path}: empty file, expected a header row") from None
        header = [h.strip() for h in header]
        if feature_names is None:
            feature_names = [h for h in header if h != label_column]
            if not feature_names:
                raise InvalidArgumentError(f"{path}: no feature columns in header")
        col_index = {}
        for name in feature_names:
            if name not in header:
                raise InvalidArgumentError(f"{path}: column '{name}' not found in header")
            col_index[name] = header.index(name)
        label_index = None
        if label_column in header and label_column not in feature_names:
            label_index = header.index(label_column)

        rows: list[list[float]] = []
        labels: list[int] = []
        for rownum, record in enumerate(reader, start=1):
            if not record or (len(record) == 1 and record[0].strip() == ""):
                continue  # ignore trailing blank lines
            parsed = []
            for name in feature_names:
                idx = col_index[name]
                cell = record[idx].strip() if idx < len(record) else ""
                try:
                    value = float(cell)
                except ValueError:
                    value = float("nan")
                if not np.isfinite(value):
                    raise InvalidArgumentError(
                        f"{path}: row {rownum}, column '{name}': cannot parse {cell!r} as a number"
                    )
                parsed.append(value)
            rows.append(parsed)
            if label_index is not None:
                cell = record[label_index].strip() if label_index < len(record) else ""
                try:
                    labels.append(int(cell))
                except ValueError:
                    raise InvalidArgumentError(
                        f"{path}: row {rownum}, column '{label_column}': cannot parse {cell!r} as an integer"
                    ) from None

    if not rows:
        raise InvalidArgumentError(f"{path}: no data rows")
    values = np.array(rows, dtype=np.float64)
    truth = np.array(labels, dtype=np.int64) if label_index is not None else None
    return DataMatrix(
        values,
        list(feature_names),
        truth_labels=truth,
        provenance={"generator": "csv", "path": str(path)},
    )


def standardize(data: DataMatrix) -> tuple[DataMatrix, StandardizationModel]:
    """Z-score each feature: mean 0, population SD 1.

    A (near-)constant feature is an error naming the feature, since it
    carries no information and would blow up the scaling.
    """
    values = data.values
    mean = values.mean(axis=0)
    scale = values.std(axis=0)  # population (ddof=0)
    for j, name in enumerate(data.feature_names):
        if scale[j] <= _ZERO_VARIANCE_TOL * max(1.0, abs(float(mean[j]))):
            raise InvalidArgumentError(f"feature '{name}' has zero variance")
    z = (values - mean) / scale
    out = DataMatrix(
        z,
        list(data.feature_names),
        truth_labels=None if data.truth_labels is None else data.truth_labels.copy(),
        provenance={**data.provenance, "standardized": True},
    )
    return out, StandardizationModel(mean=mean, scale=scale)


def unit_rows(values: np.ndarray) -> np.ndarray:
    """Scale every row of a plain array to unit L2 norm."""
    values = np.asarray(values, dtype=np.float64)
    norms = np.sqrt((values * values).sum(axis=1))
    bad = np.nonzero(norms < _NEAR_ZERO_ROW_TOL)[0]
    if bad.size:
        raise InvalidArgumentError(
            f"row {int(bad[0])} has near-zero norm {norms[bad[0]]:.3e}; "
            "it has no direction and must be excluded before spherical analysis"
        )
    return values / norms[:, None]


def normalize_rows(data: DataMatrix) -> DataMatrix:
    """Unit-normalize every observation (the spherical working geometry)."""
    return DataMatrix(
        unit_rows(data.values),
        list(data.feature_names),
        truth_labels=None if data.truth_labels is None else data.truth_labels.copy(),
        provenance={**data.provenance, "row_normalized": True},
    )
