"""Pinned default parameters for the synthetic generators.

These constants are versioned configuration: the benchmark scenarios are
only reproducible because every mean, scale and weight below is a frozen
literal. Do not re-randomize them; change them only deliberately, together
with the acceptance bands that depend on them.
"""

from __future__ import annotations

import numpy as np

# Default desk scale for every synthetic scenario.
DEFAULT_N = 2000
DEFAULT_D = 6

# Equicorrelation level of the correlated-Gaussian null. Calibrated once
# so that the k=2 silhouette lands near the middle of the expected bands
# (~0.26 Euclidean, ~0.46 cosine), then pinned.
DEFAULT_RHO = 0.6

# ---------------------------------------------------------------------------
# Multimodal positive control: five spherical unit-covariance components,
# equal weights, means on a balanced sign pattern. The five rows below have
# pairwise Hamming distance >= 3 and every column sums to +-1, so each
# feature carries the same share of between-component variance and
# standardization is (almost exactly) a uniform rescale.
# ---------------------------------------------------------------------------
MULTIMODAL_SIGNS = np.array(
    [
        [+1, +1, +1, +1, +1, +1],
        [+1, -1, -1, +1, -1, -1],
        [-1, +1, -1, -1, +1, -1],
        [-1, -1, +1, -1, -1, +1],
        [+1, -1, +1, -1, +1, -1],
    ],
    dtype=np.float64,
)

# Per-coordinate amplitude of the sign pattern. With unit within-component
# SD this puts the closest pair of means ~19 apart (2 * scale * sqrt(3)),
# which reproduces the sharply separated five-cluster regime (silhouette
# around 0.82 after standardization).
MULTIMODAL_SCALE = 5.5

MULTIMODAL_WEIGHTS = np.full(5, 0.2)

# ---------------------------------------------------------------------------
# Cytometer-like mixture: five anisotropic components with unequal weights.
# Components 0-1 form one super-group, 2-4 the other; components 3 and 4 are
# deliberately close (their mean distance is ~2 pooled within-SDs and less
# than a third of every other pairwise distance). Additive measurement
# noise blurs all entries.
# ---------------------------------------------------------------------------
_SUPER = np.array([+1, +1, +1, +1, +1, +1], dtype=np.float64)
_SPLIT_A = np.array([+1, -1, +1, -1, +1, -1], dtype=np.float64)
_SPLIT_B = np.array([+1, -1, -1, +1, -1, +1], dtype=np.float64)
_CLOSE = np.array([+1, +1, -1, -1, +1, -1], dtype=np.float64)

_SUPER_A = 3.0   # super-group A offset per coordinate
_SUPER_B = 3.0 * (0.55 / 0.45)  # B offset balances the weighted grand mean
_GAP_A = 1.4     # component 0 vs 1 half-offset
_GAP_B = 1.3     # component 2 vs {3,4} half-offset
_GAP_CLOSE = 0.40  # component 3 vs 4 half-offset (the "close" pair)

CYTOMETER_MEANS = np.array(
    [
        +_SUPER_A * _SUPER + _GAP_A * _SPLIT_A,
        +_SUPER_A * _SUPER - _GAP_A * _SPLIT_A,
        -_SUPER_B * _SUPER + _GAP_B * _SPLIT_B,
        -_SUPER_B * _SUPER - _GAP_B * _SPLIT_B + _GAP_CLOSE * _CLOSE,
        -_SUPER_B * _SUPER - _GAP_B * _SPLIT_B - _GAP_CLOSE * _CLOSE,
    ]
)

CYTOMETER_SDS = np.array(
    [
        [1.20, 0.85, 1.05, 0.90, 1.10, 0.95],
        [0.90, 1.15, 0.80, 1.05, 0.95, 1.10],
        [1.05, 0.95, 1.15, 0.85, 1.00, 0.90],
        [1.10, 1.00, 0.90, 1.10, 0.85, 1.05],
        [0.95, 1.10, 1.00, 0.95, 1.15, 0.85],
    ]
)

CYTOMETER_WEIGHTS = np.array([0.30, 0.25, 0.20, 0.15, 0.10])

CYTOMETER_NOISE_SD = 0.05
