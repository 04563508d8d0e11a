"""Small dense linear algebra for the generators and PCA.

Everything here operates on plain float64 numpy arrays. The eigensolver
is a cyclic Jacobi iteration: for the feature counts this package deals
with (d of a few dozen at most) it is unconditionally stable, trivially
verifiable against its own reconstruction, and bit-reproducible.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidArgumentError, NumericFailureError

# Jacobi sweep controls: stop once the off-diagonal Frobenius mass falls
# below _JACOBI_TOL relative to the input scale.
_JACOBI_TOL = 1e-12
_JACOBI_MAX_SWEEPS = 100


def covariance(x: np.ndarray) -> np.ndarray:
    """Population covariance S = XᵀX / n of an already column-centered matrix.

    The contraction is done with einsum (not BLAS) so the summation order,
    and therefore the result, is independent of thread count.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2:
        raise InvalidArgumentError(f"expected a 2-D matrix, got ndim={x.ndim}")
    n = x.shape[0]
    if n < 2:
        raise InvalidArgumentError(f"covariance needs at least 2 rows, got {n}")
    return np.einsum("ij,ik->jk", x, x) / n


def cholesky(s: np.ndarray) -> np.ndarray:
    """Lower-triangular L with L Lᵀ = S for symmetric positive-definite S.

    Raises NumericFailureError naming the failing pivot index when S is
    not positive definite.
    """
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {s.shape}")
    d = s.shape[0]
    scale = max(1.0, float(np.abs(np.diag(s)).max(initial=0.0)))
    lower = np.zeros((d, d), dtype=np.float64)
    for j in range(d):
        pivot = s[j, j] - lower[j, :j] @ lower[j, :j]
        if pivot <= _JACOBI_TOL * scale:
            raise NumericFailureError(
                f"matrix is not positive definite: pivot {j} = {pivot:.6e}"
            )
        ljj = math.sqrt(pivot)
        lower[j, j] = ljj
        if j + 1 < d:
            lower[j + 1 :, j] = (s[j + 1 :, j] - lower[j + 1 :, :j] @ lower[j, :j]) / ljj
    return lower


def sym_eigen(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues descending, eigenvectors as columns). Each
    eigenvector is sign-fixed so its largest-magnitude entry is positive
    (first such entry on ties), which keeps downstream plots stable
    across runs and platforms.
    """
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {s.shape}")
    scale = max(1.0, float(np.abs(s).max(initial=0.0)))
    if float(np.abs(s - s.T).max(initial=0.0)) > 1e-9 * scale:
        raise InvalidArgumentError("matrix is not symmetric within 1e-9")

    d = s.shape[0]
    a = (s + s.T) / 2.0
    v = np.eye(d, dtype=np.float64)
    threshold = _JACOBI_TOL * max(1.0, float(np.linalg.norm(s)))

    for _ in range(_JACOBI_MAX_SWEEPS):
        off = math.sqrt(2.0 * float(np.sum(np.tril(a, -1) ** 2)))
        if off <= threshold:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(tau * tau + 1.0))
                else:
                    t = -1.0 / (-tau + math.sqrt(tau * tau + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                sn = t * c
                # A <- Jᵀ A J with J the rotation in the (p, q) plane.
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - sn * col_q
                a[:, q] = sn * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - sn * row_q
                a[q, :] = sn * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - sn * vec_q
                v[:, q] = sn * vec_p + c * vec_q

    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = v[:, order]
    for j in range(d):
        lead = int(np.argmax(np.abs(vectors[:, j])))
        if vectors[lead, j] < 0.0:
            vectors[:, j] = -vectors[:, j]
    return values, vectors
