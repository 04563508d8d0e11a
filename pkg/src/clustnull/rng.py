"""Deterministic, seedable random streams.

Every stochastic step in the package (data generation, k-means++ seeding,
restart scheduling) draws from an :class:`RngStream`. A stream is fully
identified by ``(master_seed, stream_index)``: the same pair replays the
same variate sequence on every platform and Python version, because the
generator is implemented here with pinned constants rather than delegated
to a library whose streams may change between releases.

Generator: xoshiro256** (Blackman & Vigna), period 2**256 - 1, seeded
through a SplitMix64 expansion of ``hash(master_seed, stream_index)``.
Child streams are derived by hashing, never by jumping a shared sequence,
so derivation is independent of thread scheduling.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidArgumentError

_MASK64 = (1 << 64) - 1

# SplitMix64 constants (Steele, Lea & Flood).
_SM_GAMMA = 0x9E3779B97F4A7C15
_SM_MUL1 = 0xBF58476D1CE4E5B9
_SM_MUL2 = 0x94D049BB133111EB

# Initial absorb state for the stream-derivation hash (first 64 fraction
# bits of pi; an arbitrary, pinned, non-zero constant).
_HASH_IV = 0x243F6A8885A308D3


def _sm_finalize(z: int) -> int:
    """SplitMix64 output scrambler (full-avalanche 64-bit finalizer)."""
    z = ((z ^ (z >> 30)) * _SM_MUL1) & _MASK64
    z = ((z ^ (z >> 27)) * _SM_MUL2) & _MASK64
    return z ^ (z >> 31)


def _sm_next(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state; return (new_state, output word)."""
    state = (state + _SM_GAMMA) & _MASK64
    return state, _sm_finalize(state)


def mix64(*words: int) -> int:
    """Pinned hash of any number of 64-bit words, used for stream derivation.

    Absorbs each word into a running state and applies the SplitMix64
    finalizer after every absorption.
    """
    h = _HASH_IV
    for w in words:
        h = _sm_finalize(((h + _SM_GAMMA) & _MASK64) ^ (w & _MASK64))
    return h


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class RngStream:
    """One independent random stream, identified by (master_seed, stream_index).

    A stream is single-owner: create as many streams as there are logical
    runs and never share one across concurrent consumers. Use
    :meth:`child` to derive sub-streams (restarts, per-k sweeps, ...)
    without consuming any state from the parent.
    """

    __slots__ = ("master_seed", "stream_index", "_s0", "_s1", "_s2", "_s3", "_spare")

    def __init__(self, master_seed: int, stream_index: int = 0):
        if stream_index < 0:
            raise InvalidArgumentError(f"stream_index must be non-negative, got {stream_index}")
        self.master_seed = master_seed & _MASK64
        self.stream_index = stream_index & _MASK64
        state = mix64(self.master_seed, self.stream_index)
        state, self._s0 = _sm_next(state)
        state, self._s1 = _sm_next(state)
        state, self._s2 = _sm_next(state)
        state, self._s3 = _sm_next(state)
        if self._s0 == self._s1 == self._s2 == self._s3 == 0:
            self._s0 = 1  # xoshiro state must not be all zero
        self._spare: float | None = None

    def child(self, index: int) -> "RngStream":
        """Derive an independent sub-stream; does not advance this stream."""
        return RngStream(self.master_seed, mix64(self.stream_index, index & _MASK64))

    def _next64(self) -> int:
        """xoshiro256** step; returns a uniform 64-bit word."""
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def uniform01(self) -> float:
        """Next uniform variate in [0, 1), using the top 53 bits."""
        return (self._next64() >> 11) * 2.0**-53

    def uniforms(self, count: int) -> np.ndarray:
        """Array of `count` uniform [0, 1) variates."""
        return np.array([self.uniform01() for _ in range(count)], dtype=np.float64)

    def standard_normal(self) -> float:
        """Next N(0, 1) variate (Marsaglia polar transform, pair cached)."""
        if self._spare is not None:
            value, self._spare = self._spare, None
            return value
        while True:
            u = 2.0 * self.uniform01() - 1.0
            v = 2.0 * self.uniform01() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                break
        factor = math.sqrt(-2.0 * math.log(s) / s)
        self._spare = v * factor
        return u * factor

    def normals(self, count: int) -> np.ndarray:
        """Array of `count` independent N(0, 1) variates."""
        return np.array([self.standard_normal() for _ in range(count)], dtype=np.float64)

    def randint(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection sampling."""
        if n <= 0:
            raise InvalidArgumentError(f"randint bound must be positive, got {n}")
        if n == 1:
            return 0
        limit = _MASK64 + 1 - ((_MASK64 + 1) % n)
        while True:
            x = self._next64()
            if x < limit:
                return x % n

    def weighted_index(self, weights: np.ndarray) -> int:
        """Index sampled with probability proportional to `weights`.

        Zero-weight entries are never selected. Raises if no weight is
        positive.
        """
        weights = np.asarray(weights, dtype=np.float64)
        cum = np.cumsum(weights)
        total = float(cum[-1]) if cum.size else 0.0
        if total <= 0.0 or not math.isfinite(total):
            raise InvalidArgumentError("weighted_index needs at least one positive weight")
        r = self.uniform01() * total
        idx = int(np.searchsorted(cum, r, side="right"))
        if idx >= weights.size:
            idx = weights.size - 1
        while idx > 0 and weights[idx] <= 0.0:
            idx -= 1
        return idx


def mvn_sample(mean: np.ndarray, chol_lower: np.ndarray, stream: RngStream) -> np.ndarray:
    """Multivariate normal draw: mean + L z with z a vector of standard normals.

    `chol_lower` must be a valid Cholesky factor (lower-triangular) of the
    target covariance.
    """
    mean = np.asarray(mean, dtype=np.float64)
    chol_lower = np.asarray(chol_lower, dtype=np.float64)
    d = mean.shape[0]
    if mean.ndim != 1 or chol_lower.shape != (d, d):
        raise InvalidArgumentError(
            f"dimension mismatch: mean has {mean.shape}, chol_lower has {chol_lower.shape}"
        )
    z = stream.normals(d)
    return mean + chol_lower @ z
