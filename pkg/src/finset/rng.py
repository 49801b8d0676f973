"""Deterministic seedable uniform stream and the samplers built on it.

The generator is pinned project-wide to counter-based SplitMix64: the i-th
variate depends only on (seed, i), so scalar and vectorized draws agree
bit-for-bit and golden test vectors are portable. Gaussian draws use
Box-Muller; Gamma draws use a sum of exponentials for integer shapes and
Marsaglia-Tsang acceptance sampling otherwise. Everything consumes uniforms
from one explicit stream, so runs are reproducible from the seed alone.
"""

from __future__ import annotations

import math

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_INV_2_53 = 2.0**-53


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


class RngStream:
    """SplitMix64 uniform stream over [0, 1).

    Single-owner: concurrent tasks must each derive their own stream via
    :meth:`spawn`. ``draws`` counts uniforms consumed so far, which the
    resampling tests use to pin each scheme's exact consumption.
    """

    __slots__ = ("seed", "_count")

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK
        self._count = 0

    @property
    def draws(self) -> int:
        return self._count

    def next_uniform(self) -> float:
        self._count += 1
        z = (self.seed + self._count * _GOLDEN) & _MASK
        return (_mix(z) >> 11) * _INV_2_53

    def next_uniforms(self, k: int) -> np.ndarray:
        """k uniforms as a float64 array; identical to k scalar draws."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        idx = np.arange(self._count + 1, self._count + k + 1, dtype=np.uint64)
        self._count += k
        z = np.uint64(self.seed) + idx * np.uint64(_GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
        return (z >> np.uint64(11)).astype(np.float64) * _INV_2_53

    def spawn(self, key: int) -> "RngStream":
        """Derive an independent child stream from this stream's seed."""
        child = _mix((self.seed ^ _mix((int(key) + 1) * _GOLDEN & _MASK)) & _MASK)
        return RngStream(child)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, draws={self._count})"


def normals(rng: RngStream, size: int) -> np.ndarray:
    """size standard-normal draws via Box-Muller (2*ceil(size/2) uniforms)."""
    if size == 0:
        return np.empty(0)
    pairs = (size + 1) // 2
    u1 = rng.next_uniforms(pairs)
    u2 = rng.next_uniforms(pairs)
    r = np.sqrt(-2.0 * np.log1p(-u1))  # 1-u1 in (0,1], log is safe
    theta = 2.0 * np.pi * u2
    return np.concatenate([r * np.cos(theta), r * np.sin(theta)])[:size]


def gammas(rng: RngStream, shape: float, scale: float, size: int) -> np.ndarray:
    """size Gamma(shape, scale) draws (scale parametrization, mean shape*scale)."""
    if shape <= 0 or scale <= 0:
        raise ValueError("shape and scale must be positive")
    if size == 0:
        return np.empty(0)
    if float(shape).is_integer():
        # sum of `shape` exponentials, fully vectorized
        k = int(shape)
        u = rng.next_uniforms(k * size).reshape(k, size)
        return -scale * np.log1p(-u).sum(axis=0)
    return np.array([_gamma_one(rng, float(shape)) * scale for _ in range(size)])


def _gamma_one(rng: RngStream, shape: float) -> float:
    # Marsaglia-Tsang; the shape < 1 case boosts from shape + 1.
    if shape < 1.0:
        u = rng.next_uniform()
        while u <= 0.0:
            u = rng.next_uniform()
        return _gamma_one(rng, shape + 1.0) * u ** (1.0 / shape)
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    while True:
        x = float(normals(rng, 1)[0])
        v = 1.0 + c * x
        if v <= 0.0:
            continue
        v = v * v * v
        u = rng.next_uniform()
        if u < 1.0 - 0.0331 * x**4:
            return d * v
        if u > 0.0 and math.log(u) < 0.5 * x * x + d * (1.0 - v + math.log(v)):
            return d * v
