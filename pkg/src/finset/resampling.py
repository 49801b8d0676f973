"""Resampling schemes for weighted particle sets.

Five schemes that all turn M weighted particles into n equally weighted
copies, returned as per-particle copy counts:

- ``msv``: the minimum-sampling-variance scheme, i.e. the LMSE partition of
  the weights. Purely deterministic, consumes no randomness, and provably
  achieves the smallest sampling variance of any valid count vector.
- ``multinomial``: n independent inverse-CDF draws (n uniforms).
- ``residual``: deterministic floors, remainder drawn multinomially from the
  normalized residuals (n - L uniforms).
- ``systematic``: one uniform offset, grid (u + i)/n swept through the CDF
  (1 uniform).
- ``rsr``: residual systematic resampling, a single-sweep recursion with a
  fractional carry, equivalent to systematic at matching offset (1 uniform).

Sampling variance is the mean squared discrepancy between counts and their
real-valued expectations n*w, identical to the partition MSE metric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .partition import (
    Allocation,
    ValidationError,
    WeightVector,
    as_weights,
    _check_n,
    _floors_and_residuals,
    lmse_partition,
    mse,
)
from .rng import RngStream


@dataclass(frozen=True)
class ParticleSet:
    """States plus a WeightVector of matching length."""

    states: np.ndarray
    weights: WeightVector

    def __init__(self, states, weights):
        arr = np.atleast_1d(np.asarray(states, dtype=float))
        wv = as_weights(weights)
        if arr.ndim != 1:
            raise ValidationError("states must be 1-d")
        if arr.size != len(wv):
            raise ValidationError(
                f"length mismatch: {arr.size} states vs {len(wv)} weights"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "states", arr)
        object.__setattr__(self, "weights", wv)

    def __len__(self):
        return self.states.size


@dataclass(frozen=True)
class ResampleCounts:
    """How many times each particle appears in the resampled set."""

    counts: Allocation

    def __len__(self):
        return len(self.counts)

    @property
    def sizes(self) -> np.ndarray:
        return self.counts.sizes

    @property
    def total(self) -> int:
        return self.counts.total


def _weights_of(p) -> WeightVector:
    return p.weights if isinstance(p, ParticleSet) else as_weights(p)


def msv_resample(p, n, rng: RngStream | None = None) -> ResampleCounts:
    """Minimum-sampling-variance resampling; deterministic, rng untouched."""
    return ResampleCounts(lmse_partition(_weights_of(p), n))


def multinomial_resample(p, n, rng: RngStream) -> ResampleCounts:
    """n independent draws from the weight distribution via inverse CDF."""
    wv = _weights_of(p)
    n = _check_n(n)
    cdf = np.cumsum(wv.weights)
    cdf[-1] = 1.0
    idx = np.searchsorted(cdf, rng.next_uniforms(n), side="right")
    counts = np.bincount(idx, minlength=len(wv)).astype(np.int64)
    return ResampleCounts(Allocation(counts, n))


def systematic_resample(p, n, rng: RngStream) -> ResampleCounts:
    """One uniform offset, n evenly spaced grid points through the CDF."""
    wv = _weights_of(p)
    n = _check_n(n)
    return _systematic_counts(wv, n, rng.next_uniform())


def _systematic_counts(wv: WeightVector, n: int, u: float) -> ResampleCounts:
    cdf = np.cumsum(wv.weights)
    cdf[-1] = 1.0
    grid = (u + np.arange(n)) / n
    idx = np.searchsorted(cdf, grid, side="right")
    counts = np.bincount(idx, minlength=len(wv)).astype(np.int64)
    return ResampleCounts(Allocation(counts, n))


def residual_resample(p, n, rng: RngStream) -> ResampleCounts:
    """Deterministic floors plus multinomial draws on the residual mass."""
    wv = _weights_of(p)
    n = _check_n(n)
    counts, res = _floors_and_residuals(wv.weights, n)
    counts = counts.copy()
    remaining = n - int(counts.sum())
    if remaining > 0:
        cdf = np.cumsum(res)
        cdf /= cdf[-1]
        cdf[-1] = 1.0
        idx = np.searchsorted(cdf, rng.next_uniforms(remaining), side="right")
        counts += np.bincount(idx, minlength=len(wv))
    return ResampleCounts(Allocation(counts, n))


def rsr_resample(p, n, rng: RngStream) -> ResampleCounts:
    """Residual systematic resampling: one sweep with a fractional carry."""
    wv = _weights_of(p)
    n = _check_n(n)
    return _rsr_counts(wv, n, rng.next_uniform())


def _rsr_counts(wv: WeightVector, n: int, u0: float) -> ResampleCounts:
    # The per-bin carry recursion counts[m] = Floor((w[m] - u_m)*n) + 1,
    # u_{m+1} = u_m + counts[m]/n - w[m], telescopes to cumulative counts
    # ceil(n*cdf[m] - u0). Computing that form directly keeps the total at
    # exactly n regardless of rounding.
    cdf = np.cumsum(wv.weights)
    cdf[-1] = 1.0
    cum = np.ceil(n * cdf - u0).astype(np.int64)
    np.clip(cum, 0, n, out=cum)
    cum[-1] = n
    counts = np.diff(cum, prepend=0)
    return ResampleCounts(Allocation(counts, n))


def sampling_variance(c, w) -> float:
    """Sampling variance of resample counts: the MSE against n*w."""
    alloc = c.counts if isinstance(c, ResampleCounts) else c
    return mse(alloc, w)


def counts_to_indices(c) -> np.ndarray:
    """Expand counts into a sorted index list of length n."""
    alloc = c.counts if isinstance(c, ResampleCounts) else c
    return np.repeat(np.arange(len(alloc)), alloc.sizes)


RESAMPLERS = {
    "multinomial": multinomial_resample,
    "residual": residual_resample,
    "systematic": systematic_resample,
    "rsr": rsr_resample,
    "msv": msv_resample,
}
