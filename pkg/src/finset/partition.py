"""Least-mean-square-error integer partitioning of N units across M weighted bins.

Given nonnegative proportions w summing to 1 and an integer total n, the
partition assigns each bin either Floor(n*w[m]) or Floor(n*w[m]) + 1 units,
handing the surplus units to the bins with the largest fractional residuals.
That allocation minimizes the mean squared discrepancy (1/M) * sum (size[m]
- n*w[m])^2 over all nonnegative integer allocations summing to n.

Also provided: the MSE/MAE discrepancy metrics, a strict |size - n*w| < 1
bound check, a single-unit-transfer local-optimality check, and an exhaustive
brute-force minimizer used as an independent test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Inputs must sum to 1 within this tolerance; they are then renormalized so
# downstream arithmetic sees an exact-unit simplex point.
WEIGHT_SUM_TOL = 1e-9

# brute_force_partition refuses instances with more compositions than this.
BRUTE_FORCE_LIMIT = 10**7


class ValidationError(ValueError):
    """Invalid weights, allocations, or arguments."""


@dataclass(frozen=True)
class WeightVector:
    """M nonnegative proportions summing to one.

    Entries must be >= 0 and sum to 1 within ``WEIGHT_SUM_TOL``; the stored
    vector is renormalized by its sum so filters feeding in near-normalized
    weights get consistent treatment.
    """

    weights: np.ndarray

    def __init__(self, weights):
        arr = np.atleast_1d(np.asarray(weights, dtype=float))
        if arr.ndim != 1 or arr.size < 1:
            raise ValidationError("weights must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0])
            raise ValidationError(f"non-finite weight {arr[bad]} at index {bad}")
        neg = np.flatnonzero(arr < 0)
        if neg.size:
            i = int(neg[0])
            raise ValidationError(f"negative weight {arr[i]} at index {i}")
        total = float(arr.sum())
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValidationError(
                f"weights sum to {total!r}, expected 1 within {WEIGHT_SUM_TOL}"
            )
        arr = arr / total
        arr.flags.writeable = False
        object.__setattr__(self, "weights", arr)

    def __len__(self):
        return self.weights.size

    @property
    def m(self) -> int:
        return self.weights.size


@dataclass(frozen=True)
class Allocation:
    """M nonnegative integer bin sizes summing exactly to ``total``."""

    sizes: np.ndarray
    total: int

    def __init__(self, sizes, total=None):
        arr = np.atleast_1d(np.asarray(sizes))
        if arr.ndim != 1 or arr.size < 1:
            raise ValidationError("sizes must be a non-empty 1-d sequence")
        if not np.issubdtype(arr.dtype, np.integer):
            as_int = np.asarray(arr, dtype=np.int64)
            if not np.array_equal(as_int, arr):
                raise ValidationError("sizes must be integers")
            arr = as_int
        arr = arr.astype(np.int64)
        if np.any(arr < 0):
            i = int(np.flatnonzero(arr < 0)[0])
            raise ValidationError(f"negative size {arr[i]} at index {i}")
        s = int(arr.sum())
        if total is None:
            total = s
        total = int(total)
        if s != total:
            raise ValidationError(f"sizes sum to {s}, declared total is {total}")
        if total < 1:
            raise ValidationError("total must be a positive integer")
        arr.flags.writeable = False
        object.__setattr__(self, "sizes", arr)
        object.__setattr__(self, "total", total)

    def __len__(self):
        return self.sizes.size


@dataclass(frozen=True)
class ResidualVector:
    """Fractional residuals w[m] - Floor(n*w[m])/n, each in [0, 1/n)."""

    residuals: np.ndarray

    def __init__(self, residuals):
        arr = np.atleast_1d(np.asarray(residuals, dtype=float))
        arr.flags.writeable = False
        object.__setattr__(self, "residuals", arr)

    def __len__(self):
        return self.residuals.size


def as_weights(w) -> WeightVector:
    return w if isinstance(w, WeightVector) else WeightVector(w)


def as_allocation(a) -> Allocation:
    return a if isinstance(a, Allocation) else Allocation(a)


def _check_n(n) -> int:
    if n != int(n) or int(n) < 1:
        raise ValidationError(f"n must be a positive integer, got {n!r}")
    return int(n)


def _floors_and_residuals(weights: np.ndarray, n: int):
    # The residual is defined from the same floor value, so the pair stays
    # internally consistent even when n*w sits on an integer boundary in
    # double precision.
    floors = np.floor(n * weights)
    res = weights - floors / n
    return floors.astype(np.int64), res


def lmse_partition(w, n) -> Allocation:
    """Partition n units across bins proportionally to w, minimizing MSE.

    Floors every expectation n*w[m], then gives one extra unit to each of the
    bins holding the largest fractional residuals until the total reaches n.
    Residual ties are broken by ascending index, so the output is
    bit-reproducible. O(M log M).
    """
    wv = as_weights(w)
    n = _check_n(n)
    sizes, res = _floors_and_residuals(wv.weights, n)
    surplus = n - int(sizes.sum())
    if surplus > 0:
        # stable sort on descending residual keeps ascending index among ties
        order = np.argsort(-res, kind="stable")
        sizes = sizes.copy()
        sizes[order[:surplus]] += 1
    return Allocation(sizes, n)


def residuals(w, n) -> ResidualVector:
    """Fractional residuals w[m] - Floor(n*w[m])/n."""
    wv = as_weights(w)
    n = _check_n(n)
    _, res = _floors_and_residuals(wv.weights, n)
    return ResidualVector(res)


def _discrepancy(a: Allocation, wv: WeightVector) -> np.ndarray:
    if len(a) != len(wv):
        raise ValidationError(
            f"length mismatch: {len(a)} sizes vs {len(wv)} weights"
        )
    return a.sizes - a.total * wv.weights


def mse(a, w) -> float:
    """Mean squared discrepancy (1/M) * sum (size[m] - N*w[m])^2."""
    d = _discrepancy(as_allocation(a), as_weights(w))
    return float(np.mean(d * d))


def mae(a, w) -> float:
    """Mean absolute discrepancy (1/M) * sum |size[m] - N*w[m]|."""
    d = _discrepancy(as_allocation(a), as_weights(w))
    return float(np.mean(np.abs(d)))


def check_theory1_bound(a, w) -> bool:
    """True iff |size[m] - N*w[m]| < 1 strictly, for every bin."""
    d = _discrepancy(as_allocation(a), as_weights(w))
    return bool(np.all(np.abs(d) < 1.0))


def check_local_optimality(a, w, tol: float = 1e-12) -> bool:
    """True iff no single-unit transfer between bins can lower the MSE.

    For a transfer of one unit from donor q (size >= 1) to receiver p, the
    MSE changes by (2/M) * (1 + d[p] - d[q]) with d = sizes - N*w. The check
    passes when every such change exceeds -tol.
    """
    av = as_allocation(a)
    wv = as_weights(w)
    d = _discrepancy(av, wv)
    m = len(d)
    if m == 1:
        return True
    donors = av.sizes >= 1
    if not donors.any():
        return True
    delta = (2.0 / m) * (1.0 + d[:, None] - d[None, :])
    mask = donors[None, :] & ~np.eye(m, dtype=bool)
    return bool(np.all(delta[mask] > -tol))


@lru_cache(maxsize=64)
def _compositions(n: int, m: int) -> np.ndarray:
    """All nonnegative integer m-part compositions of n, shape (C, m)."""
    if m == 1:
        return np.array([[n]], dtype=np.int32)
    blocks = []
    for first in range(n + 1):
        rest = _compositions(n - first, m - 1)
        head = np.full((rest.shape[0], 1), first, dtype=np.int32)
        blocks.append(np.hstack([head, rest]))
    return np.vstack(blocks)


def brute_force_partition(w, n) -> tuple[Allocation, float]:
    """Exhaustively minimize the MSE over all compositions of n into M parts.

    Independent oracle for the partition routine; rejects instances with more
    than ``BRUTE_FORCE_LIMIT`` compositions. Ties go to the lexicographically
    smallest composition.
    """
    wv = as_weights(w)
    n = _check_n(n)
    m = len(wv)
    count = math.comb(n + m - 1, m - 1)
    if count > BRUTE_FORCE_LIMIT:
        raise ValidationError(
            f"{count} compositions exceed the enumeration limit "
            f"{BRUTE_FORCE_LIMIT}; shrink n or the number of bins"
        )
    comps = _compositions(n, m)
    d = comps - n * wv.weights
    costs = np.mean(d * d, axis=1)
    best = int(np.argmin(costs))
    return Allocation(comps[best].copy(), n), float(costs[best])
