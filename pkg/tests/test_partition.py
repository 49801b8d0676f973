import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from finset.partition import (
    Allocation,
    ValidationError,
    WeightVector,
    brute_force_partition,
    check_local_optimality,
    check_theory1_bound,
    lmse_partition,
    mae,
    mse,
    residuals,
)


class TestWeightVector:
    def test_renormalizes_within_tolerance(self):
        w = WeightVector([0.5, 0.5 + 5e-10])
        assert w.weights.sum() == pytest.approx(1.0, abs=1e-15)

    def test_rejects_negative_entry_with_index(self):
        with pytest.raises(ValidationError, match="index 1"):
            WeightVector([0.5, -0.1, 0.6])

    def test_rejects_bad_sum(self):
        with pytest.raises(ValidationError, match="sum"):
            WeightVector([0.5, 0.6])

    def test_rejects_empty(self):
        with pytest.raises(ValidationError):
            WeightVector([])


class TestAllocation:
    def test_sum_mismatch(self):
        with pytest.raises(ValidationError):
            Allocation([1, 2], total=4)

    def test_rejects_negative(self):
        with pytest.raises(ValidationError):
            Allocation([3, -1], total=2)

    def test_rejects_non_integer(self):
        with pytest.raises(ValidationError):
            Allocation([1.5, 0.5])


class TestLmsePartition:
    def test_exact_integer_expectations(self):
        assert list(lmse_partition([0.2, 0.3, 0.5], 10).sizes) == [2, 3, 5]

    def test_surplus_goes_to_largest_residual(self):
        # floors are (2,1,1); largest residual 0.14 at index 1 gets the extra unit
        assert list(lmse_partition([0.46, 0.34, 0.20], 5).sizes) == [2, 2, 1]

    def test_single_bin(self):
        assert list(lmse_partition([1.0], 7).sizes) == [7]

    def test_tie_break_ascending_index(self):
        # all residuals tie at 0.125; first two indices win
        assert list(lmse_partition([0.25] * 4, 2).sizes) == [1, 1, 0, 0]

    def test_invalid_weights_rejected(self):
        with pytest.raises(ValidationError):
            lmse_partition([0.5, 0.6], 4)

    def test_invalid_n_rejected(self):
        with pytest.raises(ValidationError):
            lmse_partition([1.0], 0)

    def test_n_smaller_than_positive_weight_count(self):
        a = lmse_partition([0.4, 0.3, 0.3], 1)
        assert a.sizes.sum() == 1


class TestResiduals:
    def test_fractional_parts(self):
        r = residuals([0.46, 0.34, 0.20], 5).residuals
        assert r == pytest.approx([0.06, 0.14, 0.0], abs=1e-12)

    def test_zero_for_exact(self):
        assert residuals([0.2, 0.3, 0.5], 10).residuals == pytest.approx([0, 0, 0])

    def test_single(self):
        assert residuals([1.0], 3).residuals == pytest.approx([0.0])


class TestMetrics:
    def test_mse_zero_on_exact(self):
        assert mse([2, 3, 5], [0.2, 0.3, 0.5]) == pytest.approx(0.0)
        assert mse([7], [1.0]) == pytest.approx(0.0)

    def test_mse_value(self):
        assert mse([2, 2, 1], [0.46, 0.34, 0.20]) == pytest.approx(0.06)

    def test_mae_values(self):
        assert mae([2, 3, 5], [0.2, 0.3, 0.5]) == pytest.approx(0.0)
        assert mae([2, 2, 1], [0.46, 0.34, 0.20]) == pytest.approx(0.2)
        assert mae([0, 2], [0.5, 0.5]) == pytest.approx(1.0)

    def test_length_mismatch(self):
        with pytest.raises(ValidationError, match="mismatch"):
            mse([1, 1], [1.0])


class TestBoundCheck:
    def test_partition_output_passes(self):
        a = lmse_partition([0.46, 0.34, 0.20], 5)
        assert check_theory1_bound(a, [0.46, 0.34, 0.20])

    def test_unit_discrepancy_fails(self):
        assert not check_theory1_bound([2, 0], [0.5, 0.5])

    def test_zero_discrepancy_passes(self):
        assert check_theory1_bound([1, 1], [0.5, 0.5])


class TestLocalOptimality:
    def test_partition_output_is_stable(self):
        a = lmse_partition([0.46, 0.34, 0.20], 5)
        assert check_local_optimality(a, [0.46, 0.34, 0.20])

    def test_improvable_allocation_fails(self):
        assert not check_local_optimality([0, 2], [0.5, 0.5])

    def test_single_bin_trivially_stable(self):
        assert check_local_optimality([7], [1.0])


class TestBruteForce:
    def test_small_instance(self):
        alloc, cost = brute_force_partition([0.46, 0.34, 0.20], 5)
        assert list(alloc.sizes) == [2, 2, 1]
        assert cost == pytest.approx(0.06)

    def test_trivial_instances(self):
        alloc, cost = brute_force_partition([0.5, 0.5], 2)
        assert list(alloc.sizes) == [1, 1] and cost == pytest.approx(0.0)
        alloc, cost = brute_force_partition([1.0], 4)
        assert list(alloc.sizes) == [4] and cost == pytest.approx(0.0)

    def test_scale_guard(self):
        w = np.full(20, 1 / 20)
        with pytest.raises(ValidationError, match="shrink"):
            brute_force_partition(w, 200)


weights_strategy = st.lists(
    st.floats(0.0, 1.0, allow_nan=False), min_size=1, max_size=25
).filter(lambda xs: sum(xs) > 1e-6)


@settings(max_examples=200, deadline=None)
@given(weights_strategy, st.integers(1, 500))
def test_partition_invariants(raw, n):
    w = np.asarray(raw) / sum(raw)
    a = lmse_partition(w, n)
    assert int(a.sizes.sum()) == n
    assert check_theory1_bound(a, w)
    assert check_local_optimality(a, w)
    floors = np.floor(n * WeightVector(w).weights)
    assert np.all(a.sizes >= floors) and np.all(a.sizes <= floors + 1)
    # zero-weight bins receive nothing
    assert np.all(a.sizes[WeightVector(w).weights == 0.0] == 0)
    # determinism
    assert np.array_equal(a.sizes, lmse_partition(w, n).sizes)


@settings(max_examples=100, deadline=None)
@given(weights_strategy.filter(lambda xs: len(xs) <= 4), st.integers(1, 10))
def test_partition_matches_brute_force(raw, n):
    w = np.asarray(raw) / sum(raw)
    a = lmse_partition(w, n)
    _, best = brute_force_partition(w, n)
    assert mse(a, w) <= best + 1e-12


def test_exactness_when_expectations_integral():
    rng = np.random.default_rng(11)
    for _ in range(50):
        m = int(rng.integers(1, 10))
        n = int(rng.integers(1, 20)) * m
        counts = rng.multinomial(n, np.full(m, 1 / m))
        w = counts / n
        a = lmse_partition(w, n)
        assert np.array_equal(a.sizes, counts)
        assert mse(a, w) == pytest.approx(0.0, abs=1e-18)
