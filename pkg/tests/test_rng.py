import numpy as np
import pytest

from finset.rng import RngStream, gammas, normals

# Frozen from the pinned SplitMix64 stream; any generator change must be
# deliberate since it invalidates every golden vector in the suite.
GOLDEN_SEED42 = [
    0.7415648787718233,
    0.1599103928769201,
    0.27860113025513866,
    0.34419071652363753,
    0.03803016854024621,
]


def test_golden_sequence():
    rng = RngStream(42)
    assert [rng.next_uniform() for _ in range(5)] == GOLDEN_SEED42


def test_same_seed_same_sequence():
    a, b = RngStream(123), RngStream(123)
    assert [a.next_uniform() for _ in range(100)] == [
        b.next_uniform() for _ in range(100)
    ]


def test_scalar_and_vector_draws_agree():
    a, b = RngStream(7), RngStream(7)
    scalars = [a.next_uniform() for _ in range(257)]
    assert list(b.next_uniforms(257)) == scalars


def test_vector_draws_continue_the_stream():
    a, b = RngStream(9), RngStream(9)
    a.next_uniforms(10)
    [b.next_uniform() for _ in range(10)]
    assert a.next_uniform() == b.next_uniform()


def test_range_half_open():
    u = RngStream(0).next_uniforms(10000)
    assert np.all(u >= 0.0) and np.all(u < 1.0)


def test_draw_counter():
    rng = RngStream(1)
    rng.next_uniform()
    rng.next_uniforms(41)
    assert rng.draws == 42


def test_spawn_deterministic_and_distinct():
    a = RngStream(5).spawn(3)
    b = RngStream(5).spawn(3)
    c = RngStream(5).spawn(4)
    assert a.seed == b.seed
    assert a.seed != c.seed
    assert a.next_uniform() == b.next_uniform()


def test_spawn_does_not_consume_parent():
    rng = RngStream(5)
    rng.spawn(0)
    assert rng.draws == 0


def test_normal_moments():
    x = normals(RngStream(3), 200_000)
    assert x.mean() == pytest.approx(0.0, abs=0.01)
    assert x.var() == pytest.approx(1.0, rel=0.02)


def test_normals_odd_size():
    assert normals(RngStream(3), 7).shape == (7,)


def test_gamma_integer_shape_moments():
    g = gammas(RngStream(3), 3, 2, 200_000)
    assert np.all(g > 0)
    assert g.mean() == pytest.approx(6.0, rel=0.02)
    assert g.var() == pytest.approx(12.0, rel=0.05)


def test_gamma_fractional_shape_moments():
    g = gammas(RngStream(3), 2.5, 1.0, 50_000)
    assert g.mean() == pytest.approx(2.5, rel=0.03)
    assert g.var() == pytest.approx(2.5, rel=0.06)


def test_gamma_reproducible():
    a = gammas(RngStream(17), 3, 2, 50)
    b = gammas(RngStream(17), 3, 2, 50)
    assert np.array_equal(a, b)


def test_gamma_rejects_bad_params():
    with pytest.raises(ValueError):
        gammas(RngStream(0), 0, 1, 1)
    with pytest.raises(ValueError):
        gammas(RngStream(0), 1, -1, 1)
