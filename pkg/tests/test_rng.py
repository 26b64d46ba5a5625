import numpy as np

from attrlimits import rng


def test_open_unit_interval_and_deterministic():
    reps = np.arange(200_000)
    u = rng.uniforms(11, reps, 0)
    assert u.min() > 0.0 and u.max() < 1.0
    assert np.array_equal(u, rng.uniforms(11, reps, 0))


def test_counter_addressing_is_partition_free():
    full = rng.uniforms(5, np.arange(1000), 3)
    assert np.array_equal(full[700:], rng.uniforms(5, np.arange(700, 1000), 3))
    assert rng.uniforms(5, np.array([417]), 3)[0] == full[417]


def test_streams_differ():
    reps = np.arange(1000)
    a = rng.uniforms(1, reps, 0)
    assert not np.array_equal(a, rng.uniforms(2, reps, 0))
    assert not np.array_equal(a, rng.uniforms(1, reps, 1))


def test_large_and_negative_seeds():
    reps = np.arange(10)
    assert np.array_equal(rng.uniforms(-1, reps, 0), rng.uniforms(2**64 - 1, reps, 0))
    assert rng.uniforms(2**63 + 12345, reps, 0).shape == (10,)


def test_uniformity():
    u = rng.uniforms(2024, np.arange(400_000), 7)
    counts, _ = np.histogram(u, bins=100, range=(0, 1))
    expected = len(u) / 100
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    # 99.9th percentile of chi-square(99) is about 148
    assert chi2 < 148
    # consecutive draws of one replicate are uncorrelated
    v = rng.uniforms(2024, np.arange(400_000), 8)
    assert abs(np.corrcoef(u, v)[0, 1]) < 0.01
