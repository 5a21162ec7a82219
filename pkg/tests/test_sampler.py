import numpy as np
import pytest
from numpy.testing import assert_allclose

from concord.errors import OutOfRangeError, ThetaOutOfRangeError
from concord.rng import batch_sizes, make_generator
from concord.sampler import (
    DIAGONAL_TOL,
    diagonal_patterns,
    empirical_cdf_at,
    extremal_cdf,
    mixture_cdf,
    sample_dependent_bernoulli_counterexample,
    sample_mixture,
    validate_mixture,
)
from concord.signatures import MixtureWeights, kendall_matrix_from_even, signature_from_weights

CRYPTO_W = [0.364, 0.129, 0.069, 0.077, 0.098, 0.075, 0.066, 0.122]


def test_rng_reproducible_and_stream_separated():
    a = make_generator(7).random(5)
    b = make_generator(7).random(5)
    c = make_generator(7, stream=1).random(5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert list(batch_sizes(10, 4)) == [(0, 4), (1, 4), (2, 2)]


def test_extremal_cdf_examples():
    assert extremal_cdf(1, [0.2, 0.5, 0.7]) == pytest.approx(0.2)
    assert extremal_cdf(2, [0.6, 0.7]) == pytest.approx(0.3)
    # d=4, k=2: J = {1,2,3}, complement {4}
    assert extremal_cdf(2, [0.8, 0.9, 0.7, 0.6]) == pytest.approx(0.3)
    assert extremal_cdf(2, [0.8, 0.9, 0.7, 0.2]) == pytest.approx(0.0)


def test_extremal_cdf_boundaries():
    rng = np.random.default_rng(0)
    for d in (2, 3, 4):
        for k in range(1, 2 ** (d - 1) + 1):
            u = rng.random(d)
            for j in range(d):
                z = u.copy()
                z[j] = 0.0
                assert extremal_cdf(k, z) == 0.0
            one = np.ones(d)
            one[0] = u[0]
            # uniform margins: C(u_1, 1, ..., 1) = u_1
            assert extremal_cdf(1, one) == pytest.approx(u[0])
    with pytest.raises(OutOfRangeError):
        extremal_cdf(1, [1.5, 0.5])


def test_mixture_cdf():
    w = MixtureWeights.unit(3)
    assert mixture_cdf(w, [0.3, 0.6, 0.5]) == pytest.approx(0.3)
    w2 = MixtureWeights.create(2, [0.5, 0.5])
    assert mixture_cdf(w2, [0.6, 0.7]) == pytest.approx(0.45)
    assert mixture_cdf(w2, [1.0, 1.0]) == pytest.approx(1.0)


def test_mixture_cdf_monotone_on_grid():
    w = MixtureWeights.create(3, [0.4, 0.3, 0.2, 0.1])
    grid = np.linspace(0, 1, 6)
    vals = np.array(
        [[[mixture_cdf(w, [a, b, c]) for c in grid] for b in grid] for a in grid]
    )
    assert np.all(np.diff(vals, axis=0) >= -1e-12)
    assert np.all(np.diff(vals, axis=1) >= -1e-12)
    assert np.all(np.diff(vals, axis=2) >= -1e-12)


def test_sample_mixture_comonotone_rows_constant():
    sample = sample_mixture(MixtureWeights.unit(3), 3, seed=1)
    assert sample.values.shape == (3, 3)
    for row in sample.values:
        assert np.ptp(row) < 1e-15


def test_sample_mixture_rows_on_diagonals():
    w = MixtureWeights.create(4, CRYPTO_W)
    sample = sample_mixture(w, 2000, seed=5)
    ks = diagonal_patterns(sample.values)
    assert np.all(ks > 0)
    # weights of observed diagonals should be near the sampling weights
    freq = np.bincount(ks - 1, minlength=8) / 2000
    assert np.abs(freq - w.w).max() < 0.05


def test_sample_mixture_tau_near_zero_for_even_split():
    w = MixtureWeights.create(2, [0.5, 0.5])
    sample = sample_mixture(w, 100_000, seed=11)
    u = sample.values
    # exact pairwise tau via sign aggregation would be O(n^2); use the
    # diagonal frequencies instead: tau = 2 kappa - 1, kappa = P(same diagonal)
    ks = diagonal_patterns(u)
    kappa = np.mean(ks == 1)
    assert abs(2 * kappa - 1) < 0.01


def test_sample_matches_cdf_at_random_points():
    w = MixtureWeights.create(3, [0.5, 0.2, 0.2, 0.1])
    n = 100_000
    sample = sample_mixture(w, n, seed=3)
    rng = np.random.default_rng(10)
    for _ in range(20):
        u = rng.random(3)
        p = mixture_cdf(w, u)
        hat = empirical_cdf_at(sample.values, u)
        se = np.sqrt(p * (1 - p) / n)
        assert abs(hat - p) < 3 * se + 1e-9


def test_empirical_tau_matches_kendall_matrix():
    w = MixtureWeights.create(4, CRYPTO_W)
    n = 100_000
    sample = sample_mixture(w, n, seed=42)
    P_expected = kendall_matrix_from_even(signature_from_weights(w))
    ks = diagonal_patterns(sample.values)
    # P(U_i, U_j concordant) = P(bits i = bits j on the drawn diagonal)
    from concord.coding import code_matrix

    codes = code_matrix(4)[ks - 1]
    for i in range(4):
        for j in range(i + 1, 4):
            kappa_hat = np.mean(codes[:, i] == codes[:, j])
            assert abs((2 * kappa_hat - 1) - P_expected[i, j]) < 0.01


def test_validate_mixture_passes_on_mixture_sample():
    w = MixtureWeights.create(3, [0.4, 0.3, 0.2, 0.1])
    sample = sample_mixture(w, 5000, seed=9)
    report = validate_mixture(sample.values, level=0.01)
    assert report.passed
    assert report.on_diagonal_fraction == 1.0
    assert report.uniformity_tested


def test_validate_mixture_rejects_off_diagonal_rows():
    rng = np.random.default_rng(2)
    values = rng.random((500, 3))
    report = validate_mixture(values, level=0.01)
    assert not report.passed
    assert report.on_diagonal_fraction < 0.05


def test_counterexample_theta_bounds_and_margins():
    with pytest.raises(ThetaOutOfRangeError):
        sample_dependent_bernoulli_counterexample(4.5, 100, seed=0)
    from scipy.stats import kstest

    rows = sample_dependent_bernoulli_counterexample(3.0, 100_000, seed=12)
    assert rows.shape == (100_000, 3)
    for j in range(3):
        assert kstest(rows[:, j], "uniform").pvalue > 0.01


def test_counterexample_rows_on_diagonals_but_not_uniform():
    rows = sample_dependent_bernoulli_counterexample(3.0, 100_000, seed=21)
    report = validate_mixture(rows, level=0.01)
    assert report.on_diagonal_fraction == 1.0
    assert report.uniformity_tested
    assert not report.passed  # conditional uniformity fails for theta != 0

    # bivariate margins are genuine extremal mixtures: they pass
    for cols in [(0, 1), (0, 2), (1, 2)]:
        sub = rows[:, list(cols)]
        assert validate_mixture(sub, level=0.01).passed


def test_counterexample_theta_zero_passes():
    rows = sample_dependent_bernoulli_counterexample(0.0, 50_000, seed=33)
    assert validate_mixture(rows, level=0.01).passed


def test_counterexample_inversion_accuracy():
    # conditional CDF applied to the sampled U recovers uniform p-values
    rng = make_generator(77)
    p = rng.random(10_000)
    for a in (-0.75, -0.3, 0.0, 0.3, 0.75, 1.0):
        from concord.sampler import _invert_quadratic_cdf

        arr = np.full_like(p, a)
        u = _invert_quadratic_cdf(p.copy(), arr)
        back = u + arr * u * (1 - u)
        assert np.abs(back - p).max() < 1e-10


from hypothesis import given, settings, strategies as st


@given(
    st.integers(min_value=2, max_value=5),
    st.data(),
)
@settings(max_examples=60, deadline=None)
def test_extremal_cdf_frechet_bounds_property(d, data):
    k = data.draw(st.integers(min_value=1, max_value=2 ** (d - 1)))
    u = np.array(
        data.draw(
            st.lists(
                st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
                min_size=d,
                max_size=d,
            )
        )
    )
    value = extremal_cdf(k, u)
    lower = max(u.sum() - d + 1.0, 0.0)
    upper = float(u.min())
    assert lower - 1e-12 <= value <= upper + 1e-12


@given(st.lists(st.integers(min_value=0, max_value=1), min_size=2, max_size=8))
@settings(max_examples=100, deadline=None)
def test_canonicalize_idempotent_property(bits):
    from concord.coding import canonicalize_bits

    once = canonicalize_bits(bits)
    assert canonicalize_bits(once) == once
    assert once[0] == 0
