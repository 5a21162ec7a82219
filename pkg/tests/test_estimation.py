import io
import itertools

import numpy as np
import pytest
from numpy.testing import assert_allclose

from concord.errors import (
    MalformedCsvError,
    NonPositivePriceError,
    RaggedRowsError,
    TiesPresentError,
    TooFewRowsError,
)
from concord.estimation import (
    SampleMatrix,
    bootstrap_standard_errors,
    empirical_signature,
    empirical_signature_ties,
    ingest_csv,
)
from concord.sampler import sample_mixture
from concord.signatures import MixtureWeights


def kappa_direct(X, subset):
    """Independent oracle: the double-sum U-statistic over ordered pairs."""
    n = X.shape[0]
    cols = [s - 1 for s in subset]
    total = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if all(X[i, c] <= X[j, c] for c in cols):
                total += 1
    return 2.0 * total / (n * (n - 1))


def test_single_concordant_pair():
    data = SampleMatrix.create([[0.0, 0.0], [1.0, 1.0]])
    est = empirical_signature(data)
    assert est.even.value_of((1, 2)) == pytest.approx(1.0)
    assert_allclose(est.weights.w, [1.0, 0.0])
    assert est.n_pairs == 1
    assert not est.tie_adjusted


def test_three_point_hand_count():
    data = SampleMatrix.create([[1, 1], [2, 3], [3, 2]])
    est = empirical_signature(data)
    # pairs (1,2) and (1,3) concordant, (2,3) discordant
    assert est.even.value_of((1, 2)) == pytest.approx(2 / 3)
    from concord.signatures import kappa_to_tau

    assert kappa_to_tau(est.even.value_of((1, 2)), 2) == pytest.approx(1 / 3)


def test_d3_flip_example():
    data = SampleMatrix.create([[1, 1, 1], [2, 2, 0]])
    est = empirical_signature(data)
    assert_allclose(est.weights.w, [0.0, 1.0, 0.0, 0.0])
    assert_allclose(est.even.values, [1.0, 1.0, 0.0, 0.0])


def test_ties_raise_and_redirect():
    data = SampleMatrix.create([[1.0, 5.0], [1.0, 7.0]])
    with pytest.raises(TiesPresentError):
        empirical_signature(data)
    est = empirical_signature_ties(data)
    assert est.tie_adjusted
    assert_allclose(est.weights.w, [0.5, 0.5])
    assert est.even.value_of((1, 2)) == pytest.approx(0.5)


def test_tie_free_data_identical_between_variants():
    rng = np.random.default_rng(8)
    data = SampleMatrix.create(rng.random((40, 4)))
    a = empirical_signature(data)
    b = empirical_signature_ties(data)
    assert_allclose(a.weights.w, b.weights.w, atol=0)
    assert not b.tie_adjusted


def test_tie_resolution_weights_sum_to_one():
    rng = np.random.default_rng(9)
    values = rng.integers(0, 4, size=(30, 3)).astype(float)  # many ties
    est = empirical_signature_ties(SampleMatrix.create(values))
    assert est.tie_adjusted
    assert est.weights.w.sum() == pytest.approx(1.0, abs=1e-12)
    assert est.weights.w.min() >= 0


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_u_statistic_identity(d):
    # kappa from the diagonal histogram equals the direct double sum exactly
    rng = np.random.default_rng(40 + d)
    for trial in range(13 if d < 5 else 11):
        n = int(rng.integers(5, 41))
        data = SampleMatrix.create(rng.random((n, d)))
        est = empirical_signature(data)
        subsets = [s for s in est.even.labels if len(s) >= 2]
        for subset in subsets:
            expected = kappa_direct(data.values, subset)
            assert est.even.value_of(subset) == pytest.approx(expected, abs=1e-12)
        # odd cardinalities too, via the full signature
        for subset in est.full.labels:
            if len(subset) % 2 == 1 and len(subset) >= 3:
                expected = kappa_direct(data.values, subset)
                assert est.full.value_of(subset) == pytest.approx(expected, abs=1e-10)


def test_row_permutation_invariance():
    rng = np.random.default_rng(3)
    values = rng.random((25, 3))
    est1 = empirical_signature(SampleMatrix.create(values))
    perm = rng.permutation(25)
    est2 = empirical_signature(SampleMatrix.create(values[perm]))
    assert_allclose(est1.weights.w, est2.weights.w, atol=0)


def test_block_size_does_not_matter():
    rng = np.random.default_rng(4)
    values = rng.random((50, 3))
    data = SampleMatrix.create(values)
    a = empirical_signature(data, block=7)
    b = empirical_signature(data, block=64)
    assert_allclose(a.weights.w, b.weights.w, atol=0)


@pytest.mark.slow
def test_consistency_recovers_known_mixture():
    w = MixtureWeights.create(4, [0.364, 0.129, 0.069, 0.077, 0.098, 0.075, 0.066, 0.122])
    sample = sample_mixture(w, 100_000, seed=2024)
    est = empirical_signature(SampleMatrix.create(sample.values))
    assert np.abs(est.weights.w - w.w).max() < 0.01


def test_jit_and_blocked_paths_agree():
    from concord.estimation import HAVE_NUMBA

    rng = np.random.default_rng(123)
    data = SampleMatrix.create(rng.random((300, 4)))
    blocked = empirical_signature(data, use_jit=False)
    if HAVE_NUMBA:
        jitted = empirical_signature(data, use_jit=True)
        assert_allclose(jitted.weights.w, blocked.weights.w, atol=0)
    assert blocked.weights.w.sum() == pytest.approx(1.0)


def test_bootstrap_se_reasonable():
    rng = np.random.default_rng(5)
    data = SampleMatrix.create(rng.random((30, 3)))
    se = bootstrap_standard_errors(data, n_boot=50, seed=1)
    assert se.shape == (4,)
    assert se[0] == 0.0  # kappa_empty is constant
    assert np.all(se[1:] > 0)
    assert np.all(se < 0.5)


def test_too_few_rows():
    with pytest.raises(TooFewRowsError):
        SampleMatrix.create([[1.0, 2.0]])


def test_ingest_csv_basic_and_header_detection():
    text = "a,b\n1,2\n3,4\n"
    data = ingest_csv(io.StringIO(text))
    assert data.columns == ("a", "b")
    assert_allclose(data.values, [[1.0, 2.0], [3.0, 4.0]])
    headerless = ingest_csv(io.StringIO("1,2\n3,4\n"))
    assert headerless.columns is None


def test_ingest_csv_log_returns():
    e = np.e
    text = f"1,1\n{e},{e}\n{e},{e**2}\n"
    data = ingest_csv(io.StringIO(text), log_returns=True)
    assert data.values.shape == (2, 2)
    assert_allclose(data.values, [[1.0, 1.0], [0.0, 1.0]], atol=1e-12)


def test_ingest_csv_366_rows_become_365_returns():
    rng = np.random.default_rng(6)
    prices = np.exp(np.cumsum(rng.normal(0, 0.01, size=(366, 4)), axis=0))
    buf = io.StringIO("\n".join(",".join(f"{x:.10f}" for x in row) for row in prices))
    data = ingest_csv(buf, log_returns=True)
    assert data.values.shape == (365, 4)


def test_ingest_csv_errors_and_filters():
    with pytest.raises(RaggedRowsError):
        ingest_csv(io.StringIO("1,2\n3\n"))
    with pytest.raises(MalformedCsvError):
        ingest_csv(io.StringIO("x,y\nfoo,2\n"))
    with pytest.raises(MalformedCsvError):
        ingest_csv(io.StringIO(""))
    with pytest.raises(NonPositivePriceError):
        ingest_csv(io.StringIO("1,2\n-1,4\n"), log_returns=True)
    filtered = ingest_csv(io.StringIO("a,b,c\n1,2,3\n4,5,6\n"), column_filter=["c", "a"])
    assert filtered.columns == ("c", "a")
    assert_allclose(filtered.values, [[3.0, 1.0], [6.0, 4.0]])
    by_index = ingest_csv(io.StringIO("1,2,3\n4,5,6\n"), column_filter=[2, 0])
    assert_allclose(by_index.values, [[3.0, 1.0], [6.0, 4.0]])
