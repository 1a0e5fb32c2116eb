import numpy as np
import pytest
from scipy import stats

from bjpc.model import WeibullParams, validate_scheme
from bjpc.simulate import (RngStream, expected_time_on_test, expected_time_on_test_exact,
                           simulate_mechanism, simulate_power_times, simulate_spacings,
                           simulate_spacings_batch)

SCHEME = validate_scheme(25, 20, [5] + [0] * 18)
PARAMS = WeibullParams(0.5, 0.5, 1.0)


def test_streams_are_reproducible_and_distinct():
    a = RngStream(7, 3).generator().random(5)
    b = RngStream(7, 3).generator().random(5)
    c = RngStream(7, 4).generator().random(5)
    d = RngStream(8, 3).generator().random(5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c) and not np.array_equal(a, d)
    s1 = RngStream(7).substream("ocs", 20)
    assert s1 == RngStream(7).substream("ocs", 20)
    assert s1 != RngStream(7).substream("ocs", 15)


def test_spacings_sample_is_valid():
    smp = simulate_spacings(SCHEME, PARAMS, RngStream(1))
    assert smp.k == 20 and np.all(np.diff(smp.w) > 0)
    assert set(np.unique(smp.z)) <= {0, 1}


def test_power_times_mean_matches_sum_of_exponential_means():
    t = simulate_power_times(SCHEME, 1.5, 200_000, RngStream(2))
    expect = np.cumsum(1.0 / (1.5 * SCHEME.alive))
    se = t.std(axis=0, ddof=1) / np.sqrt(t.shape[0])
    assert np.all(np.abs(t.mean(axis=0) - expect) < 4 * se)


def test_indicator_frequency():
    _, z = simulate_spacings_batch(SCHEME, WeibullParams(1.0, 0.5, 1.0), 50_000, RngStream(3))
    p = z.mean()
    assert abs(p - 1 / 3) < 4 * np.sqrt((1 / 3) * (2 / 3) / z.size)


def test_mechanism_keeps_lines_balanced():
    scheme = validate_scheme(10, 5, [2, 0, 1, 0])
    gen = RngStream(4).generator()
    for _ in range(50):
        trace = []
        smp = simulate_mechanism(scheme, WeibullParams(1.3, 0.4, 1.1), gen, trace)
        assert np.all(np.diff(smp.w) > 0)
        for step, (n0, n1) in enumerate(trace[:-1]):
            assert n0 == n1 == scheme.alive[step + 1]
        assert trace[-1] == (0, 0)


@pytest.mark.parametrize("scheme", [
    validate_scheme(25, 20, [5] + [0] * 18),
    validate_scheme(25, 20, [0] * 18 + [5]),
    validate_scheme(30, 20, [0] * 8 + [10] + [0] * 10),
    validate_scheme(6, 2, [3]),
])
def test_exact_etot_against_moment_formulas(scheme):
    # alpha = 1: E(T) = sum 1/r_j; alpha = 1/2: E(T^2) = sum 1/r_j^2 + (sum 1/r_j)^2
    r = 1.5 * scheme.alive
    one = expected_time_on_test_exact(scheme, WeibullParams(1.0, 0.5, 1.0))
    half = expected_time_on_test_exact(scheme, WeibullParams(0.5, 0.5, 1.0))
    assert one == pytest.approx(np.sum(1 / r), rel=1e-13)
    assert half == pytest.approx(np.sum(1 / r**2) + np.sum(1 / r) ** 2, rel=1e-13)


@pytest.mark.parametrize("alpha", [0.5, 1.7, 2.0])
def test_exact_etot_against_monte_carlo(alpha):
    params = WeibullParams(alpha, 0.5, 1.0)
    mean, se = expected_time_on_test(SCHEME, params, 200_000, RngStream(5))
    assert abs(mean - expected_time_on_test_exact(SCHEME, params)) < 3.5 * se


def test_exact_etot_is_stable_for_long_experiments():
    # the partial-fraction form loses all digits here; the matrix form must not
    scheme = validate_scheme(100, 60, [0] * 59)
    value = expected_time_on_test_exact(scheme, WeibullParams(1.0, 0.5, 1.0))
    assert value == pytest.approx(np.sum(1 / (1.5 * scheme.alive)), rel=1e-12)


def test_etot_rejects_tiny_reps():
    with pytest.raises(ValueError):
        expected_time_on_test(SCHEME, PARAMS, 1, RngStream(1))


def test_single_and_batch_streams_agree():
    a = simulate_spacings(SCHEME, PARAMS, RngStream(9))
    w, z = simulate_spacings_batch(SCHEME, PARAMS, 1, RngStream(9))
    assert np.array_equal(a.w, w[0]) and np.array_equal(a.z, z[0])


def test_mechanism_first_failure_law():
    # W_1 is the minimum of 2m Weibulls: W_1**alpha ~ Exp(m (lambda1 + lambda2))
    scheme = validate_scheme(8, 3, [1, 1])
    params = WeibullParams(1.7, 0.6, 0.9)
    gen = RngStream(10).generator()
    w1 = np.array([simulate_mechanism(scheme, params, gen).w[0] for _ in range(4000)])
    res = stats.kstest(w1 ** params.alpha, stats.expon(scale=1 / (8 * params.total_rate)).cdf)
    assert res.pvalue > 0.001
