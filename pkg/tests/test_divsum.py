import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import exp1

from physkit import divsum as ds
from physkit._numerics import derivative
from physkit.errors import ConvergenceError, DomainError, SeriesOverflowError


def stieltjes_oracle(x):
    # closed form through the exponential integral
    return math.exp(1.0 / x) * exp1(1.0 / x)


def test_partial_sums_leibniz():
    spec = ds.SeriesSpec(ds.leibniz)
    assert ds.partial_sum(spec, 4) == 1.0
    assert ds.partial_sum(spec, 5) == 0.0
    assert list(ds.partial_sums(spec, 3)) == [1.0, 0.0, 1.0, 0.0]


def test_partial_sum_geometric_power_kind():
    spec = ds.SeriesSpec(lambda j: np.ones_like(j, dtype=float), "power-series-at-x", 0.5)
    assert ds.partial_sum(spec, 10) == pytest.approx(2 - 2.0 ** -10, abs=1e-15)


def test_series_spec_validation():
    with pytest.raises(DomainError):
        ds.SeriesSpec(ds.leibniz, "weird")
    with pytest.raises(DomainError):
        ds.SeriesSpec(ds.leibniz, "power-series-at-x")
    with pytest.raises(DomainError):
        ds.partial_sum(ds.SeriesSpec(ds.leibniz), -1)


@pytest.mark.parametrize("coeff, expected", [
    (ds.leibniz, 0.5),
    (ds.alternating_naturals, 0.25),
    (lambda j: (1 / 3) ** np.asarray(j, dtype=float), 1.5),
])
def test_abel_examples(coeff, expected):
    res = ds.abel_sum(coeff)
    assert res.method == "abel"
    assert res.value == pytest.approx(expected, abs=1e-6)
    assert res.spread < 1e-6


@settings(max_examples=8)
@given(st.floats(-0.9, 0.9))
def test_abel_geometric(q):
    res = ds.abel_sum(lambda j: q ** np.asarray(j, dtype=float))
    assert res.value == pytest.approx(1 / (1 - q), rel=1e-6)


@pytest.mark.parametrize("coeff", [lambda j: np.ones(np.shape(j)), lambda j: 2.0 ** np.asarray(j, float)])
def test_abel_divergence_detected(coeff):
    with np.errstate(over="ignore"), pytest.raises(ConvergenceError):
        ds.abel_sum(coeff)


@pytest.mark.parametrize("coeff, expected", [(ds.leibniz, 0.5), (ds.alternating_naturals, 0.25)])
def test_borel_matches_abel(coeff, expected):
    b = ds.borel_sum(coeff)
    a = ds.abel_sum(coeff)
    assert b.method == "borel"
    assert b.value == pytest.approx(expected, abs=1e-10)
    assert abs(b.value - a.value) < 1e-6
    assert b.spread < 1e-8


@pytest.mark.parametrize("x", [0.05, 0.1, 0.2])
def test_borel_euler_series(x):
    b = ds.borel_sum(ds.euler_series_coeff(x))
    assert b.value == pytest.approx(stieltjes_oracle(x), abs=1e-12)
    assert b.value == pytest.approx(ds.stieltjes_euler(x), abs=1e-6)


@settings(max_examples=30)
@given(st.floats(0.01, 1.0), st.floats(0.0, 1.0), st.sampled_from([40, 60, 160]))
def test_borel_transform_euler(x, frac, N):
    t = 3.0 * frac / x
    val = ds.borel_transform(ds.euler_series_coeff(x), t, N)
    assert val == pytest.approx(x / (1 + x * t), rel=1e-8)


def test_borel_transform_leibniz_is_exponential():
    t = np.linspace(0, 5, 11)
    assert np.allclose(ds.borel_transform(ds.leibniz, t), np.exp(-t), rtol=1e-10, atol=1e-15)


def test_borel_overflow():
    with pytest.raises(SeriesOverflowError):
        ds.borel_sum(lambda j: np.full(np.shape(j), np.inf))


def test_stieltjes_values():
    assert 0.0915 < ds.stieltjes_euler(0.1) < 0.0917
    s2 = ds.euler_partial_sum(0.1, 2)
    s3 = ds.euler_partial_sum(0.1, 3)
    assert min(s2, s3) < ds.stieltjes_euler(0.1) < max(s2, s3)
    assert abs(ds.stieltjes_euler(1e-3) - 1e-3) <= 1e-6
    val, err = ds.stieltjes_euler(0.4, full_output=True)
    assert err < 1e-10
    assert val == pytest.approx(stieltjes_oracle(0.4), rel=1e-12)


@pytest.mark.parametrize("x", [0.0, -0.5])
def test_stieltjes_domain(x):
    with pytest.raises(DomainError):
        ds.stieltjes_euler(x)


@pytest.mark.parametrize("x", [0.05, 0.1, 0.3, 1.0])
def test_euler_ode_residual(x):
    dy = derivative(ds.stieltjes_euler, x, h=1e-3 * x)
    assert abs(x ** 2 * dy + ds.stieltjes_euler(x) - x) < 1e-6


def test_truncation_examples():
    r = ds.euler_truncation_error(0.1, 3)
    assert r.bound == pytest.approx(6e-4, rel=1e-12)
    assert r.respected
    r25 = ds.euler_truncation_error(0.1, 25)
    assert r25.bound == pytest.approx(math.factorial(25) * 1e-26, rel=1e-12)
    assert r25.respected
    assert r25.gap > ds.euler_truncation_error(0.1, 9).gap
    z = ds.euler_truncation_error(0.0, 7)
    assert z.gap == 0.0 and z.respected


@pytest.mark.parametrize("x", [0.05, 0.1, 0.2])
def test_truncation_bounds(x):
    y = stieltjes_oracle(x)
    for k in range(21):
        r = ds.euler_truncation_error(x, k)
        assert r.respected
        first_omitted = math.factorial(k + 1) * x ** (k + 2)
        assert r.gap <= first_omitted * (1 + 1e-12)
        assert abs(y - r.partial) == pytest.approx(r.gap, abs=1e-14)


def test_optimal_truncation_decreases():
    ks = [ds.optimal_truncation(x) for x in (0.05, 0.1, 0.2)]
    assert ks[0] > ks[1] > ks[2]
