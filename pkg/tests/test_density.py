import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import trapezoid
from scipy.stats import norm

from deltaxai import IntervalError, KdeModel, ZeroVarianceError, cdf_interval, exceedance, fit_kde, pdf_at
from deltaxai.density import pdf_grid


def silverman_by_hand(y):
    y = np.sort(np.asarray(y, float))
    n = y.size
    mean = y.sum() / n
    s = np.sqrt(((y - mean) ** 2).sum() / (n - 1))

    def q(p):  # linear interpolation between order statistics
        pos = (n - 1) * p
        lo = int(np.floor(pos))
        hi = min(lo + 1, n - 1)
        return y[lo] + (pos - lo) * (y[hi] - y[lo])

    a = min(s, (q(0.75) - q(0.25)) / 1.34)
    if a == 0:
        a = s
    return 0.9 * a * n ** -0.2


def test_bandwidth_matches_formula():
    y = np.random.default_rng(4).normal(size=100)
    assert fit_kde(y).bandwidth == pytest.approx(silverman_by_hand(y), abs=1e-12)


def test_bandwidth_small_hand_case():
    y = [0, 0, 0, 1, 1, 1]
    # quartiles 0 and 1 -> IQR 1; s = sqrt(1.5/5)
    s = np.sqrt(0.3)
    assert fit_kde(y).bandwidth == pytest.approx(0.9 * min(s, 1 / 1.34) * 6 ** -0.2, abs=1e-12)
    assert fit_kde(y).bandwidth == pytest.approx(silverman_by_hand(y), abs=1e-12)


def test_bandwidth_iqr_collapse_falls_back_to_sd():
    y = [0.0] * 10 + [5.0]
    s = np.std(y, ddof=1)
    assert fit_kde(y).bandwidth == pytest.approx(0.9 * s * 11 ** -0.2, abs=1e-12)


def test_constant_sample_rejected():
    with pytest.raises(ZeroVarianceError):
        fit_kde([7.0] * 20)


def test_pdf_single_effective_kernel(backend):
    kde = KdeModel(np.array([0.0, 1000.0]), 1.0)
    assert pdf_at(kde, 0.0) == pytest.approx(0.5 * norm.pdf(0), rel=1e-12)
    assert pdf_at(kde, 0.0) == pytest.approx(0.19947, abs=1e-5)


def test_pdf_large_normal_sample(backend):
    y = np.random.default_rng(8).normal(size=100_000)
    assert abs(pdf_at(fit_kde(y), 0.0) - 0.39894) < 0.01


@settings(max_examples=30)
@given(st.floats(0.01, 100), st.floats(0.01, 10), st.floats(-50, 50))
def test_pdf_symmetric(a, h, t):
    kde = KdeModel(np.array([-a, a]), h)
    assert pdf_at(kde, t) == pytest.approx(pdf_at(kde, -t), rel=1e-12, abs=1e-300)


def test_cdf_interval_basics(backend):
    y = np.random.default_rng(9).normal(size=100_000)
    kde = fit_kde(y)
    assert cdf_interval(kde, 0.3, 0.3) == 0.0
    assert abs(cdf_interval(kde, 0.0, 1e9) - 0.5) < 0.01
    assert cdf_interval(kde, -1e9, 1e9) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(IntervalError):
        cdf_interval(kde, 1.0, 0.0)


def test_exceedance_is_upper_tail():
    y = np.random.default_rng(10).normal(size=2000)
    kde = fit_kde(y)
    assert exceedance(kde, 0.4) == pytest.approx(cdf_interval(kde, 0.4, 1e9), abs=1e-12)


@pytest.fixture(scope="module")
def small_kde():
    return fit_kde(np.random.default_rng(12).gamma(2.0, size=300))


def test_pdf_integrates_to_one(small_kde):
    k = small_kde
    lo, hi = k.samples.min() - 10 * k.bandwidth, k.samples.max() + 10 * k.bandwidth
    grid = np.linspace(lo, hi, 20001)
    dens = pdf_grid(k, grid)
    assert np.all(dens >= 0)
    assert trapezoid(dens, grid) == pytest.approx(1.0, abs=1e-6)


@given(st.floats(-5, 15), st.floats(0, 5), st.floats(0, 5))
def test_cdf_additive_and_monotone(small_kde, a, w1, w2):
    b, c = a + w1, a + w1 + w2
    left, right, whole = cdf_interval(small_kde, a, b), cdf_interval(small_kde, b, c), cdf_interval(small_kde, a, c)
    assert left + right == pytest.approx(whole, abs=1e-12)
    assert whole >= left - 1e-15


@settings(max_examples=30)
@given(st.floats(0.01, 1000), st.floats(-3, 3))
def test_affine_equivariance(c, t):
    y = np.random.default_rng(13).normal(size=200)
    base = fit_kde(y)
    scaled = fit_kde(c * y)
    assert scaled.bandwidth == pytest.approx(c * base.bandwidth, rel=1e-12)
    assert pdf_at(scaled, c * t) == pytest.approx(pdf_at(base, t) / c, rel=1e-9, abs=1e-300)
