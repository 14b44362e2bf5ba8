import numpy as np
import pytest
from scipy.stats import norm

from deltaxai import _pykernels, kernels

needs_cython = pytest.mark.skipif("cython" not in kernels.BACKENDS, reason="extension not built")


def _brute_pdf(samples, points, h):
    return np.array([norm.pdf((p - samples) / h).sum() / (samples.size * h) for p in points])


def _brute_cdf(samples, points, h):
    return np.array([norm.cdf((p - samples) / h).mean() for p in points])


def test_backend_against_scipy(backend):
    rng = np.random.default_rng(0)
    y = rng.normal(size=500)
    pts = np.linspace(-4, 4, 37)
    np.testing.assert_allclose(kernels.pdf_sum(y, pts, 0.3), _brute_pdf(y, pts, 0.3), rtol=1e-12)
    np.testing.assert_allclose(kernels.cdf_mean(y, pts, 0.3), _brute_cdf(y, pts, 0.3), rtol=1e-12, atol=1e-15)
    np.testing.assert_allclose(kernels.sf_mean(y, pts, 0.3), 1 - _brute_cdf(y, pts, 0.3), rtol=1e-11, atol=1e-15)


@needs_cython
def test_backends_agree():
    from deltaxai import _ckernels

    rng = np.random.default_rng(1)
    y = rng.normal(scale=50, size=3000)
    pts = rng.normal(scale=80, size=200)
    for fn in ("pdf_sum", "cdf_mean", "sf_mean"):
        a = getattr(_ckernels, fn)(y, pts, 7.5)
        b = getattr(_pykernels, fn)(y, pts, 7.5)
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-300)


def test_python_chunking_matches_single_pass(monkeypatch):
    rng = np.random.default_rng(2)
    y, pts = rng.normal(size=1000), rng.normal(size=50)
    whole = _pykernels.pdf_sum(y, pts, 0.2)
    monkeypatch.setattr(_pykernels, "_CHUNK_ELEMENTS", 3000)
    np.testing.assert_allclose(_pykernels.pdf_sum(y, pts, 0.2), whole, rtol=1e-14)


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")
