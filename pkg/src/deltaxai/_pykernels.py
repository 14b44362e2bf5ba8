"""Numpy implementations of the Gaussian-kernel sums (fallback for ``_ckernels``)."""

import numpy as np
from scipy.special import erfc

_INV_SQRT_2PI = 0.3989422804014327
_INV_SQRT_2 = 0.7071067811865476

# caps the (points x samples) temporary at ~16 MB
_CHUNK_ELEMENTS = 1 << 21


def _chunks(m, n):
    step = max(1, _CHUNK_ELEMENTS // max(n, 1))
    for start in range(0, m, step):
        yield slice(start, min(start + step, m))


def pdf_sum(samples, points, bandwidth):
    """Gaussian KDE density at each point: (1/(n h)) sum_j phi((p - y_j) / h)."""
    samples = np.ascontiguousarray(samples, dtype=np.float64)
    points = np.ascontiguousarray(points, dtype=np.float64)
    out = np.empty(points.shape[0])
    scale = _INV_SQRT_2PI / (samples.shape[0] * bandwidth)
    for sl in _chunks(points.shape[0], samples.shape[0]):
        u = (points[sl, None] - samples[None, :]) / bandwidth
        out[sl] = np.exp(-0.5 * u * u).sum(axis=1) * scale
    return out


def cdf_mean(samples, points, bandwidth):
    """Kernel CDF at each point: (1/n) sum_j Phi((p - y_j) / h)."""
    samples = np.ascontiguousarray(samples, dtype=np.float64)
    points = np.ascontiguousarray(points, dtype=np.float64)
    out = np.empty(points.shape[0])
    c = _INV_SQRT_2 / bandwidth
    for sl in _chunks(points.shape[0], samples.shape[0]):
        out[sl] = 0.5 * erfc((samples[None, :] - points[sl, None]) * c).mean(axis=1)
    return out


def sf_mean(samples, points, bandwidth):
    """Kernel survival function at each point: (1/n) sum_j Phi((y_j - p) / h)."""
    samples = np.ascontiguousarray(samples, dtype=np.float64)
    points = np.ascontiguousarray(points, dtype=np.float64)
    out = np.empty(points.shape[0])
    c = _INV_SQRT_2 / bandwidth
    for sl in _chunks(points.shape[0], samples.shape[0]):
        out[sl] = 0.5 * erfc((points[sl, None] - samples[None, :]) * c).mean(axis=1)
    return out
