# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Gaussian-kernel sums. Mirrors ``_pykernels`` function for function."""

import numpy as np

from libc.math cimport exp, erfc, sqrt

cdef double INV_SQRT_2PI = 0.3989422804014327
cdef double INV_SQRT_2 = 0.7071067811865476


def pdf_sum(const double[::1] samples, const double[::1] points, double bandwidth):
    """Gaussian KDE density at each point: (1/(n h)) sum_j phi((p - y_j) / h)."""
    cdef Py_ssize_t n = samples.shape[0]
    cdef Py_ssize_t m = points.shape[0]
    cdef Py_ssize_t i, j
    cdef double acc, u, p
    cdef double inv_h = 1.0 / bandwidth
    cdef double scale = INV_SQRT_2PI / (n * bandwidth)
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] res = out
    with nogil:
        for i in range(m):
            p = points[i]
            acc = 0.0
            for j in range(n):
                u = (p - samples[j]) * inv_h
                acc += exp(-0.5 * u * u)
            res[i] = acc * scale
    return out


def cdf_mean(const double[::1] samples, const double[::1] points, double bandwidth):
    """Kernel CDF at each point: (1/n) sum_j Phi((p - y_j) / h)."""
    cdef Py_ssize_t n = samples.shape[0]
    cdef Py_ssize_t m = points.shape[0]
    cdef Py_ssize_t i, j
    cdef double acc, p
    cdef double c = INV_SQRT_2 / bandwidth
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] res = out
    with nogil:
        for i in range(m):
            p = points[i]
            acc = 0.0
            for j in range(n):
                acc += erfc((samples[j] - p) * c)
            res[i] = 0.5 * acc / n
    return out


def sf_mean(const double[::1] samples, const double[::1] points, double bandwidth):
    """Kernel survival function at each point: (1/n) sum_j Phi((y_j - p) / h)."""
    cdef Py_ssize_t n = samples.shape[0]
    cdef Py_ssize_t m = points.shape[0]
    cdef Py_ssize_t i, j
    cdef double acc, p
    cdef double c = INV_SQRT_2 / bandwidth
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] res = out
    with nogil:
        for i in range(m):
            p = points[i]
            acc = 0.0
            for j in range(n):
                acc += erfc((p - samples[j]) * c)
            res[i] = 0.5 * acc / n
    return out
