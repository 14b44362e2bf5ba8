"""Gaussian-kernel density estimates over model outputs."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from deltaxai import kernels
from deltaxai.errors import IntervalError, ZeroVarianceError


@dataclass(frozen=True)
class KdeModel:
    samples: np.ndarray
    bandwidth: float

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64).ravel()
        if samples.size < 2:
            raise ValueError("a KDE needs at least two samples")
        if not np.all(np.isfinite(samples)):
            raise ValueError("KDE samples must be finite")
        if not (math.isfinite(self.bandwidth) and self.bandwidth > 0):
            raise ValueError(f"bandwidth must be positive and finite, got {self.bandwidth}")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "bandwidth", float(self.bandwidth))

    @property
    def n(self) -> int:
        return self.samples.size


def silverman_bandwidth(samples: np.ndarray) -> float:
    """``0.9 * min(s, IQR / 1.34) * n**-0.2``.

    ``s`` is the sample standard deviation (ddof=1) and the IQR uses linear
    interpolation between order statistics (numpy's default, "type 7"). When
    the IQR collapses but ``s`` does not, ``s`` alone is used.
    """
    y = np.asarray(samples, dtype=np.float64)
    n = y.size
    s = float(np.std(y, ddof=1))
    if not s > 0:
        raise ZeroVarianceError("all samples identical: the predictor is constant here")
    q75, q25 = np.percentile(y, [75, 25])
    spread = min(s, (q75 - q25) / 1.34)
    if spread <= 0:
        spread = s
    return 0.9 * spread * n ** -0.2


def fit_kde(samples) -> KdeModel:
    y = np.asarray(samples, dtype=np.float64).ravel()
    if y.size < 2:
        raise ValueError("a KDE needs at least two samples")
    if not np.all(np.isfinite(y)):
        raise ValueError("KDE samples must be finite")
    return KdeModel(y, silverman_bandwidth(y))


def pdf_at(kde: KdeModel, y: float) -> float:
    if not math.isfinite(y):
        raise ValueError("evaluation point must be finite")
    return float(kernels.pdf_sum(kde.samples, np.array([float(y)]), kde.bandwidth)[0])


def pdf_grid(kde: KdeModel, grid) -> np.ndarray:
    """Vectorised :func:`pdf_at` over many points."""
    return kernels.pdf_sum(kde.samples, np.asarray(grid, dtype=np.float64), kde.bandwidth)


def cdf_interval(kde: KdeModel, lo: float, hi: float) -> float:
    """Kernel probability mass on ``[lo, hi]``, with no boundary correction."""
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("interval endpoints must be finite")
    if lo > hi:
        raise IntervalError(f"empty interval: lo={lo} > hi={hi}")
    if lo == hi:
        return 0.0
    f_lo, f_hi = kernels.cdf_mean(kde.samples, np.array([lo, hi], dtype=np.float64), kde.bandwidth)
    return float(min(1.0, max(0.0, f_hi - f_lo)))


def exceedance(kde: KdeModel, threshold: float) -> float:
    """Kernel probability of an output strictly above ``threshold``."""
    if not math.isfinite(threshold):
        raise ValueError("threshold must be finite")
    return float(kernels.sf_mean(kde.samples, np.array([float(threshold)]), kde.bandwidth)[0])
