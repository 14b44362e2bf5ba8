"""Exact interventional Shapley values by coalition enumeration."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from deltaxai.errors import DimensionError, TooManyFeaturesError
from deltaxai.model import Dataset, Predictor, predict, predict_batch

MAX_FEATURES = 20


@dataclass(frozen=True)
class ShapleyResult:
    phi: np.ndarray
    base_value: float
    prediction: float


def coalition_values(model: Predictor, background: Dataset, instance) -> np.ndarray:
    """``v[mask]`` for every coalition bitmask: mean prediction over the background
    with features in ``mask`` set to the instance values."""
    x = np.asarray(instance, dtype=np.float64)
    B = background.values
    m = B.shape[1]
    v = np.empty(1 << m)
    work = np.empty_like(B)
    for mask in range(1 << m):
        np.copyto(work, B)
        on = [i for i in range(m) if mask >> i & 1]
        if on:
            work[:, on] = x[on]
        v[mask] = predict_batch(model, work).mean()
    return v


def shapley_exact(model: Predictor, background: Dataset, instance) -> ShapleyResult:
    """Shapley attributions with the marginal (interventional) value function.

    Cost is ``2**M`` background passes, hence the ``M <= 20`` cap.
    """
    x = np.asarray(instance, dtype=np.float64)
    m = background.n_features
    if m > MAX_FEATURES:
        raise TooManyFeaturesError(f"{m} features; exact enumeration is capped at {MAX_FEATURES}")
    if x.ndim != 1 or x.size != m:
        raise DimensionError(f"instance must have {m} entries")
    prediction = predict(model, x)

    v = coalition_values(model, background, x)
    weight = [math.factorial(s) * math.factorial(m - s - 1) / math.factorial(m) for s in range(m)]
    sizes = [bin(mask).count("1") for mask in range(1 << m)]
    phi = np.zeros(m)
    for i in range(m):
        bit = 1 << i
        acc = 0.0
        for mask in range(1 << m):
            if not mask & bit:
                acc += weight[sizes[mask]] * (v[mask | bit] - v[mask])
        phi[i] = acc
    phi.flags.writeable = False
    return ShapleyResult(phi=phi, base_value=float(v[0]), prediction=prediction)
