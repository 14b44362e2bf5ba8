"""Predictors, datasets and Gaussian populations.

A *predictor* is anything with an ``n_features`` attribute and a
``predict_batch(X)`` method mapping an ``(N, M)`` float array to ``N`` outputs.
``LinearModel`` is the built-in one; ``FunctionPredictor`` wraps a vectorised
callable so trained models from elsewhere can be plugged in.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Protocol, Sequence

import numpy as np
from scipy.special import expit, ndtr

from deltaxai import _random
from deltaxai.errors import CovarianceError, DimensionError

LINKS = ("identity", "logistic", "gauss_cdf")


class Predictor(Protocol):
    n_features: int

    def predict_batch(self, X: np.ndarray) -> np.ndarray: ...


def _frozen(a):
    a = np.array(a, dtype=np.float64)
    a.flags.writeable = False
    return a


def default_feature_names(m):
    return tuple(f"x{i + 1}" for i in range(m))


@dataclass(frozen=True)
class Dataset:
    """N x M matrix of finite reals with named columns (N >= 2, M >= 1)."""

    values: np.ndarray
    feature_names: tuple[str, ...] = ()

    def __post_init__(self):
        values = _frozen(self.values)
        if values.ndim != 2:
            raise DimensionError(f"dataset must be 2-D, got shape {values.shape}")
        n, m = values.shape
        if n < 2 or m < 1:
            raise DimensionError(f"dataset needs N >= 2 rows and M >= 1 columns, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("dataset contains non-finite entries")
        names = tuple(self.feature_names) or default_feature_names(m)
        if len(names) != m:
            raise DimensionError(f"{len(names)} feature names for {m} columns")
        if len(set(names)) != m:
            raise ValueError("feature names must be distinct")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "feature_names", names)

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_features(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class LinearModel:
    """``link(intercept + beta . x)`` with link in {identity, logistic, gauss_cdf}.

    The non-identity links squash the output into (0, 1) and exist to drive the
    binary classification path.
    """

    beta: np.ndarray
    intercept: float = 0.0
    link: str = "identity"

    def __post_init__(self):
        beta = _frozen(self.beta)
        if beta.ndim != 1 or beta.size == 0:
            raise DimensionError("beta must be a non-empty vector")
        if not np.all(np.isfinite(beta)) or not np.isfinite(self.intercept):
            raise ValueError("coefficients must be finite")
        if self.link not in LINKS:
            raise ValueError(f"link must be one of {LINKS}, got {self.link!r}")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "intercept", float(self.intercept))

    @property
    def n_features(self) -> int:
        return self.beta.size

    def predict_batch(self, X: np.ndarray) -> np.ndarray:
        # row-wise reduction keeps each output independent of how many rows are batched
        eta = (X * self.beta).sum(axis=1) + self.intercept
        if self.link == "logistic":
            return expit(eta)
        if self.link == "gauss_cdf":
            return ndtr(eta)
        return eta


@dataclass(frozen=True)
class FunctionPredictor:
    """Adapter for a vectorised callable ``fn(X) -> y``."""

    fn: Callable[[np.ndarray], np.ndarray]
    n_features: int

    def predict_batch(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(self.fn(X), dtype=np.float64).reshape(X.shape[0])


def _check_width(model, width):
    if width != model.n_features:
        raise DimensionError(f"model expects {model.n_features} features, got {width}")


def predict(model: Predictor, instance: Sequence[float]) -> float:
    """Model output for a single M-vector."""
    x = np.asarray(instance, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionError("instance must be a 1-D vector")
    _check_width(model, x.size)
    if not np.all(np.isfinite(x)):
        raise ValueError("instance contains non-finite entries")
    return float(model.predict_batch(x[None, :])[0])


def predict_batch(model: Predictor, data: Dataset | np.ndarray) -> np.ndarray:
    """Row-wise model outputs, order preserved."""
    X = data.values if isinstance(data, Dataset) else np.asarray(data, dtype=np.float64)
    if X.ndim != 2:
        raise DimensionError("batch input must be 2-D")
    _check_width(model, X.shape[1])
    return np.asarray(model.predict_batch(X), dtype=np.float64)


@dataclass(frozen=True)
class GaussianPopulation:
    """Multivariate normal feature distribution."""

    mean: np.ndarray
    covariance: np.ndarray
    cholesky: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        mean = _frozen(self.mean)
        cov = _frozen(self.covariance)
        m = mean.size
        if mean.ndim != 1 or cov.shape != (m, m):
            raise DimensionError(f"mean of length {m} needs an {m}x{m} covariance, got {cov.shape}")
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cov))):
            raise CovarianceError("mean and covariance must be finite")
        scale = np.max(np.abs(cov))
        if scale == 0 or np.max(np.abs(cov - cov.T)) > 1e-12 * scale:
            raise CovarianceError("covariance is not symmetric (or is zero)")
        if np.any(np.diag(cov) <= 0):
            raise CovarianceError("covariance diagonal must be strictly positive")
        try:
            chol = np.linalg.cholesky(cov)
        except np.linalg.LinAlgError as exc:
            raise CovarianceError("covariance is not positive-definite") from exc
        chol.flags.writeable = False
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)
        object.__setattr__(self, "cholesky", chol)

    @classmethod
    def standard(cls, m: int, correlations: dict[tuple[int, int], float] | None = None):
        """Zero-mean, unit-variance population with optional pairwise correlations."""
        cov = np.eye(m)
        for (i, j), rho in (correlations or {}).items():
            cov[i, j] = cov[j, i] = rho
        return cls(np.zeros(m), cov)

    @property
    def n_features(self) -> int:
        return self.mean.size


def sample_population(
    pop: GaussianPopulation,
    n: int,
    seed: int,
    feature_names: Sequence[str] | None = None,
) -> Dataset:
    """Draw ``n`` i.i.d. rows ``mean + L z`` (L lower Cholesky factor).

    ``z`` is filled row-major from the ``(seed, 0)`` stream described in
    :mod:`deltaxai._random`.
    """
    if n < 2:
        raise ValueError("need n >= 2 rows")
    z = _random.standard_normals(_random.stream(seed, _random.POPULATION), (n, pop.n_features))
    values = pop.mean + z @ pop.cholesky.T
    return Dataset(values, tuple(feature_names) if feature_names else ())
