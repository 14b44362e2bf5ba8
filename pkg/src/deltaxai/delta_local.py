"""Local delta attributions via bootstrap Monte Carlo.

For an instance ``x*`` with prediction ``y* = h(x*)``, each bootstrap replicate
resamples the training rows, fits a KDE to the model outputs, and for every
feature ``i`` refits on outputs with column ``i`` overwritten by ``x*_i``:

* regression: ``delta_i = f(y* | x_i = x*_i) - f(y*)``
* binary classification: ``delta_i = P(y > d_t | x_i = x*_i) - P(y > d_t)``

Within a replicate the deltas are normalised to ``|delta_i| / sum_j |delta_j|``.
Medians and IQRs are then taken across replicates, and a sign is assigned
when more than 95% of replicates agree on it.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from deltaxai import _random
from deltaxai.density import cdf_interval, exceedance, fit_kde, pdf_at
from deltaxai.errors import DimensionError, ThresholdError
from deltaxai.model import Dataset, Predictor, predict, predict_batch

DEGENERATE_EPS = 1e-12
SIGN_QUORUM = 0.95


class Sign(str, enum.Enum):
    POSITIVE = "+"
    NEGATIVE = "-"
    INDETERMINATE = "*"


@dataclass(frozen=True)
class ExplanationTask:
    """What to explain and how.

    ``upper`` bounds the classification integral. The default (infinity) is
    the upper-tail probability ``P(y > d_t)``. With ``upper=1.0`` the Gaussian
    kernel mass that spills past 1 is dropped, which biases delta downward
    for outputs piled up near 1.
    """

    kind: str = "regression"
    threshold: float | None = None
    bootstrap: int = 200
    seed: int = 0
    upper: float = math.inf

    def __post_init__(self):
        if self.kind not in ("regression", "classification"):
            raise ValueError(f"kind must be 'regression' or 'classification', got {self.kind!r}")
        if self.kind == "classification":
            if self.threshold is None or not 0.0 < self.threshold < 1.0:
                raise ThresholdError(f"decision threshold must lie in (0, 1), got {self.threshold}")
            if not self.upper > self.threshold:
                raise ThresholdError("upper integration bound must exceed the threshold")
        elif self.threshold is not None:
            raise ThresholdError("regression tasks take no decision threshold")
        if int(self.bootstrap) < 2:
            raise ValueError("need at least 2 bootstrap iterations")


@dataclass(frozen=True)
class FeatureAttribution:
    raw_delta_median: float
    normalized_median: float
    normalized_iqr: float
    sign: Sign


@dataclass(frozen=True)
class DeltaReport:
    feature_names: tuple[str, ...]
    attributions: dict[str, FeatureAttribution]
    y_star: float
    task: ExplanationTask
    bootstrap_replicates: np.ndarray
    normalized_replicates: np.ndarray
    degenerate: np.ndarray

    @property
    def n_degenerate(self) -> int:
        return int(self.degenerate.sum())

    def ranking(self) -> list[str]:
        """Feature names by decreasing normalised median (stable on ties)."""
        return sorted(
            self.feature_names,
            key=lambda name: -self.attributions[name].normalized_median,
        )

    def normalized_medians(self) -> np.ndarray:
        return np.array([self.attributions[n].normalized_median for n in self.feature_names])


def conditional_predictions(model: Predictor, sample: Dataset | np.ndarray, feature_index: int, value: float) -> np.ndarray:
    """Predictions on a copy of ``sample`` with one column pinned to ``value``."""
    X = sample.values if isinstance(sample, Dataset) else np.asarray(sample, dtype=np.float64)
    m = X.shape[1]
    if not 0 <= feature_index < m:
        raise IndexError(f"feature index {feature_index} out of range for {m} features")
    if not math.isfinite(value):
        raise ValueError("conditioning value must be finite")
    pinned = X.copy()
    pinned[:, feature_index] = value
    return predict_batch(model, pinned)


def normalize_deltas(deltas) -> tuple[np.ndarray, bool]:
    """``|d| / sum |d|``; all zeros and ``True`` when the sum is below ``DEGENERATE_EPS``."""
    mag = np.abs(np.asarray(deltas, dtype=np.float64))
    total = mag.sum()
    if total < DEGENERATE_EPS:
        return np.zeros_like(mag), True
    return mag / total, False


def determine_sign(replicates) -> Sign:
    r = np.asarray(replicates, dtype=np.float64)
    if r.size < 2:
        raise ValueError("sign needs at least two replicates")
    # zeros count toward neither side
    if np.count_nonzero(r > 0) > SIGN_QUORUM * r.size:
        return Sign.POSITIVE
    if np.count_nonzero(r < 0) > SIGN_QUORUM * r.size:
        return Sign.NEGATIVE
    return Sign.INDETERMINATE


def _replicate_deltas(model, X, instance, y_star, task, r):
    n = X.shape[0]
    idx = _random.indices(_random.stream(task.seed, _random.BOOTSTRAP, r), n, n).astype(np.intp)
    Xb = X[idx]

    if task.kind == "regression":
        def score(outputs):
            return pdf_at(fit_kde(outputs), y_star)
    elif math.isinf(task.upper):
        def score(outputs):
            return exceedance(fit_kde(outputs), task.threshold)
    else:
        def score(outputs):
            return cdf_interval(fit_kde(outputs), task.threshold, task.upper)

    base = score(predict_batch(model, Xb))
    deltas = np.empty(X.shape[1])
    for i, value in enumerate(instance):
        deltas[i] = score(conditional_predictions(model, Xb, i, value)) - base
    return deltas


def _explain(model, trainset, instance, task, workers):
    x = np.asarray(instance, dtype=np.float64)
    if x.ndim != 1 or x.size != trainset.n_features:
        raise DimensionError(f"instance must have {trainset.n_features} entries")
    y_star = predict(model, x)
    predict_batch(model, trainset.values[:2])  # arity check before any replicate runs
    L = int(task.bootstrap)
    X = trainset.values

    def run(r):
        return _replicate_deltas(model, X, x, y_star, task, r)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, range(L)))
    else:
        rows = [run(r) for r in range(L)]

    raw = np.vstack(rows)
    normalized = np.empty_like(raw)
    degenerate = np.zeros(L, dtype=bool)
    for r in range(L):
        normalized[r], degenerate[r] = normalize_deltas(raw[r])

    q75, q25 = np.percentile(normalized, [75, 25], axis=0)
    med_raw = np.median(raw, axis=0)
    med_norm = np.median(normalized, axis=0)
    live = raw[~degenerate]
    attributions = {}
    for i, name in enumerate(trainset.feature_names):
        sign = determine_sign(live[:, i]) if live.shape[0] >= 2 else Sign.INDETERMINATE
        attributions[name] = FeatureAttribution(
            raw_delta_median=float(med_raw[i]),
            normalized_median=float(med_norm[i]),
            normalized_iqr=float(q75[i] - q25[i]),
            sign=sign,
        )
    for a in (raw, normalized, degenerate):
        a.flags.writeable = False
    return DeltaReport(
        feature_names=trainset.feature_names,
        attributions=attributions,
        y_star=y_star,
        task=task,
        bootstrap_replicates=raw,
        normalized_replicates=normalized,
        degenerate=degenerate,
    )


def delta_regression(model: Predictor, trainset: Dataset, instance, task: ExplanationTask, workers: int = 1) -> DeltaReport:
    """Density-shift attributions at the predicted value ``y*``.

    ``workers > 1`` runs replicates on a thread pool. Replicate ``r`` draws
    only from stream ``(seed, 1, r)`` and results are gathered in replicate
    order, so the report is identical to a serial run.
    """
    if task.kind != "regression":
        raise ValueError("delta_regression needs a regression task")
    return _explain(model, trainset, instance, task, workers)


def delta_classification(model: Predictor, trainset: Dataset, instance, task: ExplanationTask, workers: int = 1) -> DeltaReport:
    """Shift in the probability of clearing the decision threshold.

    Model outputs must be class probabilities in [0, 1]. Raw deltas are
    differences of two probabilities and so stay within [-1, 1].
    """
    if task.kind != "classification":
        raise ValueError("delta_classification needs a classification task")
    return _explain(model, trainset, instance, task, workers)


def explain(model: Predictor, trainset: Dataset, instance, task: ExplanationTask, workers: int = 1) -> DeltaReport:
    if task.kind == "classification":
        return delta_classification(model, trainset, instance, task, workers)
    return delta_regression(model, trainset, instance, task, workers)
