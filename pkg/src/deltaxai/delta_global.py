"""Global moment-independent delta index, estimated by binning.

The feature column is cut into K equal-count bins. Within each bin the output
density is estimated by KDE and compared with the unconditional KDE in L1:

    delta = 1/2 * sum_k (n_k / N) * integral |f(y) - f_k(y)| dy

Integrals use the trapezoid rule on one grid shared by all bins.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from deltaxai.density import fit_kde, pdf_grid
from deltaxai.errors import PartitionError
from deltaxai.model import Dataset, Predictor, predict_batch

MIN_BIN_ROWS = 10


@dataclass(frozen=True)
class GlobalDeltaEstimate:
    value: float
    partitions: int
    samples_used: int
    raw_value: float


def delta_global(
    model: Predictor,
    data: Dataset,
    feature_index: int,
    partitions: int = 15,
    grid_points: int = 4096,
) -> GlobalDeltaEstimate:
    """Estimate delta for one feature. ``raw_value`` is the pre-clamp number."""
    X = data.values
    n, m = X.shape
    if not 0 <= feature_index < m:
        raise IndexError(f"feature index {feature_index} out of range for {m} features")
    if partitions < 2:
        raise PartitionError("need at least two partitions")
    if grid_points < 2048:
        raise ValueError("quadrature grid needs at least 2048 points")

    y = predict_batch(model, data)
    order = np.argsort(X[:, feature_index], kind="stable")
    bins = np.array_split(order, partitions)
    if min(b.size for b in bins) < MIN_BIN_ROWS:
        raise PartitionError(
            f"{n} rows in {partitions} bins leaves fewer than {MIN_BIN_ROWS} rows per bin"
        )

    uncond = fit_kde(y)
    conds = [fit_kde(y[b]) for b in bins]
    reach = 5.0 * max([uncond.bandwidth] + [k.bandwidth for k in conds])
    grid = np.linspace(y.min() - reach, y.max() + reach, grid_points)
    f = pdf_grid(uncond, grid)

    total = 0.0
    for b, kde in zip(bins, conds):
        shift = trapezoid(np.abs(f - pdf_grid(kde, grid)), grid)
        total += b.size / n * shift
    raw = 0.5 * total
    return GlobalDeltaEstimate(
        value=float(min(1.0, max(0.0, raw))),
        partitions=partitions,
        samples_used=n,
        raw_value=float(raw),
    )
