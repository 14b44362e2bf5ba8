"""Local density-shift feature attributions (delta-XAI) with global delta and exact Shapley baselines."""

from deltaxai.curves import CurveTable, curves_csv, export_curves, render_curves_svg
from deltaxai.delta_global import GlobalDeltaEstimate, delta_global
from deltaxai.delta_local import (
    DeltaReport,
    ExplanationTask,
    FeatureAttribution,
    Sign,
    conditional_predictions,
    delta_classification,
    delta_regression,
    determine_sign,
    explain,
    normalize_deltas,
)
from deltaxai.density import KdeModel, cdf_interval, exceedance, fit_kde, pdf_at, pdf_grid
from deltaxai.errors import (
    ConfigError,
    CovarianceError,
    DeltaXAIError,
    DimensionError,
    IntervalError,
    PartitionError,
    ThresholdError,
    TooManyFeaturesError,
    ZeroVarianceError,
)
from deltaxai.model import (
    Dataset,
    FunctionPredictor,
    GaussianPopulation,
    LinearModel,
    Predictor,
    predict,
    predict_batch,
    sample_population,
)
from deltaxai.shapley import ShapleyResult, shapley_exact

__version__ = "0.1.0"
