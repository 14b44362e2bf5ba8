"""Exception hierarchy. Everything derives from ``DeltaXAIError`` (a ``ValueError``)."""


class DeltaXAIError(ValueError):
    pass


class DimensionError(DeltaXAIError):
    """Input width does not match the model or dataset arity."""


class CovarianceError(DeltaXAIError):
    """Covariance matrix is not symmetric positive-definite."""


class ZeroVarianceError(DeltaXAIError):
    """A density fit was asked for a constant sample; delta is undefined."""


class IntervalError(DeltaXAIError):
    pass


class ThresholdError(DeltaXAIError):
    """Decision threshold missing or outside (0, 1)."""


class PartitionError(DeltaXAIError):
    """A conditioning bin holds too few rows."""


class TooManyFeaturesError(DeltaXAIError):
    pass


class ConfigError(DeltaXAIError):
    """Invalid scenario configuration.

    ``where`` is a JSON path (``task.bootstrap``) or ``line N, column M``.
    """

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
