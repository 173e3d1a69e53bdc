class QInfoError(ValueError):
    """Base class for invalid input to the qinfo routines."""


class InvalidDimensionError(QInfoError):
    pass


class UnsupportedDimensionError(QInfoError):
    pass


class NormalizationError(QInfoError):
    pass


class PositivityError(QInfoError):
    pass


class PartitionError(QInfoError):
    pass


class ParameterRangeError(QInfoError):
    pass


class SingularityError(QInfoError):
    pass


class StateFormatError(QInfoError):
    pass


class ConvergenceError(QInfoError):
    """Raised when no optimizer restart reports success."""
