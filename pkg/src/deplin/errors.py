"""Exception types raised across the library."""


class DeplinError(Exception):
    """Base class for all library errors."""


class TreeValidationError(DeplinError, ValueError):
    """A head vector or edge list does not encode a valid tree."""


class NoRootError(TreeValidationError):
    pass


class MultipleRootsError(TreeValidationError):
    pass


class SelfHeadError(TreeValidationError):
    pass


class OutOfRangeError(TreeValidationError):
    pass


class CycleError(TreeValidationError):
    pass


class NotATreeError(TreeValidationError):
    pass


class DuplicateEdgeError(TreeValidationError):
    pass


class SelfLoopError(TreeValidationError):
    pass


class SizeMismatchError(DeplinError, ValueError):
    """Tree and arrangement are not over the same vertex set."""


class NoEdgesError(DeplinError, ValueError):
    """Metric undefined on a single-vertex tree."""


class TooSmallError(DeplinError, ValueError):
    """Metric undefined below a minimum vertex count."""


class SizeLimitExceededError(DeplinError, ValueError):
    """Exhaustive computation requested beyond the configured bound."""


class EnsembleTooLargeError(DeplinError, ValueError):
    """Exact estimation requested over an ensemble beyond the configured bound."""


class UnknownMetricError(DeplinError, KeyError):
    """Metric name not present in the feature registry."""


class KindMismatchError(DeplinError, ValueError):
    """Metric requires rooted trees but a free tree kind was given."""


class MalformedLineError(DeplinError, ValueError):
    """An input line could not be parsed; carries a 1-based line number."""

    def __init__(self, message, line_no=None):
        super().__init__(message)
        self.line_no = line_no


class NonContiguousIdsError(MalformedLineError):
    pass


class HeadOutOfRangeError(MalformedLineError):
    pass
