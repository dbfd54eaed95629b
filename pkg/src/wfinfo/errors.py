"""Exception types raised by the library."""


class UndefinedEventError(ValueError):
    """The event has probability zero under both the baseline and the alternative model."""


class BoundaryEventError(ValueError):
    """An interior-state quantity was requested at a degenerate boundary state."""


class UnsupportedParametersError(ValueError):
    """Parameters lie outside the regime in which the requested computation is valid."""


class CapacityError(ValueError):
    """Problem size exceeds the configured solver capacity."""
