"""Exception types raised by the solver stack."""


class InvalidGeometryError(ValueError):
    """Physical description violates a geometric or material constraint."""


class TruncationError(RuntimeError):
    """Power series did not converge within the allowed number of terms."""

    def __init__(self, message, tail_estimate=float("nan")):
        super().__init__(message)
        self.tail_estimate = tail_estimate


class SeriesRangeError(OverflowError):
    """A partial sum left the safe floating-point range."""


class InsufficientRangeError(RuntimeError):
    """Fewer roots than requested were found below the scan limit."""

    def __init__(self, message, found=0):
        super().__init__(message)
        self.found = found


class NotAnEigenvalueError(ValueError):
    """Boundary matrix is not singular at the supplied trial value."""


class OracleAssemblyError(ValueError):
    """Reference discretization could not be assembled."""
