"""Exception types shared across the package."""


class ParseError(ValueError):
    """Raised on malformed polynomial expressions; carries the 0-based position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class QuadratureError(RuntimeError):
    """Raised when an integrand returns NaN/inf at an interior abscissa."""

    def __init__(self, message, abscissa=None):
        if abscissa is not None:
            message = f"{message} (abscissa {abscissa!r})"
        super().__init__(message)
        self.abscissa = abscissa


class RegimeBoundaryError(ValueError):
    """Derivative formulas are undefined exactly at a regime boundary."""


class DegenerateFiberError(ValueError):
    """The leading y-coefficient vanishes at the requested circle point."""


class ResolutionError(RuntimeError):
    """No (root number, bad local factor) assignment satisfies the L-function
    consistency threshold; usually a wrong conductor or too few coefficients."""
