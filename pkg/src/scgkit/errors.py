"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operand shapes do not agree."""


class BreakdownError(ArithmeticError):
    """A divisor fell below the breakdown guard.

    ``index`` is the offending row (triangular solves) or iteration.
    """

    def __init__(self, message: str, index: int = -1):
        super().__init__(message)
        self.index = index


class SingularMatrixError(ArithmeticError):
    """Matrix is singular to working precision."""


class MatrixMarketError(ValueError):
    """Malformed Matrix Market input."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnsupportedFormatError(MatrixMarketError):
    """Matrix Market header names a format this reader does not handle."""
