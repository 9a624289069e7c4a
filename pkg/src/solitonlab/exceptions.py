"""Exception types shared across the package."""


class SolitonLabError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(SolitonLabError, ValueError):
    """Dimension outside the valid range for a space kind."""


class KindMismatchError(SolitonLabError, TypeError):
    """A point or evaluator was used with a space of the wrong kind."""


class NormalizationError(SolitonLabError, ValueError):
    """A trial density failed its normalization constraint beyond tolerance."""


class SeriesTruncationError(SolitonLabError, RuntimeError):
    """A spectral series hit its level cap before reaching tolerance."""


class TimeDomainError(SolitonLabError, ValueError):
    """A kernel or quadrature was requested outside its valid time range."""


class DivergenceError(SolitonLabError, ArithmeticError):
    """An improper integral was detected to diverge (tail not summable)."""


class EigenSolveError(SolitonLabError, RuntimeError):
    """The symmetric eigensolver failed to converge; carries the residual."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class ConfigError(SolitonLabError, ValueError):
    """Invalid experiment configuration (unknown key, bad value, bad line)."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
