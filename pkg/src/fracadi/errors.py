"""Exception types shared across the package."""


class InvalidGridError(ValueError):
    """Degenerate interval or too few cells to define an interior."""


class DimensionError(ValueError):
    """Array length or shape incompatible with the operator or grid."""


class UnsupportedOrderError(ValueError):
    """Fractional order outside the supported range (1, 2]."""


class NonFiniteFieldError(ValueError):
    """A field contains NaN or infinite entries."""


class NonFiniteInputError(ValueError):
    """A user callable produced a non-finite value at a grid node."""


class DivergenceError(RuntimeError):
    """Time stepping produced non-finite values (implementation bug:
    the scheme itself is unconditionally stable)."""


class UndefinedRateError(ValueError):
    """Convergence rate requested for nonpositive errors."""
