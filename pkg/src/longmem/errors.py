"""Exception types shared across the package.

The CLI maps these onto exit codes: validation problems (domain, range,
shape, degenerate input) exit 2, numerical failures exit 3, and data/IO
problems exit 4.
"""


class LongmemError(Exception):
    """Base class for all package errors."""


class DomainError(LongmemError, ValueError):
    """A parameter is outside its mathematical domain (e.g. d >= 1/2)."""


class RangeError(LongmemError, ValueError):
    """A size/bandwidth/lag argument is out of range for the given series."""


class ShapeError(LongmemError, ValueError):
    """Array arguments have incompatible shapes."""


class DegenerateInputError(LongmemError, ValueError):
    """The input data is degenerate for the requested operation
    (constant series, zero periodogram ordinate, empty request)."""


class NumericalError(LongmemError, ArithmeticError):
    """A numerical method failed (loss of positive definiteness,
    non-convergence)."""


class DataError(LongmemError, RuntimeError):
    """A bundled or user-supplied data file is missing, corrupt, or
    unparseable."""
