"""Exception types shared across the package."""


class GeoARError(Exception):
    """Base class for all package errors."""


class InvalidSpecError(GeoARError, ValueError):
    """A model specification violates one of its invariants."""


class NumericalError(GeoARError, ArithmeticError):
    """An iterative numerical routine failed to converge."""


class InsufficientDataError(GeoARError, ValueError):
    """A series is too short for the requested operation."""


class SeriesFileError(GeoARError, OSError):
    """A CSV series file could not be read or contained no usable data."""
