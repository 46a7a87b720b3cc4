"""Exception types shared across the package."""


class ForecastError(Exception):
    """Base class for all errors raised by this package."""


class CapacityError(ForecastError):
    """A requested register or resource exceeds the supported size."""


class ShapeError(ForecastError):
    """Array or circuit dimensions are inconsistent."""


class NumericError(ForecastError):
    """Non-finite values entered a computation that requires finite input."""


class EmptyInputError(ForecastError):
    """An operation received an empty sequence or dataset."""


class InsufficientDataError(ForecastError):
    """Too few rows for the requested windowing or interpolation."""


class FormatError(ForecastError):
    """Malformed input file (bad header, cell, or date)."""


class StateError(ForecastError):
    """Caches or moments do not match the parameters they were built from."""


class CompatibilityError(ForecastError):
    """A model file is unreadable or has an unsupported format version."""
