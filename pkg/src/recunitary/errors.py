"""Exception types raised by the library."""

from __future__ import annotations


class UnitaryError(ValueError):
    """Base class for all library errors."""


class ShapeError(UnitaryError):
    """Operand shapes are incompatible with the requested operation."""


class NotUnitaryError(UnitaryError):
    """A matrix required to be unitary deviates from it beyond tolerance."""

    def __init__(self, deviation: float, tolerance: float):
        self.deviation = deviation
        self.tolerance = tolerance
        super().__init__(
            f"matrix is not unitary: deviation {deviation:.3e} exceeds "
            f"tolerance {tolerance:.3e}"
        )


class NormError(UnitaryError):
    """A vector required to have unit norm does not."""


class ParameterError(UnitaryError):
    """A parameter set or level list is malformed."""


class NonFiniteError(UnitaryError):
    """Numeric input contains NaN or infinity."""
