"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations

import numpy as np


class PovmRangeError(ValueError):
    """Base class for all domain errors raised by povmrange."""


class DimensionMismatch(PovmRangeError):
    pass


class ConvergenceError(PovmRangeError):
    """Jacobi sweeps exhausted before the off-diagonal mass vanished."""


class NotPSD(PovmRangeError):
    pass


class NotHermitian(PovmRangeError):
    pass


class NotPositive(PovmRangeError):
    pass


class InvalidArity(PovmRangeError):
    pass


class CompletenessViolation(PovmRangeError):
    def __init__(self, message: str, residual: np.ndarray):
        super().__init__(message)
        self.residual = residual


class PositivityViolation(PovmRangeError):
    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class LambdaOutOfRange(PovmRangeError):
    pass


class NotOutside(PovmRangeError):
    """Raised when a separating witness is requested for a compatible point."""


class InvalidTable(PovmRangeError):
    pass


class DegenerateDraw(PovmRangeError):
    pass
