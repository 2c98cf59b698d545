"""Exception types shared across the package.

Everything derives from :class:`QcfracError` so callers can catch the whole
family at once; the CLI maps these to usage/verification exit codes.
"""

from __future__ import annotations


class QcfracError(Exception):
    """Base class for all package-specific errors."""


class NonUnitSeries(QcfracError):
    """A series with zero constant term was used where an invertible one is required."""


class FormallyDivergentProduct(QcfracError):
    """Infinite Pochhammer product whose base carries no positive power of q."""


class UnsupportedShift(QcfracError):
    """A family was requested at a shift outside its defined range."""


class PoleAtParameter(QcfracError):
    """A parameter choice makes a constant factor vanish inside a denominator."""


class NonUnitDenominator(QcfracError):
    """A continued-fraction denominator is not invertible at the working order."""


class HorizonExceeded(QcfracError):
    """No index satisfying the requested bound was found within the search horizon."""


class NumericBlowup(QcfracError):
    """Floating-point continued-fraction evaluation hit a vanishing denominator."""


class UnknownIdentity(QcfracError):
    """Catalog lookup with an id that is not registered."""


class NonUnitInput(QcfracError):
    """Division-step input whose constant term is not exactly one."""


class PrecisionExhausted(QcfracError):
    """Expansion ran out of usable series precision before reaching the target depth.

    Carries the partial trace produced so far in ``partial``.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
