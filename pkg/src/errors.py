"""
FRANEL Errors
Exception hierarchy shared by the library and the CLI
"""

from typing import Iterable, Optional


class FranelError(Exception):
    """Base class for every error raised by FRANEL"""


class InvalidArgumentError(FranelError, ValueError):
    """An argument is outside the operation's domain"""


class SizeLimitError(InvalidArgumentError):
    """A request exceeds a configured size guard"""


class FareyOverflowError(FranelError, OverflowError):
    """A recurrence intermediate would not fit a signed 64-bit integer"""


class DomainError(FranelError, ValueError):
    """A value is outside a mathematical domain (log of a non-positive value, mixed signs)"""


class EnvelopeRangeError(FranelError, OverflowError):
    """An exponent falls outside the finite double range"""

    def __init__(self, message: str, exponent: Optional[float] = None):
        super().__init__(message)
        self.exponent = exponent


class QuadratureError(FranelError, RuntimeError):
    """Numerical integration did not reach the requested tolerance"""

    def __init__(self, message: str, achieved: float):
        super().__init__(message)
        self.achieved = achieved


class MissingProfileError(FranelError, LookupError):
    """Profiles needed by a fit are unavailable"""

    def __init__(self, missing: Iterable[int]):
        self.missing = sorted(missing)
        super().__init__(
            f"Missing profile for m = {', '.join(str(m) for m in self.missing)}"
        )


class CacheChecksumError(FranelError, RuntimeError):
    """A cached profile does not match its stored digest"""
