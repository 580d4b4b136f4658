"""
FRANEL Asymptotic Parameters
a(m) = s m^t, b(m) = u m^v and the ratio-scan exponent offset
"""

from dataclasses import dataclass

from config import FRANELConfig
from src.errors import InvalidArgumentError


@dataclass(frozen=True)
class AsymptoticParams:
    """(s, t, u, v, epsilon); alpha = u and beta = -v"""

    s: float
    t: float
    u: float
    v: float
    epsilon: float = FRANELConfig.REFERENCE_EPSILON

    def __post_init__(self):
        if not self.epsilon > 0:
            raise InvalidArgumentError(f"epsilon must be > 0, got {self.epsilon!r}")

    @property
    def alpha(self) -> float:
        return self.u

    @property
    def beta(self) -> float:
        return -self.v

    def a(self, m: float) -> float:
        return self.s * m ** self.t

    def b(self, m: float) -> float:
        return self.u * m ** self.v

    @classmethod
    def reference(cls, epsilon: float = FRANELConfig.REFERENCE_EPSILON) -> "AsymptoticParams":
        """Published M(101,800) row"""
        s, t, u, v = FRANELConfig.PUBLISHED_TABLE[FRANELConfig.REFERENCE_PARAMS_ROW]
        return cls(s=s, t=t, u=u, v=v, epsilon=epsilon)

    @classmethod
    def from_row(cls, row, epsilon: float = FRANELConfig.REFERENCE_EPSILON) -> "AsymptoticParams":
        """From a FitTableRow or any object with s, t, u, v attributes"""
        return cls(s=row.s, t=row.t, u=row.u, v=row.v, epsilon=epsilon)
