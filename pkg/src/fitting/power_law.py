"""
FRANEL Power-Law Regression
Ordinary least squares in log-log space: value = coefficient * m^exponent
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from scipy import stats

from src.errors import DomainError, InvalidArgumentError

logger = logging.getLogger(__name__)

Point = Tuple[float, float]


@dataclass(frozen=True)
class PowerLawModel:
    """
    coefficient * m^exponent with the fit's log-space residuals

    The sign of the data is carried by ``coefficient``.
    """

    coefficient: float
    exponent: float
    points: List[Point] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)

    def __call__(self, m):
        return self.coefficient * np.power(m, self.exponent)

    def direct_residuals(self) -> List[float]:
        """value - model(m) for each point"""
        return [value - float(self(m)) for m, value in self.points]


def power_law_fit(points: Sequence[Point]) -> PowerLawModel:
    """
    Fit value = c * m^e by regressing ln|value| on ln m

    Args:
        points: (m, value) pairs, all values of one sign, all m >= 2

    Returns:
        PowerLawModel with log-space residuals

    Raises:
        InvalidArgumentError: fewer than 2 points, m < 2 or all m equal
        DomainError: a zero value or mixed signs
    """
    points = [(float(m), float(value)) for m, value in points]
    if len(points) < 2:
        raise InvalidArgumentError(
            f"Power-law fit needs at least 2 points, got {len(points)}"
        )

    ms = np.array([m for m, _ in points])
    values = np.array([value for _, value in points])

    if np.any(ms < 2):
        raise InvalidArgumentError(f"Power-law abscissae must be >= 2, got min {ms.min()!r}")
    if np.any(values == 0.0):
        raise DomainError("Power-law fit got a zero value; log is undefined")

    signs = np.sign(values)
    if not np.all(signs == signs[0]):
        bad = [m for m, value in points if np.sign(value) != signs[0]]
        logger.warning("Sign change in power-law data at m = %s", bad)
        raise DomainError(f"Power-law data change sign at m = {bad}")
    if np.all(ms == ms[0]):
        raise InvalidArgumentError("Power-law fit needs at least two distinct m")

    sign = float(signs[0])
    x = np.log(ms)
    y = np.log(np.abs(values))
    result = stats.linregress(x, y)

    residuals = y - (result.intercept + result.slope * x)
    model = PowerLawModel(
        coefficient=sign * math.exp(result.intercept),
        exponent=float(result.slope),
        points=points,
        residuals=[float(r) for r in residuals]
    )

    logger.debug(
        "Power law over %d points: coefficient=%r exponent=%r r=%r",
        len(points), model.coefficient, model.exponent, result.rvalue
    )
    return model
