"""
FRANEL Summation Module
Compensated (Kahan) running sums over scalars or numpy arrays
"""

import math
from typing import Tuple, Union

import numpy as np

Number = Union[float, np.ndarray]


class KahanAccumulator:
    """
    Running compensated sum

    Works element-wise when initialised with an array, so one accumulator
    can hold a separate sum per denominator. The order of ``add`` calls
    fixes the result bit for bit.
    """

    def __init__(self, initial: Number = 0.0):
        if isinstance(initial, np.ndarray):
            self._sum = initial.astype(np.float64, copy=True)
            self._compensation = np.zeros_like(self._sum)
        else:
            self._sum = float(initial)
            self._compensation = 0.0

    def add(self, value: Number) -> None:
        """Add a scalar, or an array matching the accumulator's shape"""
        y = value - self._compensation
        t = self._sum + y
        self._compensation = (t - self._sum) - y
        self._sum = t

    @property
    def value(self) -> Number:
        return self._sum


def split_bincount(
    keys: np.ndarray,
    values: np.ndarray,
    minlength: int
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Per-key sums of ``values`` as a (high, low) pair

    Every value is split against one power of two ``sigma`` so that all high
    parts are multiples of the same quantum and their per-key sums are exact.
    Only the low parts, each below half that quantum, are summed with
    ordinary rounding. Feed both arrays to a KahanAccumulator.
    """
    high = np.zeros(minlength, dtype=np.float64)
    if values.size == 0:
        return high, high.copy()

    peak = float(np.max(np.abs(values)))
    if peak == 0.0 or not math.isfinite(peak):
        return np.bincount(keys, weights=values, minlength=minlength), high

    # sigma > 2 * count * peak keeps every partial sum of high parts exact
    sigma = math.ldexp(1.0, math.frexp(peak)[1] + (values.size + 1).bit_length() + 1)
    parts = (values + sigma) - sigma
    return (
        np.bincount(keys, weights=parts, minlength=minlength),
        np.bincount(keys, weights=values - parts, minlength=minlength)
    )
