"""
FRANEL Bump Detection
Prime hull of P_m(k) and its excursions near k = m/j
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
from scipy.signal import find_peaks

from config import FRANELConfig
from src.core.totient import TotientTable, primes_up_to
from src.fitting.envelope import envelope_fit
from src.profile.franel import DenominatorProfile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Bump:
    """A detrended hull peak and the ratio m/j it sits next to"""

    k_peak: int
    j: int
    distance: float
    prominence: float


def prime_hull(
    profile: DenominatorProfile,
    table: Optional[TotientTable] = None
) -> List[Tuple[int, float]]:
    """(k, P_m(k)) for prime k <= m, ascending in k"""
    if table is not None and table.limit >= profile.m:
        primes = table.primes()
        primes = primes[primes <= profile.m]
    else:
        primes = primes_up_to(profile.m)

    return [(int(k), float(profile.p_values[k])) for k in primes]


def nearest_ratio(k: int, m: int) -> Tuple[int, float]:
    """
    j in [2, m-1] minimising |k - m/j|; ties go to the smaller j

    Returns:
        (j, |k - m/j|)
    """
    j0 = m // k
    candidates = [j for j in range(j0 - 1, j0 + 3) if 2 <= j <= m - 1]
    if not candidates:
        candidates = [2] if m > 2 else []
    if not candidates:
        return 0, float("inf")

    best = min(candidates, key=lambda j: (abs(Fraction(k) - Fraction(m, j)), j))
    return best, float(abs(Fraction(k) - Fraction(m, best)))


def _falls_after(values: np.ndarray, index: int, right_base: int) -> bool:
    # Raw hull drops below the peak before the detrended series recovers
    following = values[index + 1:right_base + 1]
    return following.size > 0 and bool(following.min() < values[index])


def detect_bumps(
    profile: DenominatorProfile,
    min_relative_prominence: float = FRANELConfig.BUMP_MIN_RELATIVE_PROMINENCE
) -> List[Bump]:
    """
    Local maxima of the prime hull after dividing out the two-point envelope

    A peak must exceed both neighbouring primes and stand out from its
    surroundings by at least ``min_relative_prominence`` of its own height.
    The raw hull must also fall somewhere between the peak and the right
    base of its prominence, so a monotone profile has no bumps however
    poorly the envelope fits it.

    Args:
        profile: Profile with m >= BUMP_MIN_M
        min_relative_prominence: Prominence / detrended peak value threshold

    Returns:
        Bumps ascending in k; empty for small m
    """
    if profile.m < FRANELConfig.BUMP_MIN_M:
        logger.debug("m=%d too small for bump detection", profile.m)
        return []

    hull = prime_hull(profile)
    ks = np.array([k for k, _ in hull], dtype=np.int64)
    values = np.array([p for _, p in hull], dtype=np.float64)

    fit = envelope_fit(profile)
    detrended = values / fit.value(ks)

    peaks, properties = find_peaks(detrended, prominence=0.0)
    bumps = []
    for index, prominence, right_base in zip(
        peaks, properties["prominences"], properties["right_bases"]
    ):
        if prominence / detrended[index] < min_relative_prominence:
            continue
        if not _falls_after(values, index, int(right_base)):
            continue
        k_peak = int(ks[index])
        j, distance = nearest_ratio(k_peak, profile.m)
        bumps.append(Bump(k_peak=k_peak, j=j, distance=distance, prominence=float(prominence)))

    logger.info(
        "m=%d: %d bump(s) at k = %s",
        profile.m, len(bumps), [bump.k_peak for bump in bumps]
    )
    return bumps
