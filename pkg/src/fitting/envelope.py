"""
FRANEL Envelope Fitting
Two-point exponential envelope exp(a_m + b_m k) through the prime hull
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from src.core.totient import primes_up_to
from src.errors import DomainError, InvalidArgumentError
from src.fitting.primes import nearest_prime_to_half
from src.profile.franel import DenominatorProfile

logger = logging.getLogger(__name__)

Anchor = Tuple[int, float]


@dataclass(frozen=True)
class ExpFit:
    """
    Envelope parameters for one m

    ``anchor_hi`` is (m, P_m(m)) for prime m; ``anchor_lo`` is
    (k*, P_m(k*)) with k* the prime closest to m/2.
    """

    m: int
    a: float
    b: float
    anchor_hi: Anchor
    anchor_lo: Anchor

    @property
    def k_star(self) -> int:
        return self.anchor_lo[0]

    def value(self, k: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """exp(a + b k)"""
        return np.exp(self.a + self.b * np.asarray(k, dtype=np.float64))

    def anchor_errors(self) -> Tuple[float, float]:
        """Relative misfit of the envelope at both anchors"""
        return tuple(
            abs(float(self.value(k)) - p) / p
            for k, p in (self.anchor_hi, self.anchor_lo)
        )


def _anchor(profile: DenominatorProfile, k: int) -> Anchor:
    value = profile.p(k)
    if value <= 0.0:
        raise DomainError(
            f"P_{profile.m}({k}) = {value!r} is not positive; cannot take its log"
        )
    return k, value


def _solve(m: int, hi: Anchor, lo: Anchor) -> ExpFit:
    (k_hi, p_hi), (k_lo, p_lo) = hi, lo
    b = (math.log(p_hi) - math.log(p_lo)) / (k_hi - k_lo)
    a = math.log(p_hi) - b * k_hi
    return ExpFit(m=m, a=a, b=b, anchor_hi=hi, anchor_lo=lo)


def envelope_fit(profile: DenominatorProfile) -> ExpFit:
    """
    Two-point envelope for any m >= 3

    The upper anchor is the largest prime <= m (m itself when m is prime),
    the lower anchor the prime closest to m/2.

    Raises:
        InvalidArgumentError: fewer than two primes available
        DomainError: an anchor value is not positive
    """
    primes = primes_up_to(profile.m)
    if primes.size < 2:
        raise InvalidArgumentError(
            f"Envelope fit needs two primes <= m, m={profile.m}"
        )

    k_hi = int(primes[-1])
    k_lo = nearest_prime_to_half(profile.m, below=k_hi)
    fit = _solve(profile.m, _anchor(profile, k_hi), _anchor(profile, k_lo))

    logger.debug(
        "Envelope m=%d: anchors k=%d, k*=%d, a=%r, b=%r",
        profile.m, k_hi, k_lo, fit.a, fit.b
    )
    return fit


def two_point_exp_fit(profile: DenominatorProfile) -> ExpFit:
    """
    (a_m, b_m) from P_m at k = m and at the prime closest to m/2

    Raises:
        InvalidArgumentError: m is not prime
        DomainError: an anchor value is not positive
    """
    primes = primes_up_to(profile.m)
    if primes.size == 0 or int(primes[-1]) != profile.m:
        raise InvalidArgumentError(f"Two-point fit needs a prime m, got m={profile.m}")

    return envelope_fit(profile)
