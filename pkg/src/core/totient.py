"""
FRANEL Totient Module
Euler totient sieve with prefix sums, prime and Mobius sieves
"""

import logging
from dataclasses import dataclass
from math import isqrt

import numpy as np

from config import FRANELConfig
from src.errors import InvalidArgumentError, SizeLimitError

logger = logging.getLogger(__name__)


def _check_sieve_limit(limit: int) -> None:
    if limit < 1:
        raise InvalidArgumentError(f"Sieve limit must be >= 1, got {limit}")

    if limit > FRANELConfig.MAX_SIEVE_LIMIT:
        raise SizeLimitError(
            f"Sieve limit {limit} exceeds MAX_SIEVE_LIMIT={FRANELConfig.MAX_SIEVE_LIMIT}"
        )

    needed = (limit + 1) * FRANELConfig.SIEVE_BYTES_PER_ENTRY
    budget = FRANELConfig.sieve_memory_budget()
    if needed > budget:
        raise SizeLimitError(
            f"Sieve limit {limit} needs {needed} bytes, budget is {budget} bytes"
        )


def primes_up_to(limit: int) -> np.ndarray:
    """
    Sieve of Eratosthenes

    Args:
        limit: Inclusive upper bound

    Returns:
        Ascending int64 array of the primes <= limit
    """
    if limit < 2:
        return np.empty(0, dtype=np.int64)

    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for i in range(2, isqrt(limit) + 1):
        if is_prime[i]:
            is_prime[i * i::i] = False

    return np.flatnonzero(is_prime).astype(np.int64)


def mobius_sieve(limit: int) -> np.ndarray:
    """
    Mobius function mu(k) for 0 <= k <= limit (mu[0] is unused and 0)

    Args:
        limit: Inclusive upper bound

    Returns:
        int8 array indexed by k
    """
    _check_sieve_limit(limit)

    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes_up_to(limit):
        p = int(p)
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p::p * p] = 0

    return mu


@dataclass(frozen=True, eq=False)
class TotientTable:
    """
    phi(k) and its prefix sums up to ``limit``

    ``phi[k]`` and ``prefix[k]`` are indexed directly by k; index 0 holds 0.
    ``prefix[m]`` is the number of interior Farey fractions of order m.
    Both arrays are read-only, so a table can be shared between threads.
    """

    limit: int
    phi: np.ndarray
    prefix: np.ndarray

    def is_prime(self, k: int) -> bool:
        """Primality via phi(k) = k - 1"""
        return 2 <= k <= self.limit and int(self.phi[k]) == k - 1

    def primes(self) -> np.ndarray:
        """Ascending primes <= limit"""
        k = np.arange(self.limit + 1, dtype=np.int64)
        mask = (self.phi == k - 1)
        mask[:2] = False
        return np.flatnonzero(mask).astype(np.int64)


def totient_sieve(limit: int) -> TotientTable:
    """
    Compute phi(1..limit) and prefix sums in O(limit log log limit)

    Memory is 16 bytes per entry (two int64 arrays); the request is refused
    when that exceeds half of the currently available RAM or MAX_SIEVE_LIMIT.

    Args:
        limit: Largest k to tabulate

    Returns:
        Immutable TotientTable

    Raises:
        InvalidArgumentError: limit < 1
        SizeLimitError: memory bound exceeded
    """
    _check_sieve_limit(limit)

    phi = np.arange(limit + 1, dtype=np.int64)
    for p in primes_up_to(limit):
        p = int(p)
        phi[p::p] -= phi[p::p] // p

    # n(m) = sum_{k=2}^m phi(k); phi(1) is excluded
    prefix = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 2:
        np.cumsum(phi[2:], out=prefix[2:])

    phi.flags.writeable = False
    prefix.flags.writeable = False

    logger.debug("Totient sieve up to %d: n(limit) = %d", limit, int(prefix[limit]))
    return TotientTable(limit=limit, phi=phi, prefix=prefix)


def farey_interior_count(m: int, table: TotientTable) -> int:
    """
    Number of reduced fractions strictly between 0 and 1 with denominator <= m

    Raises:
        InvalidArgumentError: m < 2 or m > table.limit
    """
    if m < 2 or m > table.limit:
        raise InvalidArgumentError(
            f"Order m must satisfy 2 <= m <= {table.limit}, got {m}"
        )

    return int(table.prefix[m])
