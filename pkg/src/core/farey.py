"""
FRANEL Farey Module
Streaming enumeration of Farey sequences by the next-term recurrence,
a brute-force oracle and Mobius-based ranking
"""

import logging
from dataclasses import dataclass
from functools import cmp_to_key
from math import gcd
from typing import Iterator, List, Tuple

import numpy as np

from config import FRANELConfig
from src.core.totient import mobius_sieve
from src.errors import FareyOverflowError, InvalidArgumentError, SizeLimitError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FareyFraction:
    """
    A reduced fraction num/den with its 1-based position in F_m

    ``index`` counts 0/1 as position 1; consumers that index interior
    fractions only (see src.profile.franel) use ``index - 1``.
    """

    num: int
    den: int
    index: int

    @property
    def value(self) -> float:
        return self.num / self.den


def _check_order(m: int) -> None:
    if m < 2:
        raise InvalidArgumentError(f"Farey order must be >= 2, got {m}")

    # t*d <= m + b < 2m and t*c <= t*d, so 2m bounds every intermediate
    if 2 * m > FRANELConfig.INT64_MAX:
        raise FareyOverflowError(
            f"Farey order {m} overflows 64-bit recurrence intermediates"
        )


def _farey_pairs(m: int) -> Iterator[Tuple[int, int]]:
    a, b, c, d = 0, 1, 1, m
    yield a, b
    while True:
        yield c, d
        if d == 1:
            return
        t = (m + b) // d
        a, b, c, d = c, d, t * c - a, t * d - b


def stream_farey(m: int) -> Iterator[FareyFraction]:
    """
    Yield F_m in ascending order, 0/1 through 1/1

    Memory is constant: each term depends only on the previous two.

    Args:
        m: Farey order

    Returns:
        Iterator of FareyFraction with 1-based indices

    Raises:
        InvalidArgumentError: m < 2
        FareyOverflowError: intermediates would exceed int64
    """
    _check_order(m)
    return (
        FareyFraction(num=h, den=k, index=i)
        for i, (h, k) in enumerate(_farey_pairs(m), start=1)
    )


def iter_interior_chunks(
    m: int,
    chunk_size: int = FRANELConfig.CHUNK_SIZE
) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """
    Yield the interior fractions of F_m as (numerators, denominators) chunks

    Same recurrence and order as stream_farey, endpoints 0/1 and 1/1 dropped.
    Each chunk holds at most ``chunk_size`` fractions as int64 arrays.
    """
    _check_order(m)
    if chunk_size < 1:
        raise InvalidArgumentError(f"Chunk size must be >= 1, got {chunk_size}")

    nums: List[int] = []
    dens: List[int] = []
    a, b, c, d = 0, 1, 1, m

    while d != 1:
        nums.append(c)
        dens.append(d)
        if len(nums) == chunk_size:
            yield np.array(nums, dtype=np.int64), np.array(dens, dtype=np.int64)
            nums, dens = [], []

        t = (m + b) // d
        a, b, c, d = c, d, t * c - a, t * d - b

    if nums:
        yield np.array(nums, dtype=np.int64), np.array(dens, dtype=np.int64)


def _compare(x: Tuple[int, int], y: Tuple[int, int]) -> int:
    lhs = x[0] * y[1]
    rhs = y[0] * x[1]
    return (lhs > rhs) - (lhs < rhs)


def brute_force_farey(m: int) -> List[FareyFraction]:
    """
    Oracle: every reduced h/k with 0 <= h <= k <= m, sorted by exact comparison

    Raises:
        InvalidArgumentError: m < 1
        SizeLimitError: m above BRUTE_FORCE_MAX_M
    """
    if m < 1:
        raise InvalidArgumentError(f"Farey order must be >= 1, got {m}")
    if m > FRANELConfig.BRUTE_FORCE_MAX_M:
        raise SizeLimitError(
            f"Brute-force enumeration refused for m={m} "
            f"(limit {FRANELConfig.BRUTE_FORCE_MAX_M})"
        )

    pairs = [(0, 1), (1, 1)]
    for k in range(2, m + 1):
        pairs.extend((h, k) for h in range(1, k) if gcd(h, k) == 1)

    pairs.sort(key=cmp_to_key(_compare))
    return [
        FareyFraction(num=h, den=k, index=i)
        for i, (h, k) in enumerate(pairs, start=1)
    ]


def rank_of(h: int, k: int, m: int) -> int:
    """
    1-based position of h/k in F_m without enumerating the sequence

    Counts reduced p/q in (0, h/k] with q <= m by Mobius inversion,
    sum_d mu(d) * sum_{q <= m/d} floor(q*h/k), then adds one for 0/1.

    Raises:
        InvalidArgumentError: h/k not reduced or outside [0, 1], or k > m
    """
    if k < 1 or h < 0 or h > k or k > m:
        raise InvalidArgumentError(
            f"Need 0 <= h <= k <= m with k >= 1, got h={h}, k={k}, m={m}"
        )
    if gcd(h, k) != 1:
        raise InvalidArgumentError(f"Fraction {h}/{k} is not reduced")

    if h == 0:
        return 1

    mu = mobius_sieve(m)
    count = 0
    for d in np.flatnonzero(mu):
        d = int(d)
        q = np.arange(1, m // d + 1, dtype=np.int64)
        count += int(mu[d]) * int((q * h // k).sum())

    return count + 1
