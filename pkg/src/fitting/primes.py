"""
FRANEL Prime Sets
M(p, q): the p-th through q-th primes, and the anchor-prime rule
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.core.totient import primes_up_to
from src.errors import InvalidArgumentError


@dataclass(frozen=True)
class PrimeSet:
    """The p-th through q-th primes (prime #1 = 2)"""

    p: int
    q: int
    primes: Tuple[int, ...]

    @property
    def label(self) -> str:
        return f"M({self.p},{self.q})"

    def __iter__(self):
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)


def _nth_prime_bound(n: int) -> int:
    # p_n < n (ln n + ln ln n) for n >= 6
    if n < 6:
        return 13
    return int(n * (math.log(n) + math.log(math.log(n)))) + 1


def prime_set(p: int, q: int) -> PrimeSet:
    """
    Build M(p, q)

    Raises:
        InvalidArgumentError: p < 1 or p > q
    """
    if p < 1:
        raise InvalidArgumentError(f"Prime index must be >= 1, got p={p}")
    if p > q:
        raise InvalidArgumentError(f"Prime set bounds reversed: p={p} > q={q}")

    primes = primes_up_to(_nth_prime_bound(q))
    return PrimeSet(p=p, q=q, primes=tuple(int(x) for x in primes[p - 1:q]))


def parse_prime_set_label(label: str) -> Tuple[int, int]:
    """'M(101,800)' -> (101, 800)"""
    text = label.strip()
    if not (text.startswith("M(") and text.endswith(")")):
        raise InvalidArgumentError(f"Not a prime set label: {label!r}")
    try:
        p, q = (int(part) for part in text[2:-1].split(","))
    except ValueError:
        raise InvalidArgumentError(f"Not a prime set label: {label!r}") from None
    return p, q


def nearest_prime_to_half(m: int, below: int) -> int:
    """
    Prime k < ``below`` minimising |k - m/2|; ties go to the smaller prime

    Compared as |2k - m| so no rounding is involved.
    """
    candidates = primes_up_to(below - 1)
    if candidates.size == 0:
        raise InvalidArgumentError(f"No prime below {below} to anchor m={m}")

    distance = np.abs(2 * candidates - m)
    # argmin returns the first minimum, i.e. the smaller prime on ties
    return int(candidates[int(np.argmin(distance))])
