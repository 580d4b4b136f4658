"""
FRANEL Profile Module
Squared deviations of Farey fractions from equally spaced points,
their total R(m) and the per-denominator profile P_m(k)
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, Optional, Tuple

import numpy as np

from config import FRANELConfig
from src.core.farey import FareyFraction, iter_interior_chunks, stream_farey
from src.core.summation import KahanAccumulator, split_bincount
from src.core.totient import TotientTable, farey_interior_count, totient_sieve
from src.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


class IndexConvention(str, Enum):
    """
    How Farey fractions are numbered against i/n

    INTERIOR: interior fractions are i = 1..n, n terms in total.
    PAPER_LITERAL: 0/1 is position 1 and the sum runs over positions 2..n,
    so n - 1 terms and the last interior fraction is left out.
    """

    INTERIOR = "interior"
    PAPER_LITERAL = "paper-literal"

    @classmethod
    def parse(cls, text: str) -> "IndexConvention":
        try:
            return cls(text.strip().lower().replace("_", "-"))
        except ValueError:
            choices = ", ".join(c.value for c in cls)
            raise InvalidArgumentError(
                f"Unknown index convention {text!r} (expected one of: {choices})"
            ) from None


@dataclass(frozen=True)
class DeviationTerm:
    """One summand (F_m(i) - i/n)^2"""

    i: int
    fraction: FareyFraction
    expected: float
    deviation: float
    squared: float


@dataclass(frozen=True, eq=False)
class DenominatorProfile:
    """
    P_m(k) for 2 <= k <= m together with R(m)

    ``p_values`` and ``term_counts`` are indexed directly by k
    (entries 0 and 1 are zero).
    """

    m: int
    convention: IndexConvention
    n: int
    p_values: np.ndarray
    r_total: float
    term_counts: np.ndarray

    def p(self, k: int) -> float:
        if not 2 <= k <= self.m:
            raise InvalidArgumentError(f"Denominator must satisfy 2 <= k <= {self.m}, got {k}")
        return float(self.p_values[k])

    def count(self, k: int) -> int:
        return int(self.term_counts[k])

    def items(self) -> Iterator[Tuple[int, float, int]]:
        """(k, P_m(k), term count) for k = 2..m"""
        for k in range(2, self.m + 1):
            yield k, float(self.p_values[k]), int(self.term_counts[k])

    def partition_residual(self) -> float:
        """Relative gap between sum_k P_m(k) and R(m)"""
        total = math.fsum(self.p_values[2:].tolist())
        if self.r_total == 0.0:
            return abs(total)
        return abs(total - self.r_total) / abs(self.r_total)


class _Accumulation:
    """Running sums for one convention during a single pass"""

    def __init__(self, m: int, per_denominator: bool):
        self.total = KahanAccumulator()
        self.per_denominator = per_denominator
        if per_denominator:
            self.p_values = KahanAccumulator(np.zeros(m + 1, dtype=np.float64))
            self.term_counts = np.zeros(m + 1, dtype=np.int64)


def _positions(
    convention: IndexConvention,
    interior_index: np.ndarray,
    n: int
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    # Returns the summation index i of each interior fraction and a keep-mask
    if convention is IndexConvention.INTERIOR:
        return interior_index, None

    i = interior_index + 1
    return i, i <= n


def _accumulate(
    m: int,
    conventions: Iterable[IndexConvention],
    per_denominator: bool,
    table: Optional[TotientTable] = None,
    chunk_size: int = FRANELConfig.CHUNK_SIZE
) -> Tuple[int, Dict[IndexConvention, _Accumulation]]:
    if m < 2:
        raise InvalidArgumentError(f"Farey order must be >= 2, got {m}")

    if table is None or table.limit < m:
        table = totient_sieve(m)
    n = farey_interior_count(m, table)

    states = {
        convention: _Accumulation(m, per_denominator)
        for convention in dict.fromkeys(conventions)
    }

    seen = 0
    for nums, dens in iter_interior_chunks(m, chunk_size):
        interior_index = np.arange(seen + 1, seen + len(nums) + 1, dtype=np.int64)
        seen += len(nums)
        values = nums / dens

        for convention, state in states.items():
            i, keep = _positions(convention, interior_index, n)
            chunk_values, chunk_dens = values, dens
            if keep is not None:
                i, chunk_values, chunk_dens = i[keep], values[keep], dens[keep]

            squared = (chunk_values - i / n) ** 2
            state.total.add(math.fsum(squared.tolist()))

            if per_denominator:
                high, low = split_bincount(chunk_dens, squared, m + 1)
                state.p_values.add(high)
                state.p_values.add(low)
                state.term_counts += np.bincount(chunk_dens, minlength=m + 1)

        logger.debug("m=%d: %d/%d interior fractions processed", m, seen, n)

    return n, states


def compute_profiles(
    m: int,
    conventions: Iterable[IndexConvention],
    table: Optional[TotientTable] = None,
    chunk_size: int = FRANELConfig.CHUNK_SIZE
) -> Dict[IndexConvention, DenominatorProfile]:
    """
    Profiles for several conventions from one streaming pass over F_m

    Memory is O(m): one accumulator per denominator, the sequence itself
    is never materialised beyond one chunk.
    """
    n, states = _accumulate(m, conventions, True, table, chunk_size)

    profiles = {}
    for convention, state in states.items():
        p_values = state.p_values.value
        p_values.flags.writeable = False
        state.term_counts.flags.writeable = False
        profiles[convention] = DenominatorProfile(
            m=m,
            convention=convention,
            n=n,
            p_values=p_values,
            r_total=float(state.total.value),
            term_counts=state.term_counts
        )
        logger.info(
            "Profile m=%d (%s): n=%d, R(m)=%r",
            m, convention.value, n, profiles[convention].r_total
        )

    return profiles


def compute_profile(
    m: int,
    convention: IndexConvention = IndexConvention.INTERIOR,
    table: Optional[TotientTable] = None
) -> DenominatorProfile:
    """
    P_m(k) and R(m) for one convention

    Args:
        m: Farey order (>= 2)
        convention: Index convention (default INTERIOR)
        table: Optional totient table covering m

    Raises:
        InvalidArgumentError: m < 2
        FareyOverflowError: propagated from the stream
    """
    return compute_profiles(m, [convention], table)[convention]


def compute_R(
    m: int,
    convention: IndexConvention = IndexConvention.INTERIOR,
    table: Optional[TotientTable] = None
) -> float:
    """R(m) without per-denominator bookkeeping; equals compute_profile(...).r_total"""
    _, states = _accumulate(m, [convention], False, table)
    return float(states[convention].total.value)


def iter_deviation_terms(
    m: int,
    convention: IndexConvention = IndexConvention.INTERIOR,
    table: Optional[TotientTable] = None
) -> Iterator[DeviationTerm]:
    """
    Yield every summand of R(m) in stream order

    Intended for small m (per-term output); compute_profile is the bulk path.
    """
    if m < 2:
        raise InvalidArgumentError(f"Farey order must be >= 2, got {m}")
    if table is None or table.limit < m:
        table = totient_sieve(m)
    n = farey_interior_count(m, table)

    for fraction in stream_farey(m):
        if fraction.num == 0 or fraction.num == fraction.den:
            continue

        if convention is IndexConvention.INTERIOR:
            i = fraction.index - 1
        else:
            i = fraction.index
            if i > n:
                continue

        expected = i / n
        deviation = fraction.num / fraction.den - expected
        yield DeviationTerm(
            i=i,
            fraction=fraction,
            expected=expected,
            deviation=deviation,
            squared=deviation * deviation
        )
