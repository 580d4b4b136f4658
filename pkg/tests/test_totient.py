"""Tests for the totient, prime and Mobius sieves"""

from math import gcd

import numpy as np
import pytest

from config import FRANELConfig
from src.core.totient import (
    farey_interior_count,
    mobius_sieve,
    primes_up_to,
    totient_sieve
)
from src.errors import InvalidArgumentError, SizeLimitError


def test_small_totients():
    table = totient_sieve(10)
    assert table.phi[1:].tolist() == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]


def test_totient_matches_gcd_count():
    table = totient_sieve(300)
    for k in range(1, 301):
        assert table.phi[k] == sum(1 for h in range(1, k + 1) if gcd(h, k) == 1)


def test_prefix_counts_interior_fractions():
    table = totient_sieve(10)
    assert farey_interior_count(5, table) == 9
    assert farey_interior_count(10, table) == 31
    assert farey_interior_count(2, table) == 1


def test_interior_count_bounds():
    table = totient_sieve(10)
    with pytest.raises(InvalidArgumentError):
        farey_interior_count(1, table)
    with pytest.raises(InvalidArgumentError):
        farey_interior_count(11, table)


def test_table_is_read_only():
    table = totient_sieve(20)
    with pytest.raises(ValueError):
        table.phi[3] = 0


def test_primes():
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1).size == 0
    table = totient_sieve(100)
    assert np.array_equal(table.primes(), primes_up_to(100))
    assert table.is_prime(97)
    assert not table.is_prime(91)


def test_mobius():
    mu = mobius_sieve(10)
    assert mu.tolist() == [0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_mertens_value():
    # M(100) = 1
    assert int(mobius_sieve(100)[1:].astype(np.int64).sum()) == 1


def test_sieve_limits():
    with pytest.raises(InvalidArgumentError):
        totient_sieve(0)
    with pytest.raises(SizeLimitError):
        totient_sieve(FRANELConfig.MAX_SIEVE_LIMIT + 1)
