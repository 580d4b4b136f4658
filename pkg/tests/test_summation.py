"""Tests for compensated scalar and per-denominator summation"""

import math

import numpy as np
import pytest

from src.core.summation import KahanAccumulator, split_bincount
from src.profile.franel import IndexConvention, compute_profile, iter_deviation_terms


def test_scalar_accumulator_keeps_small_terms():
    acc = KahanAccumulator()
    acc.add(1.0)
    for _ in range(10000):
        acc.add(1e-16)
    assert acc.value == pytest.approx(1.0 + 1e-12, rel=1e-15)


def test_split_bincount_keeps_small_terms_in_one_bin():
    keys = np.zeros(10001, dtype=np.int64)
    values = np.array([1.0] + [1e-16] * 10000)
    assert np.bincount(keys, weights=values)[0] == 1.0

    high, low = split_bincount(keys, values, 1)
    acc = KahanAccumulator(np.zeros(1))
    acc.add(high)
    acc.add(low)
    assert acc.value[0] == pytest.approx(math.fsum(values.tolist()), rel=1e-15)
    assert acc.value[0] > 1.0


def test_split_bincount_per_key_sums():
    rng = np.random.default_rng(7)
    keys = rng.integers(0, 5, size=4096)
    values = rng.uniform(0.0, 1e-3, size=4096)
    high, low = split_bincount(keys, values, 5)
    for key in range(5):
        selected = values[keys == key].tolist()
        assert high[key] + low[key] == pytest.approx(math.fsum(selected), rel=1e-15)


def test_split_bincount_edge_inputs():
    empty = np.array([], dtype=np.int64)
    high, low = split_bincount(empty, np.array([], dtype=np.float64), 3)
    assert high.tolist() == [0.0, 0.0, 0.0] and low.tolist() == [0.0, 0.0, 0.0]

    high, low = split_bincount(np.array([2, 2]), np.zeros(2), 3)
    assert high.tolist() == [0.0, 0.0, 0.0] and low.tolist() == [0.0, 0.0, 0.0]


def test_profile_matches_correctly_rounded_sums():
    m = 200
    profile = compute_profile(m, IndexConvention.INTERIOR)
    by_denominator = {}
    for term in iter_deviation_terms(m, IndexConvention.INTERIOR):
        by_denominator.setdefault(term.fraction.den, []).append(term.squared)
    for k, terms in by_denominator.items():
        assert profile.p(k) == pytest.approx(math.fsum(terms), rel=1e-15)
