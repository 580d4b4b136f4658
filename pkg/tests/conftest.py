"""Shared fixtures for the FRANEL test suite"""

import numpy as np
import pytest

from src.profile.franel import DenominatorProfile, IndexConvention, compute_profile


@pytest.fixture
def make_profile():
    """Build a DenominatorProfile from a function of k, for synthetic fits"""

    def build(m, value_of_k, convention=IndexConvention.INTERIOR):
        p_values = np.zeros(m + 1, dtype=np.float64)
        for k in range(2, m + 1):
            p_values[k] = value_of_k(k)
        return DenominatorProfile(
            m=m,
            convention=convention,
            n=0,
            p_values=p_values,
            r_total=float(p_values.sum()),
            term_counts=np.zeros(m + 1, dtype=np.int64)
        )

    return build


@pytest.fixture(scope="session")
def profile_1000():
    return compute_profile(1000, IndexConvention.INTERIOR)


@pytest.fixture(scope="session")
def profile_50():
    return compute_profile(50, IndexConvention.INTERIOR)


@pytest.fixture
def run_cli(tmp_path):
    """Invoke the CLI in-process against a temporary cache and output dir"""
    from src.cli import main

    output_dir = tmp_path / "out"
    cache_dir = tmp_path / "cache"

    def run(*args, plots=False):
        argv = [
            "--output", str(output_dir),
            "--cache-dir", str(cache_dir),
            "--threads", "1",
            "--plots" if plots else "--no-plots",
            *args
        ]
        return main(argv)

    run.output_dir = output_dir
    run.cache_dir = cache_dir
    return run

