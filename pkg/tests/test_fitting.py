"""Tests for prime sets, two-point envelopes, power laws and the fit table"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.core.sweeper import ProfileSweeper
from src.errors import DomainError, InvalidArgumentError, MissingProfileError
from src.fitting.envelope import envelope_fit, two_point_exp_fit
from src.fitting.power_law import power_law_fit
from src.fitting.primes import nearest_prime_to_half, parse_prime_set_label, prime_set
from src.fitting.table import compare_with_published, fit_table_row
from src.profile.franel import IndexConvention, compute_profile

SWEEP_ORDERS = [547, 809, 1223, 1901, 2801, 4001, 6133]


class TestPrimeSets:

    def test_first_set_bounds(self):
        mset = prime_set(101, 200)
        assert mset.label == "M(101,200)"
        assert len(mset) == 100
        assert mset.primes[0] == 547
        assert mset.primes[-1] == 1223

    def test_full_set_ends_at_6133(self):
        mset = prime_set(101, 800)
        assert len(mset) == 700
        assert mset.primes[-1] == 6133

    def test_first_primes(self):
        assert prime_set(1, 5).primes == (2, 3, 5, 7, 11)

    def test_invalid_bounds(self):
        with pytest.raises(InvalidArgumentError):
            prime_set(0, 10)
        with pytest.raises(InvalidArgumentError):
            prime_set(20, 10)

    def test_label_parsing(self):
        assert parse_prime_set_label("M(101,800)") == (101, 800)
        with pytest.raises(InvalidArgumentError):
            parse_prime_set_label("101-800")

    def test_anchor_prime(self):
        assert nearest_prime_to_half(547, below=547) == 271
        assert nearest_prime_to_half(1009, below=1009) == 503
        assert nearest_prime_to_half(1223, below=1223) == 613

    def test_anchor_tie_goes_to_smaller_prime(self):
        # m = 12: 5 and 7 are both one away from 6
        assert nearest_prime_to_half(12, below=12) == 5


class TestEnvelope:

    def test_synthetic_exponential_recovered(self, make_profile):
        a, b = -5.25, 0.0312
        fit = two_point_exp_fit(make_profile(101, lambda k: math.exp(a + b * k)))
        assert fit.a == pytest.approx(a, rel=1e-12)
        assert fit.b == pytest.approx(b, rel=1e-12)
        assert fit.k_star == 53

    def test_anchors_reproduced_at_1009(self):
        fit = two_point_exp_fit(compute_profile(1009))
        assert fit.anchor_hi[0] == 1009
        assert fit.k_star == 503
        assert max(fit.anchor_errors()) <= 1e-9

    def test_composite_order_uses_largest_prime(self, profile_1000):
        fit = envelope_fit(profile_1000)
        assert fit.anchor_hi[0] == 997
        assert fit.k_star == 499

    def test_two_point_needs_prime(self, profile_1000):
        with pytest.raises(InvalidArgumentError):
            two_point_exp_fit(profile_1000)

    def test_non_positive_anchor(self, make_profile):
        with pytest.raises(DomainError):
            two_point_exp_fit(make_profile(11, lambda k: 0.0))


class TestPowerLaw:

    @settings(max_examples=20, deadline=None)
    @given(
        c=st.floats(min_value=0.05, max_value=50.0),
        e=st.floats(min_value=-1.5, max_value=1.5),
        negative=st.booleans()
    )
    def test_noiseless_recovery(self, c, e, negative):
        sign = -1.0 if negative else 1.0
        points = [(m, sign * c * m ** e) for m in SWEEP_ORDERS]
        model = power_law_fit(points)
        assert model.coefficient == pytest.approx(sign * c, rel=1e-10)
        assert model.exponent == pytest.approx(e, rel=1e-10, abs=1e-12)
        assert max(abs(r) for r in model.residuals) < 1e-10

    def test_constant_data(self):
        model = power_law_fit([(m, 3.0) for m in SWEEP_ORDERS])
        assert model.exponent == pytest.approx(0.0, abs=1e-12)
        assert model.coefficient == pytest.approx(3.0, rel=1e-12)

    def test_direct_residuals(self):
        model = power_law_fit([(10, 1.0), (100, 10.0), (1000, 120.0)])
        direct = model.direct_residuals()
        assert len(direct) == 3
        assert direct[2] == pytest.approx(120.0 - float(model(1000)))

    def test_log_residuals_average_to_zero(self):
        rng = np.random.default_rng(7)
        points = [(m, 2.0 * m ** 0.3 * math.exp(rng.normal(0, 0.05))) for m in SWEEP_ORDERS]
        model = power_law_fit(points)
        assert abs(float(np.mean(model.residuals))) < 1e-9

    def test_rejects_bad_data(self):
        with pytest.raises(InvalidArgumentError):
            power_law_fit([(547, 1.0)])
        with pytest.raises(InvalidArgumentError):
            power_law_fit([(547, 1.0), (547, 2.0)])
        with pytest.raises(DomainError):
            power_law_fit([(547, 1.0), (557, 0.0)])
        with pytest.raises(DomainError):
            power_law_fit([(547, 1.0), (557, -1.0)])


class TestFitTable:

    def test_single_prime_set_rejected(self):
        with pytest.raises(InvalidArgumentError):
            fit_table_row(prime_set(101, 101), {})

    def test_missing_profiles_are_named(self):
        mset = prime_set(26, 28)
        profiles = {101: compute_profile(101)}
        with pytest.raises(MissingProfileError) as excinfo:
            fit_table_row(mset, profiles)
        assert excinfo.value.missing == [103, 107]
        assert "103" in str(excinfo.value)

    def test_convention_mismatch(self):
        mset = prime_set(26, 27)
        profiles = {m: compute_profile(m, IndexConvention.PAPER_LITERAL) for m in mset}
        with pytest.raises(InvalidArgumentError):
            fit_table_row(mset, profiles, IndexConvention.INTERIOR)

    @pytest.mark.slow
    def test_first_published_row_shape(self):
        mset = prime_set(101, 200)
        profiles = ProfileSweeper().profiles(mset, IndexConvention.INTERIOR)
        row = fit_table_row(mset, profiles, IndexConvention.INTERIOR)

        assert row.s < 0 and row.t > 0 and row.u > 0 and row.v < 0
        assert 0.05 <= row.t <= 0.2
        assert -1.3 <= row.v <= -0.7
        for fit in row.fits:
            assert max(fit.anchor_errors()) <= 1e-9
        assert abs(float(np.mean(row.a_model.residuals))) < 1e-9

        deltas = compare_with_published(row)
        assert set(deltas) == {"s", "t", "u", "v"}
