"""Tests for the envelope integral, the ratio scan and the bound check"""

import math

import numpy as np
import pytest

from config import FRANELConfig
from src.asymptotics.bound import (
    check_bound,
    envelope,
    envelope_series,
    ratio_scan,
    rtilde_closed,
    rtilde_quadrature
)
from src.asymptotics.params import AsymptoticParams
from src.errors import EnvelopeRangeError, InvalidArgumentError
from src.profile.franel import IndexConvention, compute_profile

REFERENCE = AsymptoticParams.reference()


def direct_integral(m, params):
    a, b = params.a(m), params.b(m)
    return math.exp(a) * (math.exp(b * m) - math.exp(2 * b)) / b


class TestParams:

    def test_reference_row(self):
        assert (REFERENCE.s, REFERENCE.t, REFERENCE.u, REFERENCE.v) == (-7.87, 0.107, 4.73, -1.02)
        assert REFERENCE.alpha == 4.73
        assert REFERENCE.beta == pytest.approx(1.02)
        assert REFERENCE.epsilon == FRANELConfig.REFERENCE_EPSILON

    def test_epsilon_must_be_positive(self):
        with pytest.raises(InvalidArgumentError):
            AsymptoticParams(s=-7.0, t=0.1, u=4.0, v=-1.0, epsilon=0.0)


class TestClosedForm:

    @pytest.mark.parametrize("m", [1e2, 1e3, 1e4, 1e5, 1e6])
    def test_matches_quadrature_with_reference_params(self, m):
        closed = rtilde_closed(m, REFERENCE)
        assert closed > 0
        assert closed == pytest.approx(rtilde_quadrature(m, REFERENCE), rel=FRANELConfig.CLOSED_VS_QUAD_REL_TOL)

    @pytest.mark.parametrize("draw", range(20))
    def test_matches_quadrature_on_random_params(self, draw):
        rng = np.random.default_rng(20240601 + draw)
        params = AsymptoticParams(
            s=rng.uniform(-10.0, -1.0),
            t=rng.uniform(0.0, 0.3),
            u=rng.uniform(1.0, 10.0),
            v=rng.uniform(-1.5, -0.5)
        )
        for m in (1e2, 1e3, 1e4, 1e5, 1e6):
            try:
                closed = rtilde_closed(m, params)
            except EnvelopeRangeError:
                with pytest.raises(EnvelopeRangeError):
                    rtilde_quadrature(m, params)
                continue
            assert closed == pytest.approx(rtilde_quadrature(m, params), rel=FRANELConfig.CLOSED_VS_QUAD_REL_TOL)

    @pytest.mark.parametrize("t", [0.107, 0.11])
    @pytest.mark.parametrize("m", [1e2, 1e4, 1e6])
    def test_matches_quadrature_for_published_exponents(self, t, m):
        params = AsymptoticParams(s=-7.87, t=t, u=4.73, v=-1.02)
        closed = rtilde_closed(m, params)
        assert closed > 0
        assert closed == pytest.approx(rtilde_quadrature(m, params), rel=FRANELConfig.CLOSED_VS_QUAD_REL_TOL)

    def test_matches_elementary_formula(self):
        params = AsymptoticParams(s=-50.0, t=0.0, u=2.0, v=-1.0)
        assert rtilde_closed(1000, params) == pytest.approx(direct_integral(1000, params), rel=1e-12)

    def test_flat_envelope(self):
        params = AsymptoticParams(s=-3.0, t=0.0, u=0.0, v=-1.0)
        assert rtilde_closed(500, params) == pytest.approx(498 * math.exp(-3.0), rel=1e-14)

    def test_nearly_flat_envelope(self):
        params = AsymptoticParams(s=-3.0, t=0.0, u=1e-14, v=0.0)
        assert rtilde_closed(500, params) == pytest.approx(498 * math.exp(-3.0), rel=1e-9)

    def test_decaying_envelope(self):
        params = AsymptoticParams(s=-2.0, t=0.0, u=-0.5, v=0.0)
        assert rtilde_closed(300, params) == pytest.approx(direct_integral(300, params), rel=1e-12)

    def test_out_of_range(self):
        params = AsymptoticParams(s=-1000.0, t=0.0, u=1.0, v=-1.0)
        with pytest.raises(EnvelopeRangeError) as excinfo:
            rtilde_closed(100, params)
        assert excinfo.value.exponent < 0

    def test_domain(self):
        with pytest.raises(InvalidArgumentError):
            rtilde_closed(2, REFERENCE)
        with pytest.raises(InvalidArgumentError):
            envelope(1.0, 100, REFERENCE)


class TestRatioScan:

    def test_reference_scan_decreases(self):
        series = ratio_scan(1e5, 1e6, 100, REFERENCE)
        assert len(series) == 100
        ratios = [r for _, r in series]
        assert all(later < earlier for earlier, later in zip(ratios, ratios[1:]))

    def test_two_steps_are_the_endpoints(self):
        series = ratio_scan(1e5, 1e6, 2, REFERENCE)
        assert [x for x, _ in series] == pytest.approx([1e5, 1e6])

    def test_identity_bound(self):
        series = ratio_scan(
            10.0, 1e4, 25, REFERENCE,
            bound=lambda x, p: x ** (-1 + p.epsilon)
        )
        assert [r for _, r in series] == pytest.approx([1.0] * 25, rel=1e-12)

    def test_invalid_scan(self):
        with pytest.raises(InvalidArgumentError):
            ratio_scan(10.0, 10.0, 5, REFERENCE)
        with pytest.raises(InvalidArgumentError):
            ratio_scan(1.0, 10.0, 5, REFERENCE)
        with pytest.raises(InvalidArgumentError):
            ratio_scan(10.0, 100.0, 1, REFERENCE)


class TestBoundCheck:

    @pytest.mark.parametrize("t", [0.107, 0.11])
    def test_order_1000(self, profile_1000, t):
        params = AsymptoticParams(s=-7.87, t=t, u=4.73, v=-1.02)
        check = check_bound(1000, IndexConvention.INTERIOR, params, r=profile_1000.r_total)
        assert check.r == profile_1000.r_total
        assert check.satisfied
        assert check.rtilde == rtilde_closed(1000, params)

    def test_computes_R_when_absent(self):
        check = check_bound(50, IndexConvention.INTERIOR, REFERENCE)
        assert check.r == compute_profile(50).r_total

    def test_underflowing_bound_is_reported(self):
        params = AsymptoticParams(s=-1000.0, t=0.0, u=1.0, v=-1.0)
        check = check_bound(50, IndexConvention.INTERIOR, params)
        assert check.r > 0
        assert check.rtilde == 0.0
        assert not check.satisfied

    def test_overflowing_bound_raises(self):
        params = AsymptoticParams(s=1000.0, t=0.0, u=1.0, v=-1.0)
        with pytest.raises(EnvelopeRangeError) as excinfo:
            check_bound(50, IndexConvention.INTERIOR, params, r=1e-3)
        assert excinfo.value.exponent > 0

    def test_order_two_has_empty_integral(self):
        check = check_bound(2, IndexConvention.INTERIOR, REFERENCE)
        assert check.rtilde == 0.0
        assert not check.satisfied

    def test_envelope_series(self, profile_50):
        series = envelope_series(profile_50, REFERENCE)
        assert [k for k, _, _, _ in series] == list(range(2, 51))
        flags = {k: is_prime for k, _, is_prime, _ in series}
        assert flags[47] and not flags[49]
        assert series[0][3] == pytest.approx(envelope(2, 50, REFERENCE))
