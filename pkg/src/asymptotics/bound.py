"""
FRANEL Asymptotic Bound
Envelope r~_m(x), the integral bound R~(m) in closed form and by quadrature,
the ratio scan R~(x) / x^(-1+eps) and the empirical check R(m) <= R~(m)
"""

import logging
import math
import sys
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from config import FRANELConfig
from src.asymptotics.params import AsymptoticParams
from src.core.totient import primes_up_to
from src.errors import EnvelopeRangeError, InvalidArgumentError, QuadratureError
from src.profile.franel import DenominatorProfile, IndexConvention, compute_R

logger = logging.getLogger(__name__)

_MAX_EXPONENT = math.log(sys.float_info.max)
_MIN_EXPONENT = math.log(sys.float_info.min)


def _checked_exp(exponent: float, what: str) -> float:
    if not _MIN_EXPONENT <= exponent <= _MAX_EXPONENT:
        raise EnvelopeRangeError(
            f"{what}: exponent {exponent!r} outside the double range", exponent
        )
    return math.exp(exponent)


def envelope(x: float, m: float, params: AsymptoticParams) -> float:
    """
    r~_m(x) = exp(a(m) + b(m) x)

    Raises:
        InvalidArgumentError: x < 2 or m < 2
        EnvelopeRangeError: the exponent over- or underflows
    """
    if x < 2 or m < 2:
        raise InvalidArgumentError(f"Envelope needs x >= 2 and m >= 2, got x={x}, m={m}")
    return _checked_exp(params.a(m) + params.b(m) * x, f"envelope(x={x}, m={m})")


def log_rtilde(m: float, params: AsymptoticParams) -> float:
    """
    ln R~(m) for R~(m) = exp(a) (exp(b m) - exp(2 b)) / b

    Written as exp(a + 2b) * expm1(b (m - 2)) / b so that it stays accurate
    for small |b| and finite for large b m; b = 0 gives (m - 2) exp(a).
    """
    if not m > 2:
        raise InvalidArgumentError(f"R~(m) needs m > 2, got m={m}")

    a = params.a(m)
    b = params.b(m)
    length = m - 2

    if b == 0.0:
        return a + math.log(length)

    z = b * length
    if z > 0:
        log_integral = z + math.log(-math.expm1(-z)) - math.log(b)
    else:
        log_integral = math.log(-math.expm1(z)) - math.log(-b)

    return a + 2 * b + log_integral


def rtilde_closed(m: float, params: AsymptoticParams) -> float:
    """
    Closed-form integral of the envelope over [2, m]

    Raises:
        InvalidArgumentError: m <= 2
        EnvelopeRangeError: the value is not representable
    """
    return _checked_exp(log_rtilde(m, params), f"R~({m})")


def rtilde_quadrature(m: float, params: AsymptoticParams) -> float:
    """
    Adaptive Gauss-Kronrod integral of the envelope over [2, m]

    The integrand is scaled by its maximum on the interval before integrating
    and the scale is restored afterwards.

    Raises:
        InvalidArgumentError: m <= 2
        QuadratureError: QUADPACK reports non-convergence
        EnvelopeRangeError: the value is not representable
    """
    if not m > 2:
        raise InvalidArgumentError(f"R~(m) needs m > 2, got m={m}")

    a = params.a(m)
    b = params.b(m)
    x_peak = float(m) if b > 0 else 2.0

    result = quad(
        lambda x: math.exp(b * (x - x_peak)),
        2.0,
        float(m),
        epsabs=0.0,
        epsrel=FRANELConfig.QUAD_EPSREL,
        limit=FRANELConfig.QUAD_LIMIT,
        full_output=1
    )
    value, abserr = result[0], result[1]
    achieved = abserr / value if value > 0 else math.inf

    if len(result) > 3:
        raise QuadratureError(
            f"Quadrature for R~({m}) did not converge "
            f"(achieved {achieved:.3g}): {result[3]}",
            achieved
        )

    return _checked_exp(a + b * x_peak + math.log(value), f"R~({m}) by quadrature")


def ratio_scan(
    x_lo: float,
    x_hi: float,
    steps: int,
    params: AsymptoticParams,
    bound: Optional[Callable[[float, AsymptoticParams], float]] = None
) -> List[Tuple[float, float]]:
    """
    R~(x) / x^(-1+eps) at geometrically spaced x

    Args:
        x_lo, x_hi: Scan range, 2 < x_lo < x_hi
        steps: Number of points (>= 2), endpoints included
        params: Asymptotic parameters (epsilon taken from here)
        bound: Alternative R~ evaluator; closed form when None

    Raises:
        InvalidArgumentError: bad range or steps
    """
    if not 2 < x_lo < x_hi:
        raise InvalidArgumentError(f"Ratio scan needs 2 < x_lo < x_hi, got [{x_lo}, {x_hi}]")
    if steps < 2:
        raise InvalidArgumentError(f"Ratio scan needs steps >= 2, got {steps}")

    power = 1.0 - params.epsilon
    series = []
    for x in np.geomspace(x_lo, x_hi, steps):
        x = float(x)
        if bound is None:
            ratio = _checked_exp(log_rtilde(x, params) + power * math.log(x), f"ratio({x})")
        else:
            ratio = bound(x, params) * x ** power
        series.append((x, ratio))

    return series


@dataclass(frozen=True)
class BoundCheck:
    """R(m) against R~(m); ``satisfied`` is reported, never asserted"""

    m: int
    r: float
    rtilde: float
    satisfied: bool


def _rtilde_or_zero(m: int, params: AsymptoticParams) -> float:
    # An R~ below the smallest normal double is reported as 0; overflow still raises
    log_value = log_rtilde(m, params)
    if log_value < _MIN_EXPONENT:
        logger.warning("R~(%d) underflows (ln R~ = %.6g); reporting 0", m, log_value)
        return 0.0
    return _checked_exp(log_value, f"R~({m})")


def check_bound(
    m: int,
    convention: IndexConvention,
    params: AsymptoticParams,
    r: Optional[float] = None
) -> BoundCheck:
    """
    Compare R(m) with R~(m)

    Args:
        m: Farey order (>= 2)
        convention: Index convention for R(m)
        params: Asymptotic parameters
        r: Precomputed R(m); computed when None
    """
    if m < 2:
        raise InvalidArgumentError(f"Farey order must be >= 2, got {m}")

    if r is None:
        r = compute_R(m, convention)
    # The integral over [2, 2] is empty
    rtilde = _rtilde_or_zero(m, params) if m > 2 else 0.0

    check = BoundCheck(m=m, r=r, rtilde=rtilde, satisfied=r <= rtilde)
    logger.info(
        "Bound m=%d (%s): R=%r R~=%r satisfied=%s",
        m, convention.value, r, rtilde, check.satisfied
    )
    return check


def envelope_series(
    profile: DenominatorProfile,
    params: AsymptoticParams
) -> List[Tuple[int, float, bool, float]]:
    """(k, P_m(k), k prime, r~_m(k)) for k = 2..m"""
    primes = set(int(p) for p in primes_up_to(profile.m))
    return [
        (k, p, k in primes, envelope(k, profile.m, params))
        for k, p, _ in profile.items()
    ]
