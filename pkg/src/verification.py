"""
FRANEL Verification Suite
Desk-scale cross-checks of the streaming code against exact and
independent computations
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from tabulate import tabulate

from config import FRANELConfig
from src.asymptotics.bound import rtilde_closed, rtilde_quadrature
from src.asymptotics.params import AsymptoticParams
from src.core.farey import brute_force_farey, stream_farey
from src.core.totient import farey_interior_count, totient_sieve
from src.errors import FranelError, InvalidArgumentError
from src.profile.franel import IndexConvention, compute_profile, compute_profiles

logger = logging.getLogger(__name__)

PARTITION_ORDERS = (10, 50, 100, 200, 500, 1000, 1009)
QUADRATURE_ORDERS = (1e2, 1e3, 1e4, 1e5, 1e6)


def exact_R(m: int, convention: IndexConvention = IndexConvention.INTERIOR) -> Fraction:
    """
    R(m) in exact rational arithmetic

    Raises:
        InvalidArgumentError: m < 2
    """
    if m < 2:
        raise InvalidArgumentError(f"Farey order must be >= 2, got {m}")

    n = farey_interior_count(m, totient_sieve(m))
    total = Fraction(0)
    for fraction in stream_farey(m):
        if fraction.num == 0 or fraction.num == fraction.den:
            continue
        i = fraction.index - 1 if convention is IndexConvention.INTERIOR else fraction.index
        if i > n:
            continue
        total += (Fraction(fraction.num, fraction.den) - Fraction(i, n)) ** 2
    return total


@dataclass(frozen=True)
class CheckResult:
    """One verification check; ``measured`` is the worst deviation seen"""

    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""


@dataclass
class VerificationReport:
    max_m: int
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def rows(self) -> List[Sequence]:
        return [
            (c.name, "PASS" if c.passed else "FAIL", f"{c.measured:.3e}", f"{c.tolerance:.1e}", c.detail)
            for c in self.checks
        ]

    def render(self) -> str:
        """Plain-text report"""
        table = tabulate(
            self.rows(),
            headers=["check", "result", "measured", "tolerance", "detail"],
            tablefmt="simple"
        )
        status = "PASSED" if self.passed else f"FAILED ({len(self.failures)} check(s))"
        return f"FRANEL {FRANELConfig.VERSION} verification, max m = {self.max_m}\n\n{table}\n\n{status}\n"


def _relative(measured: float, expected: float) -> float:
    if expected == 0:
        return abs(measured)
    return abs(measured - expected) / abs(expected)


def check_stream_oracle(max_m: int) -> CheckResult:
    """stream_farey equals brute_force_farey for every order 2..max_m"""
    top = min(max_m, FRANELConfig.BRUTE_FORCE_MAX_M)
    bad = [
        m for m in range(2, top + 1)
        if [(f.num, f.den) for f in stream_farey(m)]
        != [(f.num, f.den) for f in brute_force_farey(m)]
    ]
    return CheckResult(
        "stream vs brute force", not bad, float(len(bad)), 0.0,
        f"m = 2..{top}" + (f", mismatch at {bad[:5]}" if bad else "")
    )


def check_unimodularity(max_m: int) -> CheckResult:
    """Adjacent a/b < c/d satisfy bc - ad = 1"""
    bad = []
    for m in range(2, max_m + 1):
        prev = None
        for f in stream_farey(m):
            if prev is not None and prev.den * f.num - prev.num * f.den != 1:
                bad.append(m)
                break
            prev = f
    return CheckResult(
        "neighbour determinant", not bad, float(len(bad)), 0.0, f"m = 2..{max_m}"
    )


def check_count_identity(max_m: int) -> CheckResult:
    """Stream length equals 2 + sum phi(k)"""
    table = totient_sieve(max_m)
    bad = [
        m for m in range(2, max_m + 1)
        if sum(1 for _ in stream_farey(m)) != 2 + farey_interior_count(m, table)
    ]
    return CheckResult("count identity", not bad, float(len(bad)), 0.0, f"m = 2..{max_m}")


def check_small_values() -> CheckResult:
    """Hand-computed R(2), R(3) and P_3"""
    tolerance = 1e-15
    p3 = compute_profile(3, IndexConvention.INTERIOR)
    r2 = compute_profiles(2, list(IndexConvention))
    worst = max(
        abs(p3.r_total - 5 / 36),
        abs(p3.p(2) - 1 / 36),
        abs(p3.p(3) - 1 / 9),
        abs(r2[IndexConvention.INTERIOR].r_total - 0.25),
        abs(r2[IndexConvention.PAPER_LITERAL].r_total - 0.0)
    )
    return CheckResult("small exact values", worst <= tolerance, worst, tolerance, "R(2), R(3), P_3")


def check_partition(max_m: int, convention: IndexConvention) -> CheckResult:
    """sum_k P_m(k) = R(m); under INTERIOR also term_counts = phi"""
    orders = sorted({m for m in PARTITION_ORDERS if m <= max_m} | {max_m})
    table = totient_sieve(max(orders))
    worst = 0.0
    count_mismatch = []
    for m in orders:
        profile = compute_profile(m, convention, table)
        worst = max(worst, profile.partition_residual())
        if convention is IndexConvention.INTERIOR:
            if (profile.term_counts[2:] != table.phi[2:m + 1]).any():
                count_mismatch.append(m)

    passed = worst <= FRANELConfig.PARTITION_REL_TOL and not count_mismatch
    detail = f"m in {orders}"
    if count_mismatch:
        detail += f", term counts differ from phi at {count_mismatch}"
    return CheckResult(
        f"sum P_m(k) = R(m) ({convention.value})", passed, worst,
        FRANELConfig.PARTITION_REL_TOL, detail
    )


def check_exact_rational(max_m: int, convention: IndexConvention) -> CheckResult:
    """Floating R(m) against exact_R for small m"""
    top = min(max_m, FRANELConfig.EXACT_ORACLE_MAX_M)
    worst = 0.0
    for m in range(2, top + 1):
        worst = max(worst, _relative(compute_profile(m, convention).r_total, float(exact_R(m, convention))))
    return CheckResult(
        f"exact rational R(m) ({convention.value})",
        worst <= FRANELConfig.EXACT_ORACLE_REL_TOL, worst,
        FRANELConfig.EXACT_ORACLE_REL_TOL, f"m = 2..{top}"
    )


def check_closed_form(params: Optional[AsymptoticParams] = None) -> CheckResult:
    """Closed-form R~(m) against adaptive quadrature"""
    params = params or AsymptoticParams.reference()
    worst = 0.0
    for m in QUADRATURE_ORDERS:
        worst = max(worst, _relative(rtilde_closed(m, params), rtilde_quadrature(m, params)))
    return CheckResult(
        "closed form vs quadrature", worst <= FRANELConfig.CLOSED_VS_QUAD_REL_TOL, worst,
        FRANELConfig.CLOSED_VS_QUAD_REL_TOL, "m = 1e2..1e6"
    )


def _guarded(name: str, check: Callable[[], CheckResult]) -> CheckResult:
    try:
        return check()
    except FranelError as e:
        logger.error("Check %r raised: %s", name, e)
        return CheckResult(name, False, float("nan"), 0.0, str(e))


def run_verification(
    max_m: int = 200,
    quadrature: bool = False,
    progress_callback: Optional[Callable[[str], None]] = None
) -> VerificationReport:
    """
    Run every check up to order ``max_m``

    A check that raises is recorded as failed; the suite always completes.

    Raises:
        InvalidArgumentError: max_m < 2
    """
    if max_m < 2:
        raise InvalidArgumentError(f"--max-m must be >= 2, got {max_m}")

    checks = [
        ("stream vs brute force", lambda: check_stream_oracle(max_m)),
        ("neighbour determinant", lambda: check_unimodularity(max_m)),
        ("count identity", lambda: check_count_identity(max_m)),
        ("small exact values", check_small_values),
    ]
    for convention in IndexConvention:
        checks.append((f"partition {convention.value}", lambda c=convention: check_partition(max_m, c)))
        checks.append((f"exact rational {convention.value}", lambda c=convention: check_exact_rational(max_m, c)))
    if quadrature:
        checks.append(("closed form vs quadrature", check_closed_form))

    report = VerificationReport(max_m=max_m)
    for name, check in checks:
        if progress_callback:
            progress_callback(name)
        result = _guarded(name, check)
        report.checks.append(result)
        log = logger.info if result.passed else logger.warning
        log("%s: %s (measured %.3e)", result.name, "pass" if result.passed else "FAIL", result.measured)

    return report
