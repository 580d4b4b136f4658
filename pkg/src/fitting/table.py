"""
FRANEL Fit Table
Per-m envelopes over a prime set reduced to a(m) = s m^t and b(m) = u m^v
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from config import FRANELConfig
from src.errors import InvalidArgumentError, MissingProfileError
from src.fitting.envelope import ExpFit, two_point_exp_fit
from src.fitting.power_law import PowerLawModel, power_law_fit
from src.fitting.primes import PrimeSet
from src.profile.franel import DenominatorProfile, IndexConvention

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FitTableRow:
    """One row of the (s, t, u, v) table with the fits behind it"""

    mset: PrimeSet
    convention: IndexConvention
    fits: Tuple[ExpFit, ...]
    a_model: PowerLawModel
    b_model: PowerLawModel

    @property
    def label(self) -> str:
        return self.mset.label

    @property
    def s(self) -> float:
        return self.a_model.coefficient

    @property
    def t(self) -> float:
        return self.a_model.exponent

    @property
    def u(self) -> float:
        return self.b_model.coefficient

    @property
    def v(self) -> float:
        return self.b_model.exponent

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return self.s, self.t, self.u, self.v


def fit_table_row(
    mset: PrimeSet,
    profiles: Mapping[int, DenominatorProfile],
    convention: IndexConvention = IndexConvention.INTERIOR
) -> FitTableRow:
    """
    Two-point fits for every m in ``mset`` then power laws over a_m and b_m

    Args:
        mset: Prime set M(p, q)
        profiles: m -> profile, computed or loaded from cache
        convention: Convention the profiles must have been computed with

    Raises:
        MissingProfileError: some m of the set has no profile
        InvalidArgumentError: fewer than two m, or a profile of another convention
        DomainError: non-positive anchors or sign changes in a_m / b_m
    """
    if len(mset) < 2:
        raise InvalidArgumentError(
            f"{mset.label} has {len(mset)} prime(s); a power-law fit needs at least 2"
        )

    missing = [m for m in mset if m not in profiles]
    if missing:
        raise MissingProfileError(missing)

    fits = []
    for m in mset:
        profile = profiles[m]
        if profile.convention is not convention:
            raise InvalidArgumentError(
                f"Profile m={m} uses {profile.convention.value}, expected {convention.value}"
            )
        fits.append(two_point_exp_fit(profile))

    a_model = power_law_fit([(fit.m, fit.a) for fit in fits])
    b_model = power_law_fit([(fit.m, fit.b) for fit in fits])
    row = FitTableRow(
        mset=mset,
        convention=convention,
        fits=tuple(fits),
        a_model=a_model,
        b_model=b_model
    )

    logger.info(
        "%s (%s): s=%.4g t=%.4g u=%.4g v=%.4g",
        row.label, convention.value, row.s, row.t, row.u, row.v
    )
    return row


def fit_table_rows(
    msets: List[PrimeSet],
    profiles: Mapping[int, DenominatorProfile],
    convention: IndexConvention = IndexConvention.INTERIOR
) -> List[FitTableRow]:
    """Several rows sharing one profile mapping"""
    return [fit_table_row(mset, profiles, convention) for mset in msets]


def published_row(label: str) -> Optional[Tuple[float, float, float, float]]:
    """Published (s, t, u, v) for a set label, if the table lists it"""
    return FRANELConfig.PUBLISHED_TABLE.get(label)


def compare_with_published(row: FitTableRow) -> Optional[Dict[str, float]]:
    """Differences computed - published per parameter, or None when unpublished"""
    reference = published_row(row.label)
    if reference is None:
        return None
    return {
        name: computed - published
        for name, computed, published in zip("stuv", row.as_tuple(), reference)
    }
