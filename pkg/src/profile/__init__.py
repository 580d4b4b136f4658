"""
FRANEL Profile Module
R(m) and the per-denominator profile P_m(k)
"""

from .franel import (
    DenominatorProfile,
    DeviationTerm,
    IndexConvention,
    compute_R,
    compute_profile,
    compute_profiles,
    iter_deviation_terms
)

__all__ = [
    "IndexConvention",
    "DeviationTerm",
    "DenominatorProfile",
    "compute_profile",
    "compute_profiles",
    "compute_R",
    "iter_deviation_terms"
]
