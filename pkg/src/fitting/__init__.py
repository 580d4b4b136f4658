"""
FRANEL Fitting Module
Two-point exponential envelopes, prime sets and power-law regression
"""

from .envelope import ExpFit, envelope_fit, two_point_exp_fit
from .power_law import PowerLawModel, power_law_fit
from .primes import PrimeSet, nearest_prime_to_half, prime_set
from .table import FitTableRow, compare_with_published, fit_table_row, fit_table_rows

__all__ = [
    "ExpFit",
    "envelope_fit",
    "two_point_exp_fit",
    "PowerLawModel",
    "power_law_fit",
    "PrimeSet",
    "prime_set",
    "nearest_prime_to_half",
    "FitTableRow",
    "fit_table_row",
    "fit_table_rows",
    "compare_with_published"
]
