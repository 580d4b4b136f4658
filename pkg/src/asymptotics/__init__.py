"""
FRANEL Asymptotics Module
"""

from .bound import (
    BoundCheck,
    check_bound,
    envelope,
    envelope_series,
    ratio_scan,
    rtilde_closed,
    rtilde_quadrature
)
from .params import AsymptoticParams

__all__ = [
    "AsymptoticParams",
    "envelope",
    "rtilde_closed",
    "rtilde_quadrature",
    "ratio_scan",
    "BoundCheck",
    "check_bound",
    "envelope_series"
]
