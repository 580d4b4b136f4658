"""
FRANEL Detection Module
Prime hull and bump detection on per-denominator profiles
"""

from .bumps import Bump, detect_bumps, nearest_ratio, prime_hull

__all__ = [
    "Bump",
    "detect_bumps",
    "nearest_ratio",
    "prime_hull"
]
