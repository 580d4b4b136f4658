"""
FRANEL Storage Module
"""

from .profile_cache import ProfileCache

__all__ = ["ProfileCache"]
