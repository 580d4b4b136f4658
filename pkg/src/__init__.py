"""
FRANEL - Core Package
Farey-sequence deviation sums, per-denominator profiles and asymptotic bounds
"""

__version__ = "1.0.0"
__author__ = "FRANEL Development Team"
__description__ = "Farey-sequence deviation sums, envelopes and asymptotic bounds"

# Import configuration
import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import FRANELConfig

__all__ = [
    "__version__",
    "__author__",
    "__description__",
    "FRANELConfig"
]
