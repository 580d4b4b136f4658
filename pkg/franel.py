#!/usr/bin/env python3
"""
FRANEL - Main CLI Entry Point
Farey-sequence deviation sums, envelopes and asymptotic bounds
"""

import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
