# FRANEL Configuration
# Central configuration management for the FRANEL Riemann-Farey toolkit

import logging
import logging.handlers
import os
from pathlib import Path
from typing import Any, Dict, Optional

import psutil
from rich.console import Console
from rich.logging import RichHandler


class FRANELConfig:
    """Main configuration class for FRANEL"""

    # Version Information
    VERSION = "1.0.0"
    VERSION_NAME = "Franel"

    # Bumped whenever a change alters computed profile values; part of the cache key
    CACHE_VERSION = "1"

    # Application Information
    APP_NAME = "FRANEL"
    APP_DESCRIPTION = "Farey-sequence deviation sums, envelopes and asymptotic bounds"

    # Base Directory Configuration
    BASE_DIR = Path(__file__).parent.absolute()
    SRC_DIR = BASE_DIR / "src"
    TESTS_DIR = BASE_DIR / "tests"

    # Working directories (relative to the invocation directory)
    CACHE_DIR = Path.cwd() / ".franel_cache"
    OUTPUT_DIR = Path.cwd() / "franel_output"
    LOGS_DIR = Path.cwd() / "logs"

    # Worker Configuration
    MIN_THREADS = 1
    MAX_THREADS = 64

    # Farey stream
    CHUNK_SIZE = 65536                 # interior fractions per numpy chunk
    INT64_MAX = 2 ** 63 - 1
    BRUTE_FORCE_MAX_M = 2000           # quadratic-memory oracle guard

    # Totient sieve: phi and prefix are int64 each
    SIEVE_BYTES_PER_ENTRY = 16
    MAX_SIEVE_LIMIT = 10 ** 9
    SIEVE_MEMORY_FRACTION = 0.5        # of currently available RAM

    # Numeric tolerances
    PARTITION_REL_TOL = 1e-12
    EXACT_ORACLE_REL_TOL = 1e-12
    EXACT_ORACLE_MAX_M = 30
    ANCHOR_REL_TOL = 1e-9
    RESIDUAL_MEAN_TOL = 1e-9
    QUAD_EPSREL = 1e-10
    QUAD_LIMIT = 500
    CLOSED_VS_QUAD_REL_TOL = 1e-8

    # Bump detection
    BUMP_MIN_M = 12
    BUMP_MIN_RELATIVE_PROMINENCE = 0.1

    # Reference values from the published table: set -> (s, t, u, v)
    PUBLISHED_TABLE = {
        "M(101,200)": (-7.58, 0.112, 5.28, -1.037),
        "M(201,300)": (-7.66, 0.111, 4.57, -1.016),
        "M(301,400)": (-7.67, 0.111, 3.86, -0.994),
        "M(401,500)": (-6.79, 0.125, 2.15, -0.923),
        "M(501,600)": (-8.78, 0.094, 5.81, -1.045),
        "M(601,700)": (-8.41, 0.099, 4.44, -1.012),
        "M(701,800)": (-8.12, 0.103, 3.70, -0.991),
        "M(101,800)": (-7.87, 0.107, 4.73, -1.02),
    }
    REFERENCE_PARAMS_ROW = "M(101,800)"
    REFERENCE_EPSILON = 0.000001

    # Ratio scan defaults
    RATIO_FROM = 1e5
    RATIO_TO = 1e6
    RATIO_STEPS = 100

    # Logging Configuration
    LOG_LEVEL = "WARNING"
    LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    LOG_FILE = LOGS_DIR / "franel.log"
    LOG_MAX_SIZE = 10 * 1024 * 1024  # 10 MB
    LOG_BACKUP_COUNT = 5
    LOGGER_NAMESPACE = "src"

    # Colors (Rich console)
    COLORS = {
        "success": "green",
        "warning": "yellow",
        "error": "red",
        "info": "blue",
        "debug": "dim",
        "highlight": "cyan"
    }

    # Exit Codes
    EXIT_SUCCESS = 0
    EXIT_USAGE = 1
    EXIT_COMPUTATION = 2
    EXIT_VERIFICATION_FAILED = 3
    EXIT_INTERRUPTED = 130

    @classmethod
    def initialize(
        cls,
        cache_dir: Optional[Path] = None,
        output_dir: Optional[Path] = None
    ) -> None:
        """Create the cache and output directories"""
        (cache_dir or cls.CACHE_DIR).mkdir(parents=True, exist_ok=True)
        (output_dir or cls.OUTPUT_DIR).mkdir(parents=True, exist_ok=True)

    @classmethod
    def default_workers(cls) -> int:
        """Available parallelism clamped to the configured thread bounds"""
        count = psutil.cpu_count(logical=True) or os.cpu_count() or 1
        return max(cls.MIN_THREADS, min(count, cls.MAX_THREADS))

    @classmethod
    def sieve_memory_budget(cls) -> int:
        """Bytes a totient sieve may claim"""
        return int(psutil.virtual_memory().available * cls.SIEVE_MEMORY_FRACTION)

    @classmethod
    def configure_logging(
        cls,
        level: Optional[str] = None,
        log_file: Optional[Path] = None
    ) -> logging.Logger:
        """
        Install console and optional rotating-file handlers

        Args:
            level: Log level name (default: LOG_LEVEL)
            log_file: Rotating log file; console only when None

        Returns:
            The package logger
        """
        logger = logging.getLogger(cls.LOGGER_NAMESPACE)
        logger.setLevel(level or cls.LOG_LEVEL)

        for handler in list(logger.handlers):
            logger.removeHandler(handler)
            handler.close()

        console_handler = RichHandler(console=Console(stderr=True), show_path=False, markup=False)
        console_handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(console_handler)

        if log_file is not None:
            log_file.parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.handlers.RotatingFileHandler(
                log_file,
                maxBytes=cls.LOG_MAX_SIZE,
                backupCount=cls.LOG_BACKUP_COUNT
            )
            file_handler.setFormatter(logging.Formatter(cls.LOG_FORMAT))
            logger.addHandler(file_handler)

        logger.propagate = False
        return logger

    @classmethod
    def validate(cls) -> Dict[str, bool]:
        """Validate configuration"""
        return {
            "threads_valid": cls.MIN_THREADS <= cls.MAX_THREADS,
            "chunk_valid": cls.CHUNK_SIZE > 0,
            "tolerances_valid": all(tol > 0 for tol in (
                cls.PARTITION_REL_TOL,
                cls.EXACT_ORACLE_REL_TOL,
                cls.ANCHOR_REL_TOL,
                cls.QUAD_EPSREL,
                cls.CLOSED_VS_QUAD_REL_TOL
            )),
            "quadrature_tighter_than_check": cls.QUAD_EPSREL < cls.CLOSED_VS_QUAD_REL_TOL,
            "guards_valid": 2 <= cls.BRUTE_FORCE_MAX_M < cls.MAX_SIEVE_LIMIT,
            "reference_row_known": cls.REFERENCE_PARAMS_ROW in cls.PUBLISHED_TABLE,
            "epsilon_valid": cls.REFERENCE_EPSILON > 0
        }

    @classmethod
    def to_dict(cls) -> Dict[str, Any]:
        """Provenance snapshot written into CSV header comments"""
        return {
            "app": cls.APP_NAME.lower(),
            "version": cls.VERSION,
            "cache_version": cls.CACHE_VERSION
        }
