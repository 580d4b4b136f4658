"""
FRANEL Profile Cache
One CSV per (m, convention, cache version) plus a digest-carrying sidecar
"""

import logging
from pathlib import Path
from typing import Optional

import numpy as np

from config import FRANELConfig
from src.core.hasher import FileHasher
from src.errors import CacheChecksumError
from src.profile.franel import DenominatorProfile, IndexConvention, compute_profile
from src.reports.csv_writer import PROFILE_HEADER, atomic_write_text, read_csv, render_csv

logger = logging.getLogger(__name__)

META_HEADER = ["m", "n", "r_total", "convention", "version", "sha256"]


class ProfileCache:
    """Directory of cached DenominatorProfiles"""

    def __init__(self, cache_dir: Optional[Path] = None):
        """
        Args:
            cache_dir: Cache directory (default: FRANELConfig.CACHE_DIR)
        """
        self.cache_dir = Path(cache_dir or FRANELConfig.CACHE_DIR)
        self.hasher = FileHasher()
        self.stats = {"hits": 0, "misses": 0, "corrupt": 0, "writes": 0}

    def _stem(self, m: int, convention: IndexConvention) -> str:
        return f"profile_m{m}_{convention.value}_v{FRANELConfig.CACHE_VERSION}"

    def paths(self, m: int, convention: IndexConvention):
        stem = self._stem(m, convention)
        return self.cache_dir / f"{stem}.csv", self.cache_dir / f"{stem}.meta"

    def contains(self, m: int, convention: IndexConvention) -> bool:
        data_path, meta_path = self.paths(m, convention)
        return data_path.is_file() and meta_path.is_file()

    def save(self, profile: DenominatorProfile) -> Path:
        """Write a profile and its sidecar atomically"""
        data_path, meta_path = self.paths(profile.m, profile.convention)
        payload = render_csv(PROFILE_HEADER, profile.items())
        digest = self.hasher.hash_bytes(payload.encode("utf-8"))

        atomic_write_text(data_path, payload)
        atomic_write_text(meta_path, render_csv(META_HEADER, [(
            profile.m,
            profile.n,
            profile.r_total,
            profile.convention.value,
            FRANELConfig.CACHE_VERSION,
            digest
        )]))

        self.stats["writes"] += 1
        logger.debug("Cached profile m=%d (%s) at %s", profile.m, profile.convention.value, data_path)
        return data_path

    def load(self, m: int, convention: IndexConvention) -> Optional[DenominatorProfile]:
        """
        Read a cached profile

        Returns:
            The profile, or None when it is not cached

        Raises:
            CacheChecksumError: payload and sidecar disagree
        """
        data_path, meta_path = self.paths(m, convention)
        if not (data_path.is_file() and meta_path.is_file()):
            return None

        _, meta_rows = read_csv(meta_path)
        if len(meta_rows) != 1:
            raise CacheChecksumError(f"Malformed cache sidecar: {meta_path}")
        meta = meta_rows[0]

        if not self.hasher.verify_file_integrity(data_path, meta.get("sha256", "")):
            raise CacheChecksumError(f"Checksum mismatch for cached profile: {data_path}")
        if (int(meta["m"]) != m or meta["convention"] != convention.value
                or meta["version"] != FRANELConfig.CACHE_VERSION):
            raise CacheChecksumError(f"Cache sidecar does not describe m={m}: {meta_path}")

        _, rows = read_csv(data_path)
        p_values = np.zeros(m + 1, dtype=np.float64)
        term_counts = np.zeros(m + 1, dtype=np.int64)
        for row in rows:
            k = int(row["k"])
            p_values[k] = float(row["p_value"])
            term_counts[k] = int(row["term_count"])

        if len(rows) != m - 1:
            raise CacheChecksumError(f"Cached profile has {len(rows)} rows, expected {m - 1}")

        p_values.flags.writeable = False
        term_counts.flags.writeable = False
        return DenominatorProfile(
            m=m,
            convention=convention,
            n=int(meta["n"]),
            p_values=p_values,
            r_total=float(meta["r_total"]),
            term_counts=term_counts
        )

    def get(
        self,
        m: int,
        convention: IndexConvention,
        compute: bool = True
    ) -> Optional[DenominatorProfile]:
        """
        Cached profile, computing and storing it on a miss

        A corrupt entry is logged, recomputed and overwritten. With
        ``compute=False`` a miss returns None.
        """
        try:
            profile = self.load(m, convention)
        except CacheChecksumError as e:
            self.stats["corrupt"] += 1
            logger.warning("%s; recomputing", e)
            profile = None

        if profile is not None:
            self.stats["hits"] += 1
            return profile

        self.stats["misses"] += 1
        if not compute:
            return None

        profile = compute_profile(m, convention)
        self.save(profile)
        return profile
