"""
FRANEL Sweeper Module
Profiles for many orders m: cache first, then a worker pool for the rest
"""

import logging
import time
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from src.core.multithreading import WorkerManager
from src.errors import MissingProfileError
from src.profile.franel import DenominatorProfile, IndexConvention, compute_profile
from src.storage.profile_cache import ProfileCache

logger = logging.getLogger(__name__)


def _compute_profile_task(task: Tuple[int, str]) -> DenominatorProfile:
    """Top-level so the process pool can pickle it"""
    m, convention = task
    return compute_profile(m, IndexConvention(convention))


class ProfileSweeper:
    """Collects DenominatorProfiles for a set of orders"""

    def __init__(
        self,
        cache: Optional[ProfileCache] = None,
        workers: Optional[int] = None,
        use_processes: bool = True
    ):
        """
        Args:
            cache: Profile cache (None disables caching)
            workers: Worker count (default: available parallelism)
            use_processes: Compute in subprocesses rather than threads
        """
        self.cache = cache
        self.workers = workers
        self.use_processes = use_processes
        self.sweep_stats = {
            'start_time': None,
            'duration': 0.0,
            'cached': 0,
            'computed': 0
        }

    def profiles(
        self,
        ms: Iterable[int],
        convention: IndexConvention = IndexConvention.INTERIOR,
        compute: bool = True,
        progress_callback: Optional[Callable[[int, int, int], None]] = None
    ) -> Dict[int, DenominatorProfile]:
        """
        Profiles for every m, keyed by m

        Raises:
            MissingProfileError: ``compute=False`` and some m is not cached
        """
        self.sweep_stats['start_time'] = time.time()
        wanted = sorted(set(int(m) for m in ms))
        found: Dict[int, DenominatorProfile] = {}
        missing: List[int] = []

        for m in wanted:
            profile = self.cache.get(m, convention, compute=False) if self.cache else None
            if profile is None:
                missing.append(m)
            else:
                found[m] = profile
        self.sweep_stats['cached'] = len(found)

        if missing and not compute:
            raise MissingProfileError(missing)

        if missing:
            logger.info(
                "Computing %d profile(s) (%s), %d from cache",
                len(missing), convention.value, len(found)
            )

            def report(done: int, total: int, task: Tuple[int, str]) -> None:
                if progress_callback:
                    progress_callback(done, total, task[0])

            with WorkerManager(max_workers=self.workers, use_processes=self.use_processes) as pool:
                computed = pool.map_tasks(
                    _compute_profile_task,
                    [(m, convention.value) for m in missing],
                    progress_callback=report
                )

            for profile in computed:
                if self.cache:
                    self.cache.save(profile)
                found[profile.m] = profile
            self.sweep_stats['computed'] = len(computed)

        self.sweep_stats['duration'] = time.time() - self.sweep_stats['start_time']
        return {m: found[m] for m in wanted}

    def profile(
        self,
        m: int,
        convention: IndexConvention = IndexConvention.INTERIOR,
        compute: bool = True
    ) -> DenominatorProfile:
        """Single-order shortcut for :meth:`profiles`"""
        return self.profiles([m], convention, compute)[m]
