"""
FRANEL Multithreading Module
Worker pool for sweeps over independent Farey orders
"""

import concurrent.futures
import logging
import threading
from typing import Any, Callable, Dict, List, Optional, Sequence

from config import FRANELConfig

logger = logging.getLogger(__name__)

ProgressFn = Callable[[int, int, Any], None]


class WorkerManager:
    """
    Runs one task per item on a thread or process pool

    Results come back in input order whatever the completion order,
    so sweeps are reproducible. ``max_workers == 1`` runs inline.
    """

    def __init__(
        self,
        max_workers: Optional[int] = None,
        use_processes: bool = True,
        timeout: Optional[float] = None
    ):
        """
        Initialize worker manager

        Args:
            max_workers: Worker count (default: available parallelism)
            use_processes: Process pool for GIL-bound work, threads otherwise
            timeout: Seconds to wait for all results (None = no limit)
        """
        self.max_workers = max_workers or FRANELConfig.default_workers()
        self.max_workers = max(
            FRANELConfig.MIN_THREADS,
            min(self.max_workers, FRANELConfig.MAX_THREADS)
        )
        self.use_processes = use_processes
        self.timeout = timeout

        self.stats = {
            'total_tasks': 0,
            'completed_tasks': 0,
            'failed_tasks': 0
        }
        self.lock = threading.Lock()
        self.executor = None

    def _executor(self) -> concurrent.futures.Executor:
        if self.executor is None:
            pool = (
                concurrent.futures.ProcessPoolExecutor
                if self.use_processes
                else concurrent.futures.ThreadPoolExecutor
            )
            self.executor = pool(max_workers=self.max_workers)
        return self.executor

    def _record(self, ok: bool) -> None:
        with self.lock:
            self.stats['completed_tasks' if ok else 'failed_tasks'] += 1

    def map_tasks(
        self,
        func: Callable[[Any], Any],
        items: Sequence[Any],
        progress_callback: Optional[ProgressFn] = None
    ) -> List[Any]:
        """
        Apply ``func`` to every item

        Args:
            func: Picklable callable when processes are used
            items: Work items
            progress_callback: Called as (completed, total, item)

        Returns:
            Results in the order of ``items``

        Raises:
            The first task exception, after all tasks have settled
        """
        total = len(items)
        with self.lock:
            self.stats['total_tasks'] += total

        if total == 0:
            return []

        if self.max_workers == 1 or total == 1:
            results = []
            for done, item in enumerate(items, start=1):
                try:
                    results.append(func(item))
                except Exception:
                    self._record(False)
                    raise
                self._record(True)
                if progress_callback:
                    progress_callback(done, total, item)
            return results

        executor = self._executor()
        future_to_index: Dict[concurrent.futures.Future, int] = {
            executor.submit(func, item): index
            for index, item in enumerate(items)
        }

        results: List[Any] = [None] * total
        first_error: Optional[BaseException] = None
        done = 0
        for future in concurrent.futures.as_completed(future_to_index, timeout=self.timeout):
            index = future_to_index[future]
            try:
                results[index] = future.result()
                self._record(True)
            except Exception as e:
                self._record(False)
                logger.error("Task for %r failed: %s", items[index], e)
                if first_error is None:
                    first_error = e

            done += 1
            if progress_callback:
                progress_callback(done, total, items[index])

        if first_error is not None:
            raise first_error
        return results

    def shutdown(self, wait: bool = True) -> None:
        """Shut the pool down"""
        if self.executor:
            self.executor.shutdown(wait=wait)
            self.executor = None

    def get_statistics(self) -> Dict[str, int]:
        """Get worker statistics"""
        with self.lock:
            return self.stats.copy()

    def __enter__(self):
        """Context manager entry"""
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Context manager exit"""
        self.shutdown(wait=True)
        return False
