"""
Wall-clock timing of laplimits commands.
"""

import time
from typing import Any, Optional

from ..interfaces import TimerInterface


class Timer(TimerInterface):
    """
    Context manager around one command; ``elapsed`` feeds the ``elapsed`` field of result documents.
    """

    def __init__(self) -> None:
        self._started: Optional[float] = None
        self._stopped: Optional[float] = None

    def __enter__(self) -> "Timer":
        self._started, self._stopped = time.perf_counter(), None
        return self

    def __exit__(self, exc_type: Any, exc_value: Any, traceback: Any) -> None:
        self._stopped = time.perf_counter()

    def elapsed(self) -> float:
        """Seconds since entry; frozen once the block exits, 0.0 before entry."""
        if self._started is None:
            return 0.0
        end = self._stopped if self._stopped is not None else time.perf_counter()
        return end - self._started
