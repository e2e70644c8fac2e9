"""
Progress indicators for long laplimits commands.
"""

import itertools
import sys
import threading
import time
from typing import Optional, TextIO

from ..interfaces import ProgressIndicatorInterface
from .printer import Colors

_FRAMES = ("|", "/", "-", "\\")
_THREAD_TIME_OUT = 0.5  # seconds
_LINE_WIDTH = 80


class Spinner(ProgressIndicatorInterface):
    """Spinner drawn on stderr by a daemon thread while a command computes."""

    def __init__(
        self,
        stop_event: Optional[threading.Event] = None,
        output: TextIO = sys.stderr,
        message: str = "Computing",
    ):
        """
        Args:
            stop_event: Threading event that ends the animation
            output: Output stream; sys.stderr when omitted
            message: Text shown next to the spinner
        """
        self._spinner_thread: Optional[threading.Thread] = None
        self._stop_event: threading.Event = stop_event if stop_event else threading.Event()
        self._output: TextIO = output
        self._message: str = message
        self._sleep: float = 0.1

    def _frame(self, glyph: str, seconds: float) -> str:
        return f"\r{Colors.CYAN}{self._message} {glyph} {seconds:.1f}s{Colors.ENDC}"

    def _spin_worker(self) -> None:
        began = time.perf_counter()
        for glyph in itertools.cycle(_FRAMES):
            if self._stop_event.is_set():
                break
            self._output.write(self._frame(glyph, time.perf_counter() - began))
            self._output.flush()
            time.sleep(self._sleep)

    def _clear_line(self) -> None:
        self._output.write("\r" + " " * _LINE_WIDTH + "\r")
        self._output.flush()

    def start(self) -> None:
        """Draw frames from a daemon thread until stop."""
        self._stop_event.clear()
        self._spinner_thread = threading.Thread(target=self._spin_worker)
        self._spinner_thread.daemon = True
        self._spinner_thread.start()

    def stop(self) -> None:
        """Signal the worker, wait briefly for it, then blank the line."""
        if self._spinner_thread and self._spinner_thread.is_alive():
            self._stop_event.set()
            self._spinner_thread.join(_THREAD_TIME_OUT)

        self._clear_line()


class SilentProgress(ProgressIndicatorInterface):
    """Progress indicator that draws nothing (pipes, quiet mode)."""

    def start(self) -> None:
        pass

    def stop(self) -> None:
        pass
