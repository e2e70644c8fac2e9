"""
Console output for laplimits.

Verbosity levels: 0 prints results and errors only, 1 adds summaries (elapsed time, warnings, files
written), 2 adds diagnostics (guard fallbacks, precision used, cache traffic).
"""

import sys
from typing import Optional, TextIO

from ..interfaces import PrinterInterface


# ANSI codes; only text output is coloured
class Colors:
    BOLD = "\033[1m"
    CYAN = "\033[96m"
    GREEN = "\033[92m"
    WARNING = "\033[93m"
    FAIL = "\033[91m"
    ENDC = "\033[0m"


class ConsolePrinter(PrinterInterface):
    """Writes messages whose level is at or below the configured verbosity."""

    def __init__(self, verbosity: int = 1, output: Optional[TextIO] = None):
        """
        Args:
            verbosity: 0, 1 or 2
            output: Stream written to; sys.stdout at the time of printing when omitted
        """
        self.verbosity: int = verbosity
        self._output: Optional[TextIO] = output

    def _stream(self) -> TextIO:
        return self._output if self._output is not None else sys.stdout

    def print(self, message: str, verbosity: int = 1) -> None:
        if verbosity > self.verbosity:
            return
        stream = self._stream()
        stream.write(message)
        stream.flush()

    def set_verbosity(self, verbosity: int) -> None:
        self.verbosity = verbosity
