"""Stand-ins for the runner's collaborators."""

from typing import Optional
from unittest.mock import Mock

from laplimits import CacheInterface, PrinterInterface, ProgressIndicatorInterface
from laplimits.models import CachedResult


class MockCache(Mock, CacheInterface):
    """Misses by default; set ``_mock_get_method.return_value`` to serve a document."""

    def __init__(self):
        super().__init__()
        self._mock_get_method = Mock(return_value=None)
        self._mock_set_method = Mock()

    def get(self, key: str) -> Optional[CachedResult]:
        return self._mock_get_method(key)

    def set(self, key: str, value: CachedResult) -> None:
        self._mock_set_method(key, value)


class MockPrinter(Mock, PrinterInterface):
    """Records every message regardless of verbosity."""

    def __init__(self, verbosity: int = 1):
        super().__init__()
        self.verbosity = verbosity  # read by the text renderer
        self._mock_print_method = Mock(return_value=None)
        self._mock_set_verbosity_method = Mock(return_value=None)

    def print(self, message: str, verbosity: int = 1) -> None:
        self._mock_print_method(message, verbosity)

    def set_verbosity(self, verbosity: int) -> None:
        self._mock_set_verbosity_method(verbosity)

    def printed(self) -> str:
        """Everything passed to print, concatenated."""
        return "".join(call.args[0] for call in self._mock_print_method.call_args_list)


class MockProgressIndicator(Mock, ProgressIndicatorInterface):
    def __init__(self):
        super().__init__()
        self._mock_start_method = Mock()
        self._mock_stop_method = Mock()

    def start(self) -> None:
        self._mock_start_method()

    def stop(self) -> None:
        self._mock_stop_method()
