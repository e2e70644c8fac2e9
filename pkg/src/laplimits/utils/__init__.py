"""
Utility modules for the laplimits package.
"""

from .backend import BackendConfig, BigFloatBackend, ExactBackend, FloatBackend, make_backend
from .cache import CacheConfig, FileBasedCache
from .expressions import coerce_real, parse_expression
from .printer import Colors, ConsolePrinter
from .spinner import SilentProgress, Spinner
from .timer import Timer

__all__ = [
    "BackendConfig",
    "BigFloatBackend",
    "ExactBackend",
    "FloatBackend",
    "make_backend",
    "CacheConfig",
    "FileBasedCache",
    "coerce_real",
    "parse_expression",
    "Colors",
    "ConsolePrinter",
    "SilentProgress",
    "Spinner",
    "Timer",
]
