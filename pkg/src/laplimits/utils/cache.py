"""
On-disk cache of command result documents, keyed by the md5 of the run configuration.
"""

import json
import os
import time
from typing import Optional

from ..interfaces import CacheInterface
from ..models import CachedResult

_CACHE_DIR = os.path.join(os.getcwd(), ".laplimits_cache")
_CACHE_TTL = 86400  # seconds


class CacheConfig:
    """Expiry and on/off switch for the result cache."""

    def __init__(self) -> None:
        self.ttl: int = _CACHE_TTL
        self.use_cache: bool = False  # the CLI turns this on with --cache-dir

    def configure(self, cache_ttl: Optional[int] = None, use_cache: Optional[bool] = None) -> None:
        """Update the given settings; omitted ones keep their value."""
        if cache_ttl is not None:
            self.ttl = cache_ttl
        if use_cache is not None:
            self.use_cache = use_cache


class FileBasedCache(CacheInterface):
    """One ``<key>.json`` file per cached document; stale files are deleted when read."""

    def __init__(self, config: CacheConfig, cache_dir: str = _CACHE_DIR):
        self._cache_dir = cache_dir
        self._ttl = config.ttl
        self.use_cache = config.use_cache
        os.makedirs(self._cache_dir, exist_ok=True)

    def _path(self, key: str) -> str:
        return os.path.join(self._cache_dir, f"{key}.json")

    def _expired(self, entry: CachedResult) -> bool:
        return time.time() - entry.timestamp > self._ttl

    def set(self, key: str, value: CachedResult) -> None:
        with open(self._path(key), "w") as f:
            json.dump(value.model_dump(), f)

    def get(self, key: str) -> Optional[CachedResult]:
        """
        The document stored under key.

        Args:
            key: md5 hex digest of the run configuration

        Returns:
            The cached result, or None when absent or older than the TTL
        """
        path = self._path(key)
        if not os.path.exists(path):
            return None
        with open(path, "r") as f:
            entry = CachedResult.model_validate(json.load(f))
        if self._expired(entry):
            os.remove(path)
            return None
        return entry
