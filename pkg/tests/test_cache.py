"""Tests for the result cache."""

import json
import os
import shutil
import tempfile
import time
import unittest

from laplimits.models import CachedResult
from laplimits.utils import CacheConfig, FileBasedCache

DAY = 86400


def _radius_document(age: float = 0.0) -> CachedResult:
    return CachedResult(
        timestamp=time.time() - age,
        command="radius",
        schema_name="laplimits.radius/1",
        payload={"tree": "[[1,1],[1,1,1,1]]", "radius": {"value": "6.141336115655"}},
    )


class TestCacheConfig(unittest.TestCase):
    def test_defaults(self):
        """Caching is off until the command line asks for it; documents live a day."""
        config = CacheConfig()
        self.assertEqual(config.ttl, DAY)
        self.assertFalse(config.use_cache)

    def test_configure_updates_only_given_settings(self):
        config = CacheConfig()
        config.configure(cache_ttl=3600)
        self.assertEqual((config.ttl, config.use_cache), (3600, False))

        config.configure(use_cache=True)
        self.assertEqual((config.ttl, config.use_cache), (3600, True))

        config.configure(cache_ttl=60, use_cache=False)
        self.assertEqual((config.ttl, config.use_cache), (60, False))


class TestFileBasedCache(unittest.TestCase):
    def setUp(self):
        self._dir = tempfile.mkdtemp()
        config = CacheConfig()
        config.configure(use_cache=True)
        self._config = config
        self._cache = FileBasedCache(config, cache_dir=self._dir)

    def tearDown(self):
        shutil.rmtree(self._dir)

    def _file(self, key: str) -> str:
        return os.path.join(self._dir, f"{key}.json")

    def test_settings_are_taken_from_config(self):
        self.assertEqual(self._cache._cache_dir, self._dir)
        self.assertEqual(self._cache._ttl, DAY)
        self.assertTrue(self._cache.use_cache)

    def test_missing_directory_is_created(self):
        nested = os.path.join(self._dir, "runs", "2026")
        FileBasedCache(self._config, cache_dir=nested)
        self.assertTrue(os.path.isdir(nested))

    def test_document_is_written_as_json(self):
        self._cache.set("abc123", _radius_document())

        with open(self._file("abc123")) as f:
            stored = json.load(f)
        self.assertEqual(stored["command"], "radius")
        self.assertEqual(stored["schema_name"], "laplimits.radius/1")
        self.assertEqual(stored["payload"]["tree"], "[[1,1],[1,1,1,1]]")

    def test_hit_survives_a_new_cache_instance(self):
        self._cache.set("abc123", _radius_document())

        reopened = FileBasedCache(self._config, cache_dir=self._dir)
        entry = reopened.get("abc123")
        self.assertIsNotNone(entry)
        self.assertEqual(entry.payload["radius"]["value"], "6.141336115655")

    def test_miss(self):
        self.assertIsNone(self._cache.get("never-stored"))

    def test_stale_document_is_dropped(self):
        with open(self._file("stale"), "w") as f:
            json.dump(_radius_document(age=DAY + 10).model_dump(), f)

        self.assertIsNone(self._cache.get("stale"))
        self.assertFalse(os.path.exists(self._file("stale")))

    def test_short_ttl_expires_older_documents(self):
        config = CacheConfig()
        config.configure(cache_ttl=60, use_cache=True)
        cache = FileBasedCache(config, cache_dir=self._dir)
        cache.set("fresh", _radius_document(age=5))
        cache.set("old", _radius_document(age=120))

        self.assertIsNotNone(cache.get("fresh"))
        self.assertIsNone(cache.get("old"))


if __name__ == "__main__":
    unittest.main()
