import os
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from pydantic import ValidationError

from ainfty_toolkit.utils.settings import RunOptions, load_settings


class TestSettings(unittest.TestCase):
    def setUp(self):
        load_settings.cache_clear()

    def tearDown(self):
        load_settings.cache_clear()

    def test_defaults_file(self):
        settings = load_settings()
        self.assertEqual(settings.ring, "F2")
        self.assertEqual(settings.verify.window, (-2, 1))
        self.assertEqual(settings.max_arity, 6)

    def test_environment_overrides_file(self):
        with mock.patch.dict(os.environ, {"AINFTY_THREADS": "4", "AINFTY_LOG_LEVEL": "DEBUG"}):
            settings = load_settings()
        self.assertEqual(settings.threads, 4)
        self.assertEqual(settings.log_level, "DEBUG")

    def test_custom_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "settings.yaml"
            path.write_text("ring: F5\ntruncation: 2\nlimits:\n  max_words: 10\n", encoding="utf-8")
            settings = load_settings(str(path))
        self.assertEqual(settings.ring, "F5")
        self.assertEqual(settings.truncation, 2)
        self.assertEqual(settings.limits.max_words, 10)
        self.assertEqual(settings.limits.max_functors, 4096)


class TestRunOptions(unittest.TestCase):
    def options(self, **overrides) -> RunOptions:
        values = {"ring": "F2", "truncation": 2, "window": (-2, 1), "arity": 3, "nerve_dimension": 2}
        values.update(overrides)
        return RunOptions(**values)

    def test_valid_options(self):
        options = self.options(ring="Q")
        self.assertEqual(options.parsed_ring().name, "Q")
        self.assertEqual(options.output_format, "text")

    def test_rejected_options(self):
        cases = {
            "ring": {"ring": "F4"},
            "window": {"window": (1, 0)},
            "arity": {"arity": 7},
            "format": {"output_format": "xml"},
            "truncation": {"truncation": 0},
            "dimension": {"nerve_dimension": 4},
        }
        for name, override in cases.items():
            with self.subTest(option=name):
                with self.assertRaises(ValidationError):
                    self.options(**override)


if __name__ == "__main__":
    unittest.main()
