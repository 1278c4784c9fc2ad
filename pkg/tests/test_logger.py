"""Tests for the run logger."""

import logging
import sys
import tempfile
import unittest
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from utils.logger import Logger


class TestLogger(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.log = Logger()

    def tearDown(self):
        self.log.configure(None)
        self.log.logger.removeHandler(self.log._console_handler)
        for name in ("core", "storage"):
            logging.getLogger(name).removeHandler(self.log._console_handler)
        self._tmp.cleanup()

    def test_console_only_until_configured(self):
        self.assertIsNone(self.log.get_log_file())

    def test_run_file_receives_all_levels(self):
        log_file = self.log.configure(Path(self._tmp.name) / "logs", logging.WARNING)
        self.assertIsNotNone(log_file)
        self.assertTrue(log_file.name.startswith("run-"))
        self.log.debug("quiet detail")
        self.log.success("done")
        logging.getLogger("core.protocol").debug("from a library module")
        text = log_file.read_text(encoding="utf-8")
        self.assertIn("quiet detail", text)
        self.assertIn("SUCCESS: done", text)
        self.assertIn("from a library module", text)

    def test_recent_buffer(self):
        self.log.info("one")
        self.log.warning("two")
        self.log.error("three")
        self.assertEqual(self.log.get_recent_logs(2), [("WARNING", "two"), ("ERROR", "three")])
        self.log.clear_buffer()
        self.assertEqual(self.log.get_recent_logs(), [])


if __name__ == "__main__":
    unittest.main()
