"""Tests for the JSON configuration layer."""

import json
import os
import sys
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from utils.config import Config, default_config_dir
from utils.constants import HOME_ENV, OUTPUT_DIR_ENV


class TestConfig(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def test_defaults(self):
        cfg = Config(self.dir)
        self.assertEqual(cfg.get_default_seed(), 42)
        self.assertEqual(cfg.get_density_law(), "8*n^2*log(n)")
        self.assertEqual(cfg.get_default_trials(), 10)
        self.assertEqual(cfg.get_output_format(), "csv")
        self.assertEqual(cfg.get_protocol_settings()["K"], 16)
        self.assertEqual(cfg.get_cost_settings(), {"scan_rate": 1.0, "bit_op": 1.0, "signal_op": 1.0, "relay_hop": 1.0})
        self.assertEqual(cfg.get_asy_settings()["max_rounds"], 20000)
        self.assertFalse(cfg.config_file.exists())

    def test_nested_values_merge_over_defaults(self):
        (self.dir / "config.json").write_text(
            json.dumps({"protocol": {"r_green": 0.2}, "default_seed": 7}), encoding="utf-8")
        cfg = Config(self.dir)
        protocol = cfg.get_protocol_settings()
        self.assertEqual(protocol["r_green"], 0.2)
        self.assertEqual(protocol["r_yellow"], 0.5)
        self.assertEqual(cfg.get_default_seed(), 7)

    def test_corrupt_file_falls_back(self):
        (self.dir / "config.json").write_text("{not json", encoding="utf-8")
        self.assertEqual(Config(self.dir).get_default_trials(), 10)

    def test_out_of_range_values_are_clamped(self):
        (self.dir / "config.json").write_text(
            json.dumps({"default_trials": -4, "output_format": "xml", "protocol": {"K": "many"}}), encoding="utf-8")
        cfg = Config(self.dir)
        self.assertEqual(cfg.get_default_trials(), 1)
        self.assertEqual(cfg.get_output_format(), "csv")
        self.assertEqual(cfg.get_protocol_settings()["K"], 16)

    def test_set_and_flush(self):
        cfg = Config(self.dir)
        cfg.set("density_law", "n^2")
        cfg.flush()
        self.assertEqual(Config(self.dir).get_density_law(), "n^2")

    def test_output_dir_precedence(self):
        cfg = Config(self.dir)
        with patch.dict(os.environ, {OUTPUT_DIR_ENV: str(self.dir / "env")}):
            self.assertEqual(cfg.get_output_dir(), self.dir / "env")
            cfg.set("output_dir", str(self.dir / "cfg"))
            self.assertEqual(cfg.get_output_dir(), self.dir / "cfg")

    def test_home_override(self):
        with patch.dict(os.environ, {HOME_ENV: str(self.dir)}):
            self.assertEqual(default_config_dir(), self.dir)

    def test_log_dir(self):
        self.assertEqual(Config(self.dir).log_dir, self.dir / "logs")


if __name__ == "__main__":
    unittest.main()
