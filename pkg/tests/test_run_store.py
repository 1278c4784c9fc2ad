"""Tests for the SQLite run store."""

import sqlite3
import sys
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from storage import run_store


class TestRunStore(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.db = Path(self._tmp.name) / "runs.db"
        run_store.ensure_engine(self.db)

    def tearDown(self):
        run_store.dispose_engine()
        self._tmp.cleanup()

    def test_record_and_fetch(self):
        rows = [
            {"n": 15, "f": 5199, "seed": 42, "success": True, "t_total": 10.5},
            {"n": 15, "f": 5199, "seed": 43, "success": False, "t_total": 3.0, "reason": "no candidates"},
        ]
        self.assertEqual(run_store.record_rows("scaling", rows), 2)
        run_store.record_rows("lemmas", [{"check": "degree_window", "statistic": 1.0, "verdict": "pass"}])
        self.assertEqual(run_store.fetch_rows("scaling"), rows)
        self.assertEqual(len(run_store.fetch_rows()), 3)
        self.assertEqual(run_store.fetch_rows("asy"), [])

    def test_numpy_and_non_finite_values(self):
        run_store.record_rows("asy", [{"n": np.float64(6.0), "rounds": np.int64(12), "slope": float("nan")}])
        self.assertEqual(run_store.fetch_rows("asy"), [{"n": 6.0, "rounds": 12, "slope": None}])

    def test_persists_across_engines(self):
        run_store.record_rows("strings", [{"seed": 1, "k": 40}])
        run_store.dispose_engine()
        self.assertIsNone(run_store.database_path())
        run_store.ensure_engine(self.db)
        self.assertEqual(run_store.fetch_rows("strings"), [{"seed": 1, "k": 40}])

    def test_schema_version(self):
        with sqlite3.connect(self.db) as conn:
            self.assertEqual(conn.execute("PRAGMA user_version").fetchone()[0], 1)

    def test_ensure_engine_is_idempotent(self):
        self.assertEqual(run_store.ensure_engine(self.db), self.db)
        self.assertEqual(run_store.database_path(), self.db)

    def test_default_path_under_config_dir(self):
        with patch("storage.run_store.config") as mock_cfg:
            mock_cfg.config_dir = Path(self._tmp.name) / "home"
            self.assertEqual(run_store.default_db_path(), Path(self._tmp.name) / "home" / "runs.db")


if __name__ == "__main__":
    unittest.main()
