"""Tests for CSV/JSON result files."""

import csv
import json
import sys
import tempfile
import unittest
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.report_io import emit, read_rows
from utils.constants import SCALING_FIELDS

_HEADER = "n,f,seed,t_total,t_1A,t_1B,t_1C,t_wave,t_travel,success,leader_count,blue_count,pink_count,boundary_count"


def _row(**overrides):
    row = {
        "n": 15, "f": 5199, "seed": 42, "t_total": 123.456789012345, "t_1A": 18.0,
        "t_1B": 30.5, "t_1C": 60.25, "t_wave": 12.0, "t_travel": 2.706789012345,
        "success": True, "leader_count": 1, "blue_count": 300, "pink_count": 250,
        "boundary_count": 70, "reason": None,
    }
    row.update(overrides)
    return row


class TestEmit(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def test_header_only(self):
        path = self.dir / "empty.csv"
        emit([], path, "csv", SCALING_FIELDS)
        self.assertEqual(path.read_bytes(), (_HEADER + "\n").encode("utf-8"))

    def test_one_row_is_generic_csv(self):
        path = self.dir / "one.csv"
        emit([_row()], path, "csv", SCALING_FIELDS)
        with open(path, newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))
        self.assertEqual(len(rows), 2)
        self.assertEqual(len(rows[1]), 14)
        self.assertEqual(rows[1][SCALING_FIELDS.index("success")], "true")
        self.assertTrue(path.read_text(encoding="utf-8").endswith("\n"))

    def test_csv_round_trip(self):
        path = self.dir / "rt.csv"
        rows = [_row(), _row(seed=43, success=False, leader_count=0, t_total=0.1 + 0.2)]
        emit(rows, path, "csv", SCALING_FIELDS)
        back = read_rows(path, "csv")
        for orig, got in zip(rows, back):
            for key in SCALING_FIELDS:
                if isinstance(orig[key], float):
                    self.assertAlmostEqual(got[key], orig[key], delta=1e-9)
                else:
                    self.assertEqual(got[key], orig[key])

    def test_json_round_trip(self):
        path = self.dir / "rt.json"
        emit([_row(n=np.float64(15.5), f=np.int64(7))], path, "json", SCALING_FIELDS)
        text = path.read_text(encoding="utf-8")
        self.assertTrue(text.endswith("\n"))
        data = json.loads(text)
        self.assertEqual(list(data[0]), list(SCALING_FIELDS))
        self.assertEqual(data[0]["n"], 15.5)
        self.assertEqual(data[0]["f"], 7)
        self.assertEqual(read_rows(path, "json"), data)

    def test_non_finite_json_is_null(self):
        path = self.dir / "nan.json"
        emit([{"check": "x", "statistic": float("nan")}], path, "json", ("check", "statistic"))
        self.assertIsNone(json.loads(path.read_text(encoding="utf-8"))[0]["statistic"])

    def test_numpy_scalars_in_csv(self):
        path = self.dir / "np.csv"
        emit([{"a": np.float64(0.1), "b": np.bool_(True)}], path, "csv", ("a", "b"))
        self.assertEqual(path.read_text(encoding="utf-8"), "a,b\n0.1,true\n")

    def test_identical_input_identical_bytes(self):
        a, b = self.dir / "a.csv", self.dir / "b.csv"
        emit([_row()], a, "csv", SCALING_FIELDS)
        emit([_row()], b, "csv", SCALING_FIELDS)
        self.assertEqual(a.read_bytes(), b.read_bytes())

    def test_creates_parent_directory(self):
        path = self.dir / "nested" / "deeper" / "out.csv"
        emit([], path, "csv", SCALING_FIELDS)
        self.assertTrue(path.exists())

    def test_missing_field(self):
        with self.assertRaises(ValueError):
            emit([{"n": 1}], self.dir / "bad.csv", "csv", SCALING_FIELDS)

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            emit([], self.dir / "x.xml", "xml", SCALING_FIELDS)

    def test_unwritable_path(self):
        blocker = self.dir / "file"
        blocker.write_text("x", encoding="utf-8")
        with self.assertRaises(OSError):
            emit([], blocker / "out.csv", "csv", SCALING_FIELDS)


if __name__ == "__main__":
    unittest.main()
