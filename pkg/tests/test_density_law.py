"""Tests for the density-law expression grammar."""

import math
import sys
import unittest
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.density_law import DEFAULT_LAW, parse_density_law
from core.errors import DensityLawError
from core.geometry import DiscConfig


class TestDensityLaw(unittest.TestCase):
    def test_default_law(self):
        law = parse_density_law(DEFAULT_LAW)
        self.assertAlmostEqual(law.evaluate(20), 8 * 400 * math.log(20))
        self.assertEqual(law.point_count(20), math.ceil(8 * 400 * math.log(20)))

    def test_precedence(self):
        self.assertEqual(parse_density_law("1+2*3").evaluate(0), 7.0)
        self.assertEqual(parse_density_law("(1+2)*3").evaluate(0), 9.0)
        self.assertEqual(parse_density_law("2^3^2").evaluate(0), 512.0)
        self.assertEqual(parse_density_law("2*n^2").evaluate(3), 18.0)

    def test_numbers_and_spaces(self):
        self.assertAlmostEqual(parse_density_law(" 1.5e1 * n ").evaluate(2), 30.0)
        self.assertAlmostEqual(parse_density_law(".5*n").evaluate(4), 2.0)

    def test_log(self):
        self.assertAlmostEqual(parse_density_law("log(n)").evaluate(math.e), 1.0)
        with self.assertRaises(DensityLawError):
            parse_density_law("log(n)").evaluate(0)

    def test_malformed(self):
        for text in ("", "n^", "2n", "log n", "n-1", "(n", "n)", "exp(n)", "n**2"):
            with self.subTest(text=text):
                with self.assertRaises(DensityLawError):
                    parse_density_law(text)

    def test_error_is_value_error(self):
        with self.assertRaises(ValueError):
            parse_density_law("%")

    def test_ceiling(self):
        law = parse_density_law("n^2")
        self.assertEqual(law.point_count(2.5), 7)
        self.assertEqual(str(law), "n^2")

    def test_disc_config_from_law(self):
        cfg = DiscConfig.from_law(3, parse_density_law("n^2"), 4)
        self.assertEqual((cfg.n, cfg.f, cfg.seed), (3.0, 9, 4))


if __name__ == "__main__":
    unittest.main()
