"""Tests for experiment orchestration and the lemma suite."""

import itertools
import os
import sys
import unittest
from pathlib import Path
from unittest.mock import patch

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.analysis import (
    CHECKS,
    LemmaSuiteConfig,
    ScalingRow,
    ScalingTable,
    asy_experiment,
    boundary_experiment,
    connectivity_sweep,
    default_string_length,
    fit_loglog_slope,
    lemma_suite,
    scaling_experiment,
    string_read_experiment,
    strings_experiment,
    total_bits_read,
)
from core.bit_strings import compare_strings
from core.parallel import run_ordered
from utils.constants import ASY_FIELDS, BOUNDARY_FIELDS, LEMMA_FIELDS, SCALING_FIELDS, SLOW_TESTS_ENV, STRINGS_FIELDS


def _row(n, seed, t_total, success=True, reason=None):
    return ScalingRow(
        n=n, f=100, seed=seed, t_total=t_total, t_1A=18.0, t_1B=1.0, t_1C=1.0, t_wave=1.0,
        t_travel=1.0, success=success, leader_count=1 if success else 0, blue_count=5,
        pink_count=2, boundary_count=4, reason=reason,
    )


class TestFitSlope(unittest.TestCase):
    def test_linear(self):
        self.assertAlmostEqual(fit_loglog_slope([1, 2, 4], [3, 6, 12]), 1.0)

    def test_quadratic(self):
        self.assertAlmostEqual(fit_loglog_slope([2, 3, 5], [4, 9, 25]), 2.0)

    def test_degenerate(self):
        self.assertIsNone(fit_loglog_slope([15], [40.0]))
        self.assertIsNone(fit_loglog_slope([], []))


class TestBitReading(unittest.TestCase):
    def test_equal_strings_read_everything(self):
        res = string_read_experiment(2, strings=np.array([[1, 0, 1], [1, 0, 1]]))
        self.assertEqual((res.n_strings, res.k, res.max_total_bits), (2, 3, 3))
        self.assertEqual(res.per_pair_mean, 3.0)

    def test_totals_match_pairwise_comparison(self):
        strings = np.random.default_rng(8).integers(0, 2, size=(40, 6))
        totals = total_bits_read(strings)
        for i in range(len(strings)):
            expected = sum(
                compare_strings(strings[i], strings[j]).bits_read
                for j in range(len(strings)) if j != i
            )
            self.assertEqual(int(totals[i]), expected)

    def test_default_length(self):
        self.assertEqual(default_string_length(10_000), 46)
        self.assertEqual(string_read_experiment(16, seed=1).k, 36)

    def test_one_bit_strings_read_once_per_pair(self):
        res = string_read_experiment(50, k=1, seed=2)
        self.assertEqual((res.max_total_bits, res.mean_total_bits, res.per_pair_mean), (49, 49.0, 1.0))
        strings = np.random.default_rng(4).integers(0, 2, size=(30, 1))
        self.assertTrue((total_bits_read(strings) == 29).all())

    def test_invalid(self):
        with self.assertRaises(ValueError):
            string_read_experiment(1)
        with self.assertRaises(ValueError):
            string_read_experiment(5, k=0)

    def test_pair_mean_near_two(self):
        res = string_read_experiment(10_000, k=40, seed=3)
        self.assertAlmostEqual(res.per_pair_mean, 2.0, delta=0.1)
        self.assertLessEqual(res.max_total_bits, 2.2 * 10_000)

    def test_trials_use_consecutive_seeds(self):
        results = strings_experiment(100, 10, seed=5, trials=3)
        self.assertEqual([r.seed for r in results], [5, 6, 7])
        self.assertEqual(list(results[0].as_dict()), list(STRINGS_FIELDS[1:]) + ["seed"])
        self.assertEqual(results[1], string_read_experiment(100, 10, 6))


class TestScalingTable(unittest.TestCase):
    def test_aggregates(self):
        table = ScalingTable()
        table.extend([_row(15, 1, 100.0), _row(15, 2, 120.0), _row(15, 3, 0.0, False, "no candidates")])
        table.add_row(_row(30, 1, 220.0))
        self.assertEqual(table.n_values(), [15, 30])
        self.assertAlmostEqual(table.success_fraction(15), 2 / 3)
        self.assertEqual(table.median_t_total(), {15: 110.0, 30: 220.0})
        self.assertAlmostEqual(table.slope(), np.log(2) / np.log(2))
        self.assertEqual(table.failure_reasons(), {"no candidates": 1})
        self.assertEqual(list(table.as_dicts()[0]), list(SCALING_FIELDS))
        text = table.summary_text()
        self.assertIn("Rendezvous Sweep Complete", text)
        self.assertIn("no candidates x1", text)

    def test_empty_table(self):
        table = ScalingTable()
        self.assertEqual(table.success_fraction(15), 0.0)
        self.assertIsNone(table.slope())


class TestExperiments(unittest.TestCase):
    def test_single_point_scaling(self):
        result = scaling_experiment([2], trials=1, seed=4)
        self.assertIsNone(result.slope)
        rows = result.table.as_dicts()
        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0]["seed"], 4)
        self.assertEqual(rows[0]["f"], 23)

    def test_scaling_is_deterministic(self):
        a = scaling_experiment([1.5, 2], trials=2, seed=9).table.as_dicts()
        b = scaling_experiment([1.5, 2], trials=2, seed=9).table.as_dicts()
        self.assertEqual(a, b)
        self.assertEqual([(r["n"], r["seed"]) for r in a], [(1.5, 9), (1.5, 10), (2, 9), (2, 10)])

    def test_grid_validation(self):
        with self.assertRaises(ValueError):
            scaling_experiment([30, 15])
        with self.assertRaises(ValueError):
            scaling_experiment([15], trials=0)

    def test_boundary_rows(self):
        rows = boundary_experiment([2, 3], trials=1)
        self.assertEqual(len(rows), 2)
        for row in rows:
            self.assertTrue(set(BOUNDARY_FIELDS) <= set(row))
            self.assertGreaterEqual(row["count"], 0)

    def test_asy_rows(self):
        result = asy_experiment([0.4, 0.5], density_law="10", trials=1)
        self.assertEqual(len(result.rows), 2)
        for row in result.rows:
            self.assertTrue(set(ASY_FIELDS) <= set(row))
            self.assertTrue(row["converged"])
            self.assertTrue(row["connectivity_preserved"])
            self.assertTrue(row["spread_monotone"])

    def test_connectivity_sweep(self):
        fractions = connectivity_sweep(0.4, ["10", "n^2"], trials=3)
        self.assertEqual(fractions, {"10": 1.0, "n^2": 1.0})

    def test_run_ordered_keeps_order(self):
        items = [-3, 1, -2, 5, -8]
        self.assertEqual(run_ordered(abs, items, jobs=2), [3, 1, 2, 5, 8])
        seen = []
        run_ordered(abs, items, jobs=1, progress=lambda done, total: seen.append((done, total)))
        self.assertEqual(seen[-1], (5, 5))


class TestLemmaSuite(unittest.TestCase):
    def test_defaults_reproduce_acceptance_sizes(self):
        suite = LemmaSuiteConfig()
        self.assertEqual(suite.rendezvous_grid, (15, 30, 60))
        self.assertEqual(suite.degree_n, 40)
        self.assertEqual((suite.strings_count, suite.strings_k, suite.strings_seeds), (10_000, None, 30))
        self.assertEqual(LemmaSuiteConfig.quick().strings_k, None)
        self.assertEqual(suite.seed, 42)

    def test_strings_check_uses_default_length(self):
        def fake(n_strings, k, seed, trials, jobs):
            return [string_read_experiment(50, k, seed + i) for i in range(trials)]

        with patch("core.analysis.strings_experiment", side_effect=fake) as run:
            results = lemma_suite(LemmaSuiteConfig(strings_seeds=2), checks=["strings"])
        self.assertEqual(run.call_args.args[:2], (10_000, 46))
        self.assertEqual([r.check for r in results], ["string_read_max", "string_read_pair_mean"])
        self.assertIn("k=46", results[1].detail)

    def test_unknown_check(self):
        with self.assertRaises(ValueError):
            lemma_suite(LemmaSuiteConfig.quick(), checks=["telepathy"])

    def test_cheap_checks(self):
        results = lemma_suite(LemmaSuiteConfig.quick(), checks=["election", "determinism", "oracles"])
        names = [r.check for r in results]
        # Results follow the suite order, not the order asked for.
        self.assertEqual(names[:4], ["oracle_adjacency", "oracle_sec", "oracle_boundary", "oracle_compare"])
        self.assertEqual(names[4:], ["election_rounds", "determinism"])
        for r in results:
            self.assertEqual(list(r.as_dict()), list(LEMMA_FIELDS))
            self.assertTrue(r.passed, f"{r.check}: {r.detail}")

    def test_check_names(self):
        self.assertEqual(list(CHECKS)[0], "degree")
        self.assertIn("asy", CHECKS)


@unittest.skipUnless(os.environ.get(SLOW_TESTS_ENV), f"set {SLOW_TESTS_ENV}=1 for statistical tests")
class TestQuickSuite(unittest.TestCase):
    def test_every_check_reports(self):
        results = lemma_suite(LemmaSuiteConfig.quick(), jobs=2)
        self.assertGreaterEqual(len(results), len(CHECKS))
        self.assertTrue(all(r.verdict in ("pass", "fail") for r in results))

    def test_rim_and_rendezvous_rows(self):
        results = lemma_suite(LemmaSuiteConfig.quick(), checks=["rim", "rendezvous"], jobs=2)
        self.assertEqual([r.check for r in results], ["blue_near_rim", "rendezvous_success", "rendezvous_slope"])
        for r in results:
            self.assertIn(r.verdict, ("pass", "fail"))
            self.assertTrue(r.detail)

    def test_asy_cost_grows_faster_than_linear(self):
        result = asy_experiment([6, 9, 12], trials=1, jobs=2)
        self.assertEqual(len(result.rows), 3)
        for row in result.rows:
            self.assertTrue(row["converged"], f"n={row['n']}")
            self.assertTrue(row["connectivity_preserved"], f"n={row['n']}")
        self.assertIsNotNone(result.slope)
        self.assertGreaterEqual(result.slope, 1.5)


if __name__ == "__main__":
    unittest.main()
