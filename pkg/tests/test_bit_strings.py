"""Tests for bit-string comparison."""

import itertools
import sys
import unittest
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.bit_strings import Comparison, Ordering, compare_strings
from core.oracles import naive_compare


class TestCompareStrings(unittest.TestCase):
    def test_equal_reads_everything(self):
        self.assertEqual(compare_strings([1, 0, 1], [1, 0, 1]), Comparison(Ordering.EQUAL, 3))

    def test_greater_on_zero(self):
        self.assertEqual(compare_strings([1, 1], [1, 0, 0, 1]), Comparison(Ordering.GREATER, 2))

    def test_less_on_one(self):
        self.assertEqual(compare_strings([0, 1], [1, 1]), Comparison(Ordering.LESS, 1))

    def test_reader_exhausted(self):
        self.assertEqual(compare_strings([1, 0], [1, 0, 1]), Comparison(Ordering.LESS, 2))

    def test_stored_copy_exhausted(self):
        self.assertEqual(compare_strings([1, 0, 1], [1, 0]), Comparison(Ordering.GREATER, 2))

    def test_empty_input(self):
        with self.assertRaises(ValueError):
            compare_strings([], [1])
        with self.assertRaises(ValueError):
            compare_strings([0], [])

    def test_non_binary(self):
        with self.assertRaises(ValueError):
            compare_strings([1, 2], [1, 0])

    def test_ordering_values(self):
        self.assertEqual(Ordering.LESS.value, "less")
        self.assertEqual(Ordering("greater"), Ordering.GREATER)

    def test_agrees_with_prefix_oracle(self):
        words = [w for length in range(1, 5) for w in itertools.product((0, 1), repeat=length)]
        for a in words:
            for b in words:
                self.assertEqual(compare_strings(a, b), naive_compare(a, b), f"{a} vs {b}")


if __name__ == "__main__":
    unittest.main()
