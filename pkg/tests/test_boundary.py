"""Tests for boundary-point classification."""

import math
import os
import sys
import unittest
from pathlib import Path

import numpy as np
from scipy.spatial import ConvexHull

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.boundary import boundary_labels, boundary_stats, exact_boundary_label
from core.density_law import parse_density_law
from core.geometry import DiscConfig
from core.oracles import cycle_enumeration_label
from core.rgg import build_comm_graph, comm_graph_from_points
from utils.constants import SLOW_TESTS_ENV


def _ring(count: int, radius: float, phase: float = 0.0) -> np.ndarray:
    angles = phase + 2 * math.pi * np.arange(count) / count
    return np.column_stack([radius * np.cos(angles), radius * np.sin(angles)])


class TestExactLabel(unittest.TestCase):
    def test_isolated_vertex(self):
        g = comm_graph_from_points(np.array([[0.0, 0.0]]))
        self.assertTrue(exact_boundary_label(g, 0))

    def test_triangle_of_distant_neighbours(self):
        pts = np.vstack([[0.0, 0.0], _ring(3, 0.6)])
        g = comm_graph_from_points(pts)
        self.assertEqual(len(g.neighbors(0)), 3)
        self.assertTrue(exact_boundary_label(g, 0))
        self.assertTrue(cycle_enumeration_label(g, 0))

    def test_hexagon_encloses(self):
        pts = np.vstack([[0.0, 0.0], _ring(6, 0.6)])
        g = comm_graph_from_points(pts)
        self.assertFalse(exact_boundary_label(g, 0))
        self.assertFalse(cycle_enumeration_label(g, 0))
        # Ring vertices see nothing beyond themselves and the centre.
        self.assertTrue(all(exact_boundary_label(g, v) for v in range(1, 7)))

    def test_half_ball_cover_agrees(self):
        pts = np.vstack([[0.0, 0.0], _ring(5, 0.3)])
        g = comm_graph_from_points(pts)
        labels = boundary_labels(g)
        self.assertFalse(labels[0])
        self.assertEqual(bool(labels[0]), exact_boundary_label(g, 0))

    def test_one_sided_neighbours(self):
        pts = np.array([[0.0, 0.0], [0.4, 0.1], [0.4, -0.1], [0.6, 0.0], [0.3, 0.0]])
        g = comm_graph_from_points(pts)
        self.assertTrue(exact_boundary_label(g, 0))

    def test_out_of_range(self):
        g = comm_graph_from_points(np.array([[0.0, 0.0]]))
        with self.assertRaises(IndexError):
            exact_boundary_label(g, 5)

    def test_matches_cycle_enumeration(self):
        g = build_comm_graph(DiscConfig(n=5.0, f=160, seed=4))
        for v in np.flatnonzero(g.degrees <= 12):
            self.assertEqual(exact_boundary_label(g, int(v)), cycle_enumeration_label(g, int(v)), f"vertex {v}")

    def test_labels_match_exact_test(self):
        g = build_comm_graph(DiscConfig(n=3.0, f=150, seed=2))
        labels = boundary_labels(g)
        for v in range(g.size):
            self.assertEqual(bool(labels[v]), exact_boundary_label(g, v), f"vertex {v}")


class TestBoundaryStats(unittest.TestCase):
    def test_three_distant_points(self):
        pts = np.array([[0.0, 0.0], [3.0, 0.0], [0.0, 3.0]])
        report = boundary_stats(comm_graph_from_points(pts), DiscConfig(n=5.0, f=3, seed=0))
        self.assertEqual(report.count, 3)
        self.assertEqual(report.boundary_ids, frozenset({0, 1, 2}))
        self.assertAlmostEqual(report.ratio_count_over_n, 3 / 5.0)
        self.assertAlmostEqual(report.max_rim_distance, 5.0)

    def test_empty_graph(self):
        report = boundary_stats(comm_graph_from_points(np.zeros((0, 2))), DiscConfig(n=2.0, f=0, seed=0))
        self.assertEqual(report.count, 0)
        self.assertEqual(report.max_rim_distance, 0.0)

    def test_dense_disc_has_boundary_near_rim(self):
        cfg = DiscConfig(n=4.0, f=800, seed=6)
        g = build_comm_graph(cfg)
        report = boundary_stats(g, cfg)
        self.assertGreater(report.count, 0)
        self.assertLess(report.count, g.size // 2)


class TestBoundaryStructure(unittest.TestCase):
    def test_hull_vertices_are_boundary(self):
        cfg = DiscConfig(n=4.0, f=300, seed=8)
        g = build_comm_graph(cfg)
        labels = boundary_labels(g)
        hull = ConvexHull(g.coords).vertices
        self.assertTrue(labels[hull].all())

    def test_adding_a_point_keeps_interior_vertices(self):
        rng = np.random.default_rng(11)
        cfg = DiscConfig(n=3.0, f=120, seed=5)
        base = build_comm_graph(cfg)
        before = boundary_labels(base)
        for _ in range(5):
            extra = rng.uniform(-2.0, 2.0, size=(1, 2))
            after = boundary_labels(comm_graph_from_points(np.vstack([base.coords, extra])))
            self.assertFalse((~before & after[:-1]).any())


@unittest.skipUnless(os.environ.get(SLOW_TESTS_ENV), f"set {SLOW_TESTS_ENV}=1 for statistical tests")
class TestBoundaryScaling(unittest.TestCase):
    def test_count_grows_linearly(self):
        law = parse_density_law("8*n^2*log(n)")
        ratios = []
        for n in (15, 20, 25):
            counts = []
            for seed in range(5):
                cfg = DiscConfig.from_law(n, law, seed)
                counts.append(boundary_stats(build_comm_graph(cfg), cfg).ratio_count_over_n)
            ratios.append(sum(counts) / len(counts))
        self.assertLessEqual(max(ratios) / min(ratios), 2.0)


if __name__ == "__main__":
    unittest.main()
