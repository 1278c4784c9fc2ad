"""Tests for the unit-distance communication graph."""

import math
import os
import sys
import tempfile
import unittest
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.density_law import parse_density_law
from core.errors import GraphDisconnectedError
from core.geometry import DiscConfig, sample_disc_array
from core.oracles import brute_force_edges
from core.rgg import (
    build_comm_graph,
    comm_graph_from_points,
    degree_stats,
    degree_window,
    dump_adjacency,
    graph_diameter,
    graph_stats,
    is_connected,
)
from utils.constants import SLOW_TESTS_ENV


class TestCommGraph(unittest.TestCase):
    def test_threshold_edges(self):
        g = comm_graph_from_points(np.array([[0.0, 0.0], [0.5, 0.0], [2.0, 0.0]]))
        self.assertEqual(g.edge_set(), {(0, 1)})

    def test_distance_one_is_an_edge(self):
        g = comm_graph_from_points(np.array([[0.0, 0.0], [1.0, 0.0]]))
        self.assertEqual(g.edge_set(), {(0, 1)})

    def test_coincident_points(self):
        pts = np.array([[0.3, 0.3], [0.3, 0.3]])
        self.assertEqual(comm_graph_from_points(pts).edge_set(), set())
        self.assertEqual(comm_graph_from_points(pts, include_coincident=True).edge_set(), {(0, 1)})

    def test_matches_brute_force(self):
        for seed in (1, 2):
            pts = sample_disc_array(DiscConfig(n=8.0, f=500, seed=seed))
            self.assertEqual(comm_graph_from_points(pts).edge_set(), brute_force_edges(pts))

    def test_negative_coordinates_across_cells(self):
        pts = np.array([[-0.1, -0.1], [0.4, 0.5], [-0.9, 0.2], [-5.0, -5.0]])
        self.assertEqual(comm_graph_from_points(pts).edge_set(), brute_force_edges(pts))

    def test_neighbors_are_symmetric(self):
        g = build_comm_graph(DiscConfig(n=4.0, f=200, seed=9))
        for v in range(g.size):
            for u in g.neighbors(v):
                self.assertIn(v, g.neighbors(int(u)))

    def test_empty_graph(self):
        g = comm_graph_from_points(np.zeros((0, 2)))
        self.assertEqual(g.size, 0)
        self.assertTrue(is_connected(g))
        self.assertEqual(graph_diameter(g), 0)


class TestGraphStats(unittest.TestCase):
    def test_single_vertex(self):
        stats = degree_stats(comm_graph_from_points(np.array([[0.0, 0.0]])))
        self.assertEqual((stats.min_degree, stats.max_degree, stats.mean_degree), (0.0, 0.0, 0.0))

    def test_triangle(self):
        g = comm_graph_from_points(np.array([[0.0, 0.0], [0.5, 0.0], [0.25, 0.4]]))
        stats = degree_stats(g)
        self.assertEqual((stats.min_degree, stats.max_degree), (2.0, 2.0))

    def test_path_diameter(self):
        g = comm_graph_from_points(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]))
        self.assertEqual(graph_diameter(g, mode="exact"), 2)
        self.assertEqual(graph_diameter(g, mode="sampled", k=3), 2)

    def test_complete_neighbourhood(self):
        rng = np.random.default_rng(0)
        angles = rng.uniform(0, 2 * math.pi, 30)
        radii = 0.45 * np.sqrt(rng.uniform(0, 1, 30))
        pts = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
        self.assertEqual(graph_diameter(comm_graph_from_points(pts)), 1)

    def test_sampled_is_lower_bound(self):
        g = build_comm_graph(DiscConfig(n=4.0, f=300, seed=3))
        if not is_connected(g):
            self.skipTest("sample happened to be disconnected")
        self.assertLessEqual(graph_diameter(g, "sampled", k=5, seed=1), graph_diameter(g, "exact"))

    def test_disconnected(self):
        g = comm_graph_from_points(np.array([[0.0, 0.0], [3.0, 0.0]]))
        self.assertFalse(is_connected(g))
        with self.assertRaises(GraphDisconnectedError) as ctx:
            graph_diameter(g)
        self.assertEqual(ctx.exception.reason, "graph disconnected")
        stats = graph_stats(g, DiscConfig(n=2.0, f=2, seed=0))
        self.assertFalse(stats.connected)
        self.assertIsNone(stats.diameter_hops)

    def test_unknown_mode(self):
        g = comm_graph_from_points(np.array([[0.0, 0.0], [0.5, 0.0]]))
        with self.assertRaises(ValueError):
            graph_diameter(g, mode="approx")

    def test_degree_window(self):
        lo, hi = degree_window(3.0)
        self.assertAlmostEqual(lo, math.pi)
        self.assertAlmostEqual(hi, 6 * math.pi)

    def test_dump_adjacency(self):
        g = comm_graph_from_points(np.array([[0.0, 0.0], [0.5, 0.0], [3.0, 0.0]]))
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "adj.txt"
            dump_adjacency(g, path)
            self.assertEqual(path.read_text(encoding="utf-8"), "0: 1\n1: 0\n2:\n")


@unittest.skipUnless(os.environ.get(SLOW_TESTS_ENV), f"set {SLOW_TESTS_ENV}=1 for statistical tests")
class TestGraphLaws(unittest.TestCase):
    law = parse_density_law("8*n^2*log(n)")

    def test_connectivity_threshold(self):
        dense = [is_connected(build_comm_graph(DiscConfig.from_law(30, self.law, s))) for s in range(50)]
        sparse_law = parse_density_law("n^2")
        sparse = [is_connected(build_comm_graph(DiscConfig.from_law(30, sparse_law, s))) for s in range(50)]
        self.assertGreaterEqual(sum(dense), 48)
        self.assertLessEqual(sum(sparse), 2)

    def test_diameter_bound(self):
        for seed in range(10):
            g = build_comm_graph(DiscConfig.from_law(30, self.law, seed))
            self.assertLessEqual(graph_diameter(g, "sampled", k=8, seed=seed), 180)


if __name__ == "__main__":
    unittest.main()
