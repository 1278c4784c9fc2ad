"""Unit-distance communication graph over a point configuration.

Neighbours are found through a uniform grid with cell side 1, so every
candidate of a point sits in the 3x3 block of cells around its own cell.
Adjacency is held as CSR arrays (``indptr``/``indices``); scipy's csgraph
routines do the traversals.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from core.errors import GraphDisconnectedError
from core.geometry import ABS_TOL, DiscConfig, Point2, PointsLike, as_array, sample_disc_array, to_points
from core.rng import DIAMETER, make_rng

logger = logging.getLogger(__name__)

UNIT_RADIUS_SQ = (1.0 + ABS_TOL) ** 2
EXACT_DIAMETER_MAX_VERTICES = 100_000
_BFS_CHUNK = 32


class GridIndex:
    """Points bucketed into unit cells, keyed by a padded row-major cell id."""

    def __init__(self, coords: np.ndarray):
        self.coords = coords
        if len(coords) == 0:
            self.cell_x = self.cell_y = np.zeros(0, dtype=np.int64)
            self.stride = 3
            self.keys = np.zeros(0, dtype=np.int64)
            self.order = np.zeros(0, dtype=np.int64)
            self.sorted_keys = self.keys
            return
        cells = np.floor(coords).astype(np.int64)
        # One empty cell of padding on every side keeps neighbour keys unique.
        self.cell_x = cells[:, 0] - cells[:, 0].min() + 1
        self.cell_y = cells[:, 1] - cells[:, 1].min() + 1
        self.stride = int(self.cell_y.max()) + 2
        self.keys = self.cell_x * self.stride + self.cell_y
        self.order = np.argsort(self.keys, kind="stable")
        self.sorted_keys = self.keys[self.order]

    def candidate_pairs(self, dx: int, dy: int) -> tuple[np.ndarray, np.ndarray]:
        """All (i, j) with j in the cell at offset (dx, dy) from i's cell."""
        target = self.keys + dx * self.stride + dy
        lo = np.searchsorted(self.sorted_keys, target, side="left")
        hi = np.searchsorted(self.sorted_keys, target, side="right")
        counts = hi - lo
        total = int(counts.sum())
        if total == 0:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty
        src = np.repeat(np.arange(len(self.keys), dtype=np.int64), counts)
        starts = np.cumsum(counts) - counts
        pos = np.arange(total, dtype=np.int64) - np.repeat(starts, counts) + np.repeat(lo, counts)
        return src, self.order[pos]

    def close_pairs(self, include_coincident: bool = False) -> tuple[np.ndarray, np.ndarray]:
        """Ordered pairs (i, j), i != j, with ||p_i - p_j|| <= 1; both directions present."""
        srcs, dsts = [], []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                i, j = self.candidate_pairs(dx, dy)
                if len(i) == 0:
                    continue
                diff = self.coords[i] - self.coords[j]
                d2 = np.einsum("ij,ij->i", diff, diff)
                keep = (i != j) & (d2 <= UNIT_RADIUS_SQ)
                if not include_coincident:
                    keep &= d2 > 0.0
                srcs.append(i[keep])
                dsts.append(j[keep])
        if not srcs:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty
        return np.concatenate(srcs), np.concatenate(dsts)


@dataclass(frozen=True, eq=False)
class CommGraph:
    """Immutable unit-distance graph. Vertex ids are row indices of ``coords``."""
    coords: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    grid: GridIndex = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.coords)

    @property
    def points(self) -> list[Point2]:
        return to_points(self.coords)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @cached_property
    def edge_sources(self) -> np.ndarray:
        return np.repeat(np.arange(self.size, dtype=np.int64), self.degrees)

    @cached_property
    def csr(self) -> csr_matrix:
        data = np.ones(len(self.indices), dtype=np.int8)
        return csr_matrix((data, self.indices, self.indptr), shape=(self.size, self.size))

    def edge_set(self) -> set[tuple[int, int]]:
        """Undirected edges as (u, v) with u < v."""
        src, dst = self.edge_sources, self.indices
        mask = src < dst
        return set(zip(src[mask].tolist(), dst[mask].tolist()))


@dataclass(frozen=True)
class GraphStats:
    min_degree: float
    max_degree: float
    mean_degree: float
    diameter_hops: Optional[int] = None
    connected: Optional[bool] = None
    density: Optional[float] = None


def comm_graph_from_points(points: PointsLike, include_coincident: bool = False) -> CommGraph:
    """Build the graph over explicit points.

    Args:
        points: Point2 sequence or (k, 2) array.
        include_coincident: treat co-located points as neighbours (robots
            that have merged still see each other).
    """
    coords = as_array(points)
    grid = GridIndex(coords)
    src, dst = grid.close_pairs(include_coincident=include_coincident)
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    counts = np.bincount(src, minlength=len(coords)) if len(coords) else np.zeros(0, dtype=np.int64)
    indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    return CommGraph(coords=coords, indptr=indptr, indices=dst.astype(np.int64), grid=grid)


def build_comm_graph(cfg: DiscConfig) -> CommGraph:
    g = comm_graph_from_points(sample_disc_array(cfg))
    logger.debug("built graph n=%s f=%d edges=%d", cfg.n, cfg.f, len(g.indices) // 2)
    return g


def degree_stats(g: CommGraph, cfg: Optional[DiscConfig] = None) -> GraphStats:
    if g.size == 0:
        return GraphStats(0.0, 0.0, 0.0, density=cfg.density if cfg else None)
    deg = g.degrees
    return GraphStats(
        min_degree=float(deg.min()),
        max_degree=float(deg.max()),
        mean_degree=float(deg.mean()),
        density=cfg.density if cfg else None,
    )


def is_connected(g: CommGraph) -> bool:
    """True iff the graph has one component; graphs with 0 or 1 vertex count as connected."""
    if g.size <= 1:
        return True
    n_comp, _ = connected_components(g.csr, directed=False)
    return n_comp == 1


def bfs_depths(g: CommGraph, source: int) -> np.ndarray:
    """Hop distance from *source*; -1 for unreachable vertices."""
    dist = shortest_path(g.csr, directed=False, unweighted=True, indices=int(source))
    out = np.full(g.size, -1, dtype=np.int64)
    finite = np.isfinite(dist)
    out[finite] = dist[finite].astype(np.int64)
    return out


def _max_eccentricity(g: CommGraph, sources: Sequence[int]) -> int:
    best = 0
    for start in range(0, len(sources), _BFS_CHUNK):
        chunk = np.asarray(sources[start:start + _BFS_CHUNK], dtype=np.int64)
        dist = shortest_path(g.csr, directed=False, unweighted=True, indices=chunk)
        if not np.all(np.isfinite(dist)):
            raise GraphDisconnectedError()
        best = max(best, int(dist.max()))
    return best


def graph_diameter(g: CommGraph, mode: str = "exact", k: int = 32, seed: int = 0) -> int:
    """Hop diameter.

    ``exact`` runs a BFS from every vertex. ``sampled`` runs BFS from *k*
    distinct random sources and returns their largest eccentricity, a
    lower bound on the true diameter.

    Raises:
        GraphDisconnectedError: the graph has more than one component.
        ValueError: unknown mode or k < 1.
    """
    if mode not in ("exact", "sampled"):
        raise ValueError(f"unknown diameter mode {mode!r}")
    if g.size <= 1:
        return 0
    if not is_connected(g):
        raise GraphDisconnectedError()
    if mode == "exact":
        if g.size > EXACT_DIAMETER_MAX_VERTICES:
            logger.warning("exact diameter over %d vertices; consider sampled mode", g.size)
        return _max_eccentricity(g, range(g.size))
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = make_rng(seed, DIAMETER)
    sources = rng.choice(g.size, size=min(k, g.size), replace=False)
    return _max_eccentricity(g, sorted(int(s) for s in sources))


def graph_stats(g: CommGraph, cfg: DiscConfig, mode: str = "sampled", k: int = 32) -> GraphStats:
    """All GraphStats fields; ``diameter_hops`` is None for a disconnected graph."""
    deg = degree_stats(g, cfg)
    connected = is_connected(g)
    diameter = graph_diameter(g, mode=mode, k=k, seed=cfg.seed) if connected else None
    return GraphStats(
        min_degree=deg.min_degree,
        max_degree=deg.max_degree,
        mean_degree=deg.mean_degree,
        diameter_hops=diameter,
        connected=connected,
        density=cfg.density,
    )


def dump_adjacency(g: CommGraph, path: Union[str, Path]) -> None:
    """Write one ``id: id id id`` line per vertex."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for v in range(g.size):
            nbrs = " ".join(str(int(u)) for u in g.neighbors(v))
            f.write(f"{v}: {nbrs}\n" if nbrs else f"{v}:\n")


def degree_window(density: float) -> tuple[float, float]:
    """Degree window (pi/3 * density, 2 * pi * density) checked by the lemma suite."""
    return math.pi / 3.0 * density, 2.0 * math.pi * density
