"""Boundary points of the communication graph.

A vertex v is *interior* when some closed walk through its neighbours, with
consecutive vertices adjacent, winds once around v. Every step of such a
walk turns by less than pi as seen from v, so the step's signed angle is
well defined and the winding number of a closed walk is the sum of its
steps divided by 2*pi.

Within one component of v's link graph the achievable winding numbers
form the subgroup generated by the fundamental cycles of a BFS tree, so a
winding of +-1 exists iff the gcd of those cycles' windings is 1.

Most vertices never reach that search: if v's neighbours inside the open
half-unit ball number at least three and leave no angular gap of pi or
more, they are pairwise adjacent and the polygon through them in angular
order already encloses v.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import reduce
from typing import Optional

import numpy as np

from core.geometry import DiscConfig
from core.rgg import CommGraph

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
HALF_BALL = 0.5
# Ties between exactly collinear neighbours are broken by a tiny id-keyed offset.
TIE_BREAK = 1e-12
_STEP_LIMIT = math.pi - 1e-12


@dataclass(frozen=True)
class BoundaryReport:
    boundary_ids: frozenset
    count: int
    max_rim_distance: float
    ratio_count_over_n: float


def _tie_break(ids: np.ndarray) -> np.ndarray:
    return TIE_BREAK * ((ids % 1009) / 1009.0)


def _wrap(delta: np.ndarray) -> np.ndarray:
    """Map angle differences into (-pi, pi]."""
    return np.pi - np.mod(np.pi - delta, TWO_PI)


def _half_ball_interior(g: CommGraph) -> np.ndarray:
    """Vertices proven interior by the half-ball angular cover."""
    n = g.size
    proven = np.zeros(n, dtype=bool)
    if n == 0 or len(g.indices) == 0:
        return proven
    src = g.edge_sources
    dst = g.indices
    diff = g.coords[dst] - g.coords[src]
    close = np.hypot(diff[:, 0], diff[:, 1]) < HALF_BALL
    src, dst, diff = src[close], dst[close], diff[close]
    if len(src) == 0:
        return proven
    theta = np.mod(np.arctan2(diff[:, 1], diff[:, 0]) + _tie_break(dst), TWO_PI)
    order = np.lexsort((theta, src))
    src, theta = src[order], theta[order]
    counts = np.bincount(src, minlength=n)
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    has = counts > 0
    # Gap between consecutive angles, plus the wrap-around gap per vertex.
    gaps = np.diff(theta, append=theta[-1])
    last = starts + counts - 1
    gaps[last[has]] = theta[starts[has]] + TWO_PI - theta[last[has]]
    max_gap = np.full(n, TWO_PI)
    max_gap[has] = np.maximum.reduceat(gaps, starts[has])
    proven = (counts >= 3) & (max_gap < math.pi)
    return proven


def _winding_label(g: CommGraph, v: int) -> bool:
    """Full link-graph test; True means boundary."""
    nbrs = g.neighbors(v)
    m = len(nbrs)
    if m < 3:
        return True
    local = {int(u): k for k, u in enumerate(nbrs)}
    offs = g.coords[nbrs] - g.coords[v]
    theta = np.arctan2(offs[:, 1], offs[:, 0]) + _tie_break(nbrs)

    adj: list[list[tuple[int, float]]] = [[] for _ in range(m)]
    for a, u in enumerate(nbrs):
        for w in g.neighbors(u):
            b = local.get(int(w))
            if b is None or b <= a:
                continue
            step = float(_wrap(np.array(theta[b] - theta[a])))
            if abs(step) >= _STEP_LIMIT:
                continue
            adj[a].append((b, step))
            adj[b].append((a, -step))

    potential: list[Optional[float]] = [None] * m
    for root in range(m):
        if potential[root] is not None:
            continue
        potential[root] = 0.0
        windings: list[int] = []
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for b, step in adj[a]:
                if potential[b] is None:
                    potential[b] = potential[a] + step
                    queue.append(b)
                elif a < b:
                    w = round((potential[a] + step - potential[b]) / TWO_PI)
                    if w:
                        windings.append(abs(w))
        if windings and reduce(math.gcd, windings) == 1:
            return False
    return True


def exact_boundary_label(g: CommGraph, v: int) -> bool:
    """True when no neighbour walk winds exactly once around *v*."""
    if not 0 <= v < g.size:
        raise IndexError(f"vertex {v} not in graph of size {g.size}")
    return _winding_label(g, v)


def boundary_labels(g: CommGraph) -> np.ndarray:
    """Boundary flag for every vertex (half-ball prefilter, then the full test)."""
    labels = np.zeros(g.size, dtype=bool)
    interior = _half_ball_interior(g)
    pending = np.flatnonzero(~interior)
    for v in pending:
        labels[v] = _winding_label(g, int(v))
    logger.debug("boundary: %d of %d vertices needed the link-graph test", len(pending), g.size)
    return labels


def boundary_stats(g: CommGraph, cfg: DiscConfig, labels: Optional[np.ndarray] = None) -> BoundaryReport:
    if labels is None:
        labels = boundary_labels(g)
    ids = np.flatnonzero(labels)
    if len(ids):
        rim = cfg.n - np.hypot(g.coords[ids, 0], g.coords[ids, 1])
        max_rim = float(max(0.0, rim.max()))
    else:
        max_rim = 0.0
    return BoundaryReport(
        boundary_ids=frozenset(int(i) for i in ids),
        count=len(ids),
        max_rim_distance=max_rim,
        ratio_count_over_n=len(ids) / cfg.n,
    )
