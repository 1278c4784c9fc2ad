"""Slow reference implementations used to cross-check the fast paths."""

from __future__ import annotations

import itertools
import math
import os
from typing import Iterator, Optional, Sequence

import numpy as np

from core.bit_strings import Comparison, Ordering
from core.geometry import ABS_TOL, Circle, Point2, PointsLike, as_array
from core.rgg import CommGraph


def brute_force_edges(points: PointsLike) -> set[tuple[int, int]]:
    """All pairs (u, v), u < v, with 0 < distance <= 1, by the O(f^2) test."""
    pts = as_array(points)
    edges = set()
    for u in range(len(pts)):
        d = np.hypot(*(pts[u + 1:] - pts[u]).T)
        for off in np.flatnonzero((d > 0) & (d <= 1.0 + ABS_TOL)):
            edges.add((u, u + 1 + int(off)))
    return edges


def brute_force_sec(points: PointsLike) -> Circle:
    """Smallest circle over all candidates through 1, 2 or 3 of the points."""
    pts = [tuple(p) for p in as_array(points)]
    if not pts:
        raise ValueError("empty point set")
    candidates: list[tuple[float, float, float]] = [(pts[0][0], pts[0][1], 0.0)]
    for a, b in itertools.combinations(pts, 2):
        cx, cy = (a[0] + b[0]) / 2, (a[1] + b[1]) / 2
        candidates.append((cx, cy, math.hypot(a[0] - cx, a[1] - cy)))
    for a, b, c in itertools.combinations(pts, 3):
        d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
        if abs(d) < 1e-15:
            continue
        ux = ((a[0] ** 2 + a[1] ** 2) * (b[1] - c[1]) + (b[0] ** 2 + b[1] ** 2) * (c[1] - a[1])
              + (c[0] ** 2 + c[1] ** 2) * (a[1] - b[1])) / d
        uy = ((a[0] ** 2 + a[1] ** 2) * (c[0] - b[0]) + (b[0] ** 2 + b[1] ** 2) * (a[0] - c[0])
              + (c[0] ** 2 + c[1] ** 2) * (b[0] - a[0])) / d
        candidates.append((ux, uy, math.hypot(a[0] - ux, a[1] - uy)))
    best: Optional[tuple[float, float, float]] = None
    for cx, cy, r in candidates:
        if best is not None and r >= best[2]:
            continue
        if all(math.hypot(p[0] - cx, p[1] - cy) <= r + 1e-12 for p in pts):
            best = (cx, cy, r)
    assert best is not None
    return Circle(Point2(best[0], best[1]), best[2])


def naive_compare(reader: Sequence[int], s_copy: Sequence[int]) -> Comparison:
    """Comparison via the longest common prefix."""
    if not reader or not s_copy:
        raise ValueError("cannot compare empty bit strings")
    r = "".join(str(int(b)) for b in reader)
    s = "".join(str(int(b)) for b in s_copy)
    lcp = len(os.path.commonprefix([r, s]))
    if lcp == min(len(r), len(s)):
        if len(r) == len(s):
            return Comparison(Ordering.EQUAL, lcp)
        return Comparison(Ordering.GREATER if len(s) < len(r) else Ordering.LESS, lcp)
    return Comparison(Ordering.LESS if s[lcp] == "1" else Ordering.GREATER, lcp + 1)


def _simple_cycles(adj: dict[int, set[int]], max_len: int) -> Iterator[list[int]]:
    for start in sorted(adj):
        stack = [(start, [start])]
        while stack:
            node, path = stack.pop()
            for nxt in adj[node]:
                if nxt == start and len(path) >= 3:
                    yield path
                elif nxt > start and nxt not in path and len(path) < max_len:
                    stack.append((nxt, path + [nxt]))


def polygon_winding(center: np.ndarray, polygon: np.ndarray) -> int:
    """Winding number of the closed polygon around *center*."""
    vec = polygon - center
    nxt = np.roll(vec, -1, axis=0)
    cross = vec[:, 0] * nxt[:, 1] - vec[:, 1] * nxt[:, 0]
    dot = np.einsum("ij,ij->i", vec, nxt)
    return int(round(np.arctan2(cross, dot).sum() / (2 * math.pi)))


def cycle_enumeration_label(g: CommGraph, v: int, max_len: int = 8) -> bool:
    """Boundary iff no simple link-graph cycle of length <= max_len winds +-1 around v."""
    nbrs = [int(u) for u in g.neighbors(v)]
    members = set(nbrs)
    adj = {u: {int(w) for w in g.neighbors(u) if int(w) in members} for u in nbrs}
    center = g.coords[v]
    for cycle in _simple_cycles(adj, max_len):
        if abs(polygon_winding(center, g.coords[cycle])) == 1:
            return False
    return True
