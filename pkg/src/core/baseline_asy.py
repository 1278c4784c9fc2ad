"""Simplified CSEC-averaging gathering baseline.

Every round each robot computes the smallest enclosing circle of its
closed unit neighbourhood and steps toward its centre. The step is capped
by ``step_cap`` and by the discs of radius 1/2 around the midpoints to each
current neighbour; two neighbours that both stay inside their shared
midpoint disc remain within distance 1, so no edge is ever lost.

A round costs the sum of closed-neighbourhood sizes: the work each robot
spends looking at its neighbours.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from core.errors import GraphDisconnectedError
from core.geometry import DiscConfig, PointsLike, as_array, sample_disc_array, smallest_enclosing_circle
from core.rgg import comm_graph_from_points, is_connected
from core.rng import SEC, make_rng

logger = logging.getLogger(__name__)

DEFAULT_STEP_CAP = 0.25
DEFAULT_TOL_FACTOR = 1e-3
DEFAULT_MAX_ROUNDS = 20000


@dataclass(frozen=True)
class AsyRound:
    positions: np.ndarray
    cost: int
    connected: bool


@dataclass(frozen=True)
class BaselineReport:
    rounds: int
    comp_cost: float
    converged: bool
    final_spread: float
    connectivity_preserved: bool = True
    spread_history: tuple = ()


def _hull_points(pts: np.ndarray) -> np.ndarray:
    if len(pts) < 4:
        return pts
    try:
        return pts[ConvexHull(pts).vertices]
    except (QhullError, ValueError):
        # Degenerate (collinear or coincident) sets: fall back to all points.
        return pts


def enclosing_center(pts: np.ndarray, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    c = smallest_enclosing_circle(_hull_points(pts), rng)
    return np.array([c.center.x, c.center.y])


def spread(positions: PointsLike) -> float:
    """Radius of the smallest circle enclosing the whole swarm (0 when empty)."""
    pts = as_array(positions)
    if len(pts) == 0:
        return 0.0
    return smallest_enclosing_circle(_hull_points(pts), make_rng(0, SEC)).radius


def max_step(p: np.ndarray, direction: np.ndarray, partners: np.ndarray) -> float:
    """Largest s with |p + s*direction - (p + q)/2| <= 1/2 for every partner q.

    *direction* is a unit vector.
    """
    if len(partners) == 0:
        return np.inf
    w = (p - partners) / 2.0
    uw = w @ direction
    disc = np.maximum(uw * uw - np.einsum("ij,ij->i", w, w) + 0.25, 0.0)
    return float(np.min(-uw + np.sqrt(disc)))


def asy_round(positions: PointsLike, step_cap: float = DEFAULT_STEP_CAP) -> AsyRound:
    """One synchronous round; every robot moves from the old positions."""
    pts = as_array(positions)
    if len(pts) == 0:
        raise ValueError("asy_round needs at least one robot")
    g = comm_graph_from_points(pts, include_coincident=True)
    rng = make_rng(0, SEC)
    new = pts.copy()
    cost = 0
    for i in range(len(pts)):
        nbrs = g.neighbors(i)
        cost += len(nbrs) + 1
        if len(nbrs) == 0:
            continue
        closed = np.vstack([pts[i][None, :], pts[nbrs]])
        toward = enclosing_center(closed, rng) - pts[i]
        dist = float(np.hypot(*toward))
        if dist <= 1e-15:
            continue
        u = toward / dist
        step = max(0.0, min(step_cap, dist, max_step(pts[i], u, pts[nbrs])))
        new[i] = pts[i] + step * u
    return AsyRound(positions=new, cost=cost, connected=is_connected(g))


def run_asy(
    cfg: DiscConfig,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    tol: Optional[float] = None,
    step_cap: float = DEFAULT_STEP_CAP,
) -> BaselineReport:
    """Iterate rounds until the swarm's enclosing radius drops below *tol*.

    Args:
        cfg: sampled start configuration.
        max_rounds: give up (converged=False) after this many rounds.
        tol: spread threshold; defaults to 1e-3 * n.
        step_cap: per-round movement cap.

    Raises:
        GraphDisconnectedError: the start configuration is disconnected.
    """
    if tol is None:
        tol = DEFAULT_TOL_FACTOR * cfg.n
    pts = sample_disc_array(cfg)
    if not is_connected(comm_graph_from_points(pts, include_coincident=True)):
        raise GraphDisconnectedError()

    rounds = 0
    comp_cost = 0
    preserved = True
    current = spread(pts)
    history = [current]
    while current >= tol and rounds < max_rounds:
        step = asy_round(pts, step_cap)
        preserved &= step.connected
        pts = step.positions
        rounds += 1
        comp_cost += step.cost
        current = spread(pts)
        history.append(current)
        if rounds % 500 == 0:
            logger.debug("asy n=%s round %d spread %.4f", cfg.n, rounds, current)
    # Connectivity of the final configuration (the loop checks each round's input).
    if rounds:
        preserved &= is_connected(comm_graph_from_points(pts, include_coincident=True))
    return BaselineReport(
        rounds=rounds,
        comp_cost=float(comp_cost),
        converged=current < tol,
        final_spread=current,
        connectivity_preserved=bool(preserved),
        spread_history=tuple(history),
    )
