"""Planar primitives, uniform disc sampling, quadrant scans and the
smallest enclosing circle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Optional, Sequence, Union

import numpy as np

from core.errors import EmptyPointSetError
from core.rng import SAMPLING, SEC, make_rng

if TYPE_CHECKING:
    from core.density_law import DensityLaw

HALF_PI = math.pi / 2
TWO_PI = 2.0 * math.pi
# Closed comparisons (distance <= 1, containment) use this absolute slack.
ABS_TOL = 1e-9

PointsLike = Union[Sequence["Point2"], np.ndarray]


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates ({self.x}, {self.y})")

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Circle:
    center: Point2
    radius: float

    def __post_init__(self):
        if not self.radius >= 0.0:
            raise ValueError(f"negative radius {self.radius}")

    def contains(self, p: Point2, tol: float = ABS_TOL) -> bool:
        return self.center.dist(p) <= self.radius + tol


@dataclass(frozen=True)
class DiscConfig:
    """Disc of radius ``n`` holding ``f`` uniform points drawn from ``seed``."""
    n: float
    f: int
    seed: int

    def __post_init__(self):
        if not (math.isfinite(self.n) and self.n > 0):
            raise ValueError(f"disc radius must be positive, got {self.n}")
        if isinstance(self.f, bool) or not isinstance(self.f, (int, np.integer)) or self.f < 0:
            raise ValueError(f"point count must be a non-negative integer, got {self.f!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")

    @property
    def density(self) -> float:
        """Average density f / (pi n^2)."""
        return self.f / (math.pi * self.n * self.n)

    @classmethod
    def from_law(cls, n: float, law: "DensityLaw", seed: int) -> "DiscConfig":
        return cls(n=float(n), f=law.point_count(n), seed=int(seed))


def as_array(points: PointsLike) -> np.ndarray:
    """Coerce a list of Point2 (or an (k, 2) array) into a float (k, 2) array."""
    if isinstance(points, np.ndarray):
        return np.asarray(points, dtype=float).reshape(-1, 2)
    return np.array([(p.x, p.y) for p in points], dtype=float).reshape(-1, 2)


def to_points(arr: np.ndarray) -> list[Point2]:
    return [Point2(float(x), float(y)) for x, y in arr]


def sample_disc_array(cfg: DiscConfig) -> np.ndarray:
    """Uniform points in the open disc ||p|| < n, by rejection from the square.

    Acceptance rate is pi/4, so batches are oversized by about 1.3.
    """
    rng = make_rng(cfg.seed, SAMPLING)
    out = np.empty((cfg.f, 2), dtype=float)
    filled = 0
    n = float(cfg.n)
    while filled < cfg.f:
        remaining = cfg.f - filled
        batch = rng.uniform(-n, n, size=(math.ceil(remaining * 1.3) + 16, 2))
        keep = batch[np.einsum("ij,ij->i", batch, batch) < n * n][:remaining]
        out[filled:filled + len(keep)] = keep
        filled += len(keep)
    return out


def sample_uniform_disc(cfg: DiscConfig) -> list[Point2]:
    return to_points(sample_disc_array(cfg))


# ---------------------------------------------------------------------------
# Quadrant scans
# ---------------------------------------------------------------------------

def quadrant_index(dx: np.ndarray, dy: np.ndarray, orientation: float) -> np.ndarray:
    """Quadrant 0..3 of offsets (dx, dy), counter-clockwise from *orientation*."""
    rel = np.mod(np.arctan2(dy, dx) - orientation, TWO_PI)
    return np.minimum((rel // HALF_PI).astype(np.int64), 3)


def quadrant_occupancy(
    center: Point2,
    orientation: float,
    radius: float,
    others: Iterable[Point2],
) -> tuple[bool, bool, bool, bool]:
    """Which quadrants of the open *radius*-ball around *center* hold a point.

    Quadrant q covers angles [orientation + q*pi/2, orientation + (q+1)*pi/2).
    """
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    pts = as_array(list(others))
    flags = [False, False, False, False]
    if len(pts) == 0:
        return tuple(flags)  # type: ignore[return-value]
    dx = pts[:, 0] - center.x
    dy = pts[:, 1] - center.y
    inside = np.hypot(dx, dy) < radius
    for q in np.unique(quadrant_index(dx[inside], dy[inside], orientation)):
        flags[int(q)] = True
    return tuple(flags)  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Smallest enclosing circle (randomized incremental, expected linear time)
# ---------------------------------------------------------------------------

_Circ = tuple  # (cx, cy, r)


def _in_circle(p, c: Optional[_Circ]) -> bool:
    return c is not None and math.hypot(p[0] - c[0], p[1] - c[1]) <= c[2] * (1 + 1e-14) + 1e-12


def _cross(px, py, qx, qy, rx, ry) -> float:
    return (qx - px) * (ry - py) - (qy - py) * (rx - px)


def _diameter(a, b) -> _Circ:
    cx = (a[0] + b[0]) / 2
    cy = (a[1] + b[1]) / 2
    return (cx, cy, max(math.hypot(cx - a[0], cy - a[1]), math.hypot(cx - b[0], cy - b[1])))


def _circumcircle(a, b, c) -> Optional[_Circ]:
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
    if d == 0.0:
        return None
    x = ox + ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    y = oy + ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    r = max(math.hypot(x - a[0], y - a[1]), math.hypot(x - b[0], y - b[1]), math.hypot(x - c[0], y - c[1]))
    return (x, y, r)


def _circle_two(pts, p, q) -> _Circ:
    circ = _diameter(p, q)
    left: Optional[_Circ] = None
    right: Optional[_Circ] = None
    px, py = p
    qx, qy = q
    for r in pts:
        if _in_circle(r, circ):
            continue
        cross = _cross(px, py, qx, qy, r[0], r[1])
        c = _circumcircle(p, q, r)
        if c is None:
            continue
        if cross > 0.0 and (left is None or _cross(px, py, qx, qy, c[0], c[1]) > _cross(px, py, qx, qy, left[0], left[1])):
            left = c
        elif cross < 0.0 and (right is None or _cross(px, py, qx, qy, c[0], c[1]) < _cross(px, py, qx, qy, right[0], right[1])):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right  # type: ignore[return-value]
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _circle_one(pts, p) -> _Circ:
    c: _Circ = (p[0], p[1], 0.0)
    for i, q in enumerate(pts):
        if not _in_circle(q, c):
            c = _diameter(p, q) if c[2] == 0.0 else _circle_two(pts[:i + 1], p, q)
    return c


def smallest_enclosing_circle(
    pts: PointsLike,
    rng: Optional[np.random.Generator] = None,
) -> Circle:
    """Minimum-radius circle containing every point of *pts*.

    Args:
        pts: Point2 sequence or (k, 2) array; must be non-empty.
        rng: shuffles the insertion order; a fixed stream is used when omitted
            so results are reproducible.

    Raises:
        EmptyPointSetError: *pts* is empty.
    """
    arr = as_array(pts)
    if len(arr) == 0:
        raise EmptyPointSetError()
    if rng is None:
        rng = make_rng(0, SEC)
    order = rng.permutation(len(arr))
    shuffled = [(float(arr[i, 0]), float(arr[i, 1])) for i in order]
    c: Optional[_Circ] = None
    for i, p in enumerate(shuffled):
        if c is None or not _in_circle(p, c):
            c = _circle_one(shuffled[:i + 1], p)
    assert c is not None
    return Circle(Point2(c[0], c[1]), c[2])
