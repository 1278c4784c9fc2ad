"""Linear-time rendezvous protocol on the disc.

Step 1A colours every agent from local quadrant scans, Step 1B has each
blue chief draw one random bit per green neighbour and park two copies of
the string on yellow neighbours, Step 1C walks every surviving chief's
mobile copy around the chiefs in clockwise angular order comparing it
with their stationary copies, and Step 2 floods red from the single
leader and gathers everyone at its position.

Each phase is charged abstract time from a :class:`CostModel`; phases run
concurrently across agents, so a phase costs the maximum over agents.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Optional

import numpy as np

from core.bit_strings import Ordering, compare_strings
from core.errors import GraphDisconnectedError, NoCandidatesError, SimulationError
from core.geometry import ABS_TOL, DiscConfig, Point2, quadrant_index
from core.rgg import CommGraph, bfs_depths, build_comm_graph, is_connected
from core.rng import BITS, STEP2, make_rng

logger = logging.getLogger(__name__)

STORAGE_MODES = ("strings", "unlimited")
TRAVEL_MODES = ("straight", "tree")
REASON_COLLISION = "leader collision"


class Color(IntEnum):
    WHITE = 0
    BLUE = 1
    GREEN = 2
    YELLOW = 3
    PURPLE = 4
    BROWN = 5        # S-headman
    ORANGE = 6       # M-headman
    TAILMAN_S = 7
    TAILMAN_M = 8
    MIDDLEMAN = 9
    PINK = 10
    RED = 11

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    Color.WHITE: "white",
    Color.BLUE: "blue",
    Color.GREEN: "green",
    Color.YELLOW: "yellow",
    Color.PURPLE: "purple",
    Color.BROWN: "brown",
    Color.ORANGE: "orange",
    Color.TAILMAN_S: "tailman-S",
    Color.TAILMAN_M: "tailman-M",
    Color.MIDDLEMAN: "middleman",
    Color.PINK: "pink",
    Color.RED: "red",
}

STRING_COLORS = frozenset({
    Color.PURPLE, Color.BROWN, Color.ORANGE, Color.TAILMAN_S, Color.TAILMAN_M, Color.MIDDLEMAN,
})


class Copy(IntEnum):
    S = 0
    M = 1


@dataclass(frozen=True)
class ProtocolParams:
    K: int = 16
    r_blue: float = 0.5
    r_green: float = 0.1
    r_yellow: float = 0.5
    min_bits: int = 4
    storage_per_bit: int = 2
    storage_mode: str = "strings"
    travel_mode: str = "straight"

    def __post_init__(self):
        if self.K < 4:
            raise ValueError(f"K must be >= 4, got {self.K}")
        if not 0 < self.r_blue <= 1:
            raise ValueError(f"r_blue must lie in (0, 1], got {self.r_blue}")
        if not 0 < self.r_green < self.r_yellow <= 1:
            raise ValueError(f"need 0 < r_green < r_yellow <= 1, got {self.r_green}, {self.r_yellow}")
        if self.min_bits < 1:
            raise ValueError(f"min_bits must be >= 1, got {self.min_bits}")
        if self.storage_per_bit != 2:
            raise ValueError("each bit is stored on exactly 2 agents (S and M copy)")
        if self.storage_mode not in STORAGE_MODES:
            raise ValueError(f"unknown storage mode {self.storage_mode!r}")
        if self.travel_mode not in TRAVEL_MODES:
            raise ValueError(f"unknown travel mode {self.travel_mode!r}")


@dataclass(frozen=True)
class CostModel:
    scan_rate: float = 1.0
    bit_op: float = 1.0
    signal_op: float = 1.0
    relay_hop: float = 1.0
    move_speed: float = 1.0

    def __post_init__(self):
        for name in ("scan_rate", "bit_op", "signal_op", "relay_hop"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive, got {value}")
        if self.move_speed != 1.0:
            raise ValueError("move_speed is fixed at 1")


@dataclass(frozen=True)
class AgentState:
    id: int
    pos: Point2
    color: Color
    chief: Optional[int] = None
    copy: Optional[Copy] = None
    string_index: Optional[int] = None
    bit: Optional[int] = None


@dataclass
class SwarmState:
    """Per-agent arrays; -1 marks an unset optional field."""
    coords: np.ndarray
    color: np.ndarray
    chief: np.ndarray
    copy: np.ndarray
    string_index: np.ndarray
    bit: np.ndarray

    @classmethod
    def fresh(cls, coords: np.ndarray) -> "SwarmState":
        f = len(coords)
        return cls(
            coords=coords,
            color=np.full(f, Color.WHITE, dtype=np.int8),
            chief=np.full(f, -1, dtype=np.int64),
            copy=np.full(f, -1, dtype=np.int8),
            string_index=np.full(f, -1, dtype=np.int64),
            bit=np.full(f, -1, dtype=np.int8),
        )

    def agent(self, i: int) -> AgentState:
        def opt(v):
            return None if v < 0 else int(v)
        cp = opt(self.copy[i])
        return AgentState(
            id=int(i),
            pos=Point2(float(self.coords[i, 0]), float(self.coords[i, 1])),
            color=Color(int(self.color[i])),
            chief=opt(self.chief[i]),
            copy=None if cp is None else Copy(cp),
            string_index=opt(self.string_index[i]),
            bit=opt(self.bit[i]),
        )

    def count(self, color: Color) -> int:
        return int(np.count_nonzero(self.color == color))

    def release(self, ids: np.ndarray) -> None:
        """Return agents to white with no string membership."""
        self.color[ids] = Color.WHITE
        self.chief[ids] = -1
        self.copy[ids] = -1
        self.string_index[ids] = -1
        self.bit[ids] = -1


@dataclass(frozen=True)
class ChiefStrings:
    """A chief's number in reading order; members are listed by string index."""
    chief: int
    bits: tuple
    s_members: tuple = ()
    m_members: tuple = ()


@dataclass(frozen=True)
class ClassifyResult:
    colors: np.ndarray
    t_1A: float

    @property
    def blue_ids(self) -> np.ndarray:
        return np.flatnonzero(self.colors == Color.BLUE)


@dataclass(frozen=True)
class StringBuildResult:
    registry: dict
    pink_ids: tuple
    t_1B: float


@dataclass(frozen=True)
class WalkRecord:
    chief: int
    stop_chief: int
    outcome: Ordering
    bits_read: int
    path_length: float
    elapsed: float


@dataclass(frozen=True)
class WalkResult:
    leader_ids: tuple
    walks: dict
    t_1C: float

    @property
    def dropped_ids(self) -> tuple:
        return tuple(c for c, w in self.walks.items() if w.outcome is Ordering.LESS)


@dataclass(frozen=True)
class MergeResult:
    t_wave: float
    t_travel: float
    depth: int
    final_coords: np.ndarray


@dataclass(frozen=True)
class MergeReport:
    leader_ids: tuple
    leader_count: int
    success: bool
    t_1A: float
    t_1B: float
    t_1C: float
    t_wave: float
    t_travel: float
    t_total: float
    pink_count: int
    blue_count: int
    reason: Optional[str] = None


@dataclass
class RendezvousRun:
    cfg: DiscConfig
    params: ProtocolParams
    report: MergeReport
    graph: CommGraph
    state: SwarmState
    registry: dict = field(default_factory=dict)
    walk: Optional[WalkResult] = None
    final_coords: Optional[np.ndarray] = None


# ---------------------------------------------------------------------------
# Step 1A
# ---------------------------------------------------------------------------

def step1a_classify(g: CommGraph, params: ProtocolParams, cost: CostModel = CostModel()) -> ClassifyResult:
    """Blue iff some quadrant of the open r_blue-ball is empty at one of K orientations.

    Orientations are j*pi/K for j < K (half a turn). Non-blue agents turn
    green when a blue neighbour lies within r_green, yellow when the
    nearest blue is farther than r_green but closer than r_yellow, and
    stay white otherwise.
    """
    f = g.size
    src, dst = g.edge_sources, g.indices
    diff = g.coords[dst] - g.coords[src]
    dist = np.hypot(diff[:, 0], diff[:, 1])

    close = dist < params.r_blue
    cs, dx, dy = src[close], diff[close, 0], diff[close, 1]
    blue = np.zeros(f, dtype=bool)
    for j in range(params.K):
        occupied = np.zeros((f, 4), dtype=bool)
        occupied[cs, quadrant_index(dx, dy, j * math.pi / params.K)] = True
        blue |= ~occupied.all(axis=1)

    nearest = np.full(f, np.inf)
    to_blue = blue[dst] & ~blue[src]
    np.minimum.at(nearest, src[to_blue], dist[to_blue])

    colors = np.full(f, Color.WHITE, dtype=np.int8)
    colors[blue] = Color.BLUE
    green = ~blue & (nearest <= params.r_green + ABS_TOL)
    yellow = ~blue & ~green & (nearest < params.r_yellow)
    colors[green] = Color.GREEN
    colors[yellow] = Color.YELLOW

    # K quadrant scans, the green/yellow decision and one colour change.
    t_1A = (params.K + 2) * cost.signal_op if f else 0.0
    logger.debug("step 1A: %d blue, %d green, %d yellow of %d",
                 int(blue.sum()), int(green.sum()), int(yellow.sum()), f)
    return ClassifyResult(colors=colors, t_1A=t_1A)


# ---------------------------------------------------------------------------
# Step 1B
# ---------------------------------------------------------------------------

def _assign_string(state: SwarmState, chief: int, members: np.ndarray, copy: Copy, bits: np.ndarray) -> None:
    m = len(members)
    head, tail = (Color.BROWN, Color.TAILMAN_S) if copy is Copy.S else (Color.ORANGE, Color.TAILMAN_M)
    roles = np.full(m, Color.MIDDLEMAN, dtype=np.int8)
    if m > 1:
        roles[-1] = tail
    roles[0] = head
    state.color[members] = roles
    state.chief[members] = chief
    state.copy[members] = copy
    state.string_index[members] = np.arange(m)
    state.bit[members] = bits


def step1b_build_strings(
    state: SwarmState,
    g: CommGraph,
    params: ProtocolParams,
    cost: CostModel,
    seed: int,
) -> StringBuildResult:
    """Chiefs (blue agents) build their S and M strings in ascending id order.

    A chief with m green neighbours draws m bits from its own stream and,
    per bit, claims the two nearest unclaimed yellow neighbours (S copy
    first). The pair claimed last becomes the headmen, so string index 0
    holds the most recent bit and the reading order is the reverse of the
    draw order. Fewer than ``min_bits`` greens, or running out of yellow
    neighbours, turns the chief pink and sends any claimed members back
    to white.
    """
    unlimited = params.storage_mode == "unlimited"
    per_bit = params.storage_per_bit * (cost.bit_op + cost.signal_op)
    registry: dict[int, ChiefStrings] = {}
    pinks: list[int] = []
    t_1B = 0.0

    for chief in np.flatnonzero(state.color == Color.BLUE):
        c = int(chief)
        nbrs = g.neighbors(c)
        m = len(nbrs) if unlimited else int(np.count_nonzero(state.color[nbrs] == Color.GREEN))
        scan_time = m / cost.scan_rate
        if m < params.min_bits:
            state.color[c] = Color.PINK
            pinks.append(c)
            t_1B = max(t_1B, scan_time)
            continue

        draws = make_rng(seed, BITS, c).integers(0, 2, size=m, dtype=np.int8)
        read_bits = draws[::-1]
        if unlimited:
            registry[c] = ChiefStrings(chief=c, bits=tuple(int(b) for b in read_bits))
            t_1B = max(t_1B, scan_time + m * cost.bit_op)
            continue

        yellow = nbrs[state.color[nbrs] == Color.YELLOW]
        if len(yellow) < 2 * m:
            # Every available yellow was claimed before storage ran out.
            state.release(yellow)
            state.color[c] = Color.PINK
            pinks.append(c)
            generated = min(m, len(yellow) // 2 + 1)
            t_1B = max(t_1B, scan_time + generated * per_bit)
            continue

        d = np.hypot(*(g.coords[yellow] - g.coords[c]).T)
        claimed = yellow[np.lexsort((yellow, d))][:2 * m]
        s_members = claimed[0::2][::-1]
        m_members = claimed[1::2][::-1]
        _assign_string(state, c, s_members, Copy.S, read_bits)
        _assign_string(state, c, m_members, Copy.M, read_bits)
        registry[c] = ChiefStrings(
            chief=c,
            bits=tuple(int(b) for b in read_bits),
            s_members=tuple(int(i) for i in s_members),
            m_members=tuple(int(i) for i in m_members),
        )
        t_1B = max(t_1B, scan_time + m * per_bit)

    logger.debug("step 1B: %d strings built, %d chiefs pink", len(registry), len(pinks))
    return StringBuildResult(registry=registry, pink_ids=tuple(pinks), t_1B=t_1B)


# ---------------------------------------------------------------------------
# Step 1C
# ---------------------------------------------------------------------------

def clockwise_order(coords: np.ndarray, ids: np.ndarray) -> np.ndarray:
    """*ids* sorted by decreasing polar angle about the disc centre (ties by id)."""
    angles = np.arctan2(coords[ids, 1], coords[ids, 0])
    return ids[np.lexsort((ids, -angles))]


def step1c_walk(state: SwarmState, registry: dict, cost: CostModel) -> WalkResult:
    """Walk every surviving chief's M-string clockwise around all chiefs.

    At each blue chief on the way the walker compares its own number with
    that chief's S-string: LESS drops it out on the spot, EQUAL ends the
    walk with a leadership claim (normally back at its own chief), GREATER
    moves on. Pink chiefs are passed without reading.

    Raises:
        NoCandidatesError: no chief survived Step 1B.
    """
    if not registry:
        raise NoCandidatesError()
    chiefs = np.flatnonzero((state.color == Color.BLUE) | (state.color == Color.PINK))
    seq = clockwise_order(state.coords, chiefs)
    loop = len(seq)
    pos = state.coords[seq]
    chords = np.hypot(*(np.roll(pos, -1, axis=0) - pos).T)
    prefix = np.concatenate([[0.0], np.cumsum(chords)])
    survivors = np.flatnonzero(np.isin(seq, list(registry)))

    def path_between(a: int, b: int) -> float:
        if b > a:
            return float(prefix[b] - prefix[a])
        return float(prefix[loop] - prefix[a] + prefix[b])

    walks: dict[int, WalkRecord] = {}
    leaders: list[int] = []
    t_1C = 0.0
    for k, a in enumerate(survivors):
        own = registry[int(seq[a])].bits
        bits_read = 0
        visit = np.concatenate([survivors[k + 1:], survivors[:k + 1]])
        for b in visit:
            cmp = compare_strings(own, registry[int(seq[b])].bits)
            bits_read += cmp.bits_read
            if cmp.ordering is not Ordering.GREATER:
                break
        path = path_between(int(a), int(b))
        elapsed = path / cost.move_speed + bits_read * cost.bit_op
        record = WalkRecord(
            chief=int(seq[a]),
            stop_chief=int(seq[b]),
            outcome=cmp.ordering,
            bits_read=bits_read,
            path_length=path,
            elapsed=elapsed,
        )
        walks[record.chief] = record
        if cmp.ordering is Ordering.EQUAL:
            leaders.append(record.chief)
        t_1C = max(t_1C, elapsed)

    leaders.sort()
    logger.debug("step 1C: %d walkers, %d leader claims", len(walks), len(leaders))
    return WalkResult(leader_ids=tuple(leaders), walks=walks, t_1C=t_1C)


# ---------------------------------------------------------------------------
# Step 2
# ---------------------------------------------------------------------------

def _tree_chain_lengths(g: CommGraph, depth: np.ndarray, leader: int, seed: int) -> np.ndarray:
    """Length of each agent's follow chain when it picks a random red parent."""
    src, dst = g.edge_sources, g.indices
    # src follows dst when dst is one hop closer to the leader.
    candidate = depth[dst] == depth[src] - 1
    child, parent = src[candidate], dst[candidate]
    keys = make_rng(seed, STEP2).random(len(child))
    order = np.lexsort((keys, child))
    child, parent = child[order], parent[order]
    last = np.flatnonzero(np.append(child[1:] != child[:-1], True))
    chosen = np.full(g.size, -1, dtype=np.int64)
    chosen[child[last]] = parent[last]

    length = np.zeros(g.size)
    by_depth = np.argsort(depth, kind="stable")
    bounds = np.searchsorted(depth[by_depth], np.arange(1, int(depth.max()) + 2))
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        level = by_depth[lo:hi]
        up = chosen[level]
        length[level] = length[up] + np.hypot(*(g.coords[level] - g.coords[up]).T)
    length[leader] = 0.0
    return length


def step2_merge(
    g: CommGraph,
    leader: int,
    cost: CostModel,
    travel_mode: str = "straight",
    seed: int = 0,
) -> MergeResult:
    """Red wave by BFS from *leader*, then everyone gathers at the leader.

    Raises:
        GraphDisconnectedError: some agent never hears the wave.
    """
    depth = bfs_depths(g, leader)
    if np.any(depth < 0):
        raise GraphDisconnectedError()
    max_depth = int(depth.max())
    t_wave = max_depth * cost.relay_hop
    if travel_mode == "tree":
        travel = float(_tree_chain_lengths(g, depth, leader, seed).max())
    else:
        travel = float(np.hypot(*(g.coords - g.coords[leader]).T).max())
    final = np.repeat(g.coords[leader][None, :], g.size, axis=0)
    return MergeResult(t_wave=t_wave, t_travel=travel / cost.move_speed, depth=max_depth, final_coords=final)


# ---------------------------------------------------------------------------
# Full run
# ---------------------------------------------------------------------------

def simulate(cfg: DiscConfig, params: ProtocolParams = ProtocolParams(), cost: CostModel = CostModel()) -> RendezvousRun:
    """Run all steps on a fresh configuration and keep the intermediate state.

    Failures inside the model are reported, never raised: the reason is
    "graph disconnected", then "no candidates", then "leader collision",
    in that order of precedence.
    """
    g = build_comm_graph(cfg)
    connected = is_connected(g)
    state = SwarmState.fresh(g.coords.copy())

    classified = step1a_classify(g, params, cost)
    state.color[:] = classified.colors
    blue_count = state.count(Color.BLUE)
    built = step1b_build_strings(state, g, params, cost, cfg.seed)

    reason: Optional[str] = None if connected else GraphDisconnectedError.reason
    walk: Optional[WalkResult] = None
    t_1C = 0.0
    try:
        walk = step1c_walk(state, built.registry, cost)
        t_1C = walk.t_1C
    except SimulationError as e:
        reason = reason or e.reason

    leaders = walk.leader_ids if walk else ()
    if walk and len(leaders) != 1:
        reason = reason or REASON_COLLISION

    t_wave = t_travel = 0.0
    final_coords = None
    if reason is None:
        leader = leaders[0]
        state.color[leader] = Color.RED
        try:
            merged = step2_merge(g, leader, cost, params.travel_mode, cfg.seed)
            t_wave, t_travel, final_coords = merged.t_wave, merged.t_travel, merged.final_coords
        except SimulationError as e:
            reason = e.reason

    t_total = classified.t_1A + built.t_1B + t_1C + t_wave + t_travel
    report = MergeReport(
        leader_ids=tuple(leaders),
        leader_count=len(leaders),
        success=reason is None,
        t_1A=classified.t_1A,
        t_1B=built.t_1B,
        t_1C=t_1C,
        t_wave=t_wave,
        t_travel=t_travel,
        t_total=t_total,
        pink_count=state.count(Color.PINK),
        blue_count=blue_count,
        reason=reason,
    )
    logger.debug("run n=%s f=%d seed=%d: success=%s reason=%s t_total=%.3f",
                 cfg.n, cfg.f, cfg.seed, report.success, reason, t_total)
    return RendezvousRun(
        cfg=cfg, params=params, report=report, graph=g, state=state,
        registry=built.registry, walk=walk, final_coords=final_coords,
    )


def run_rendezvous(cfg: DiscConfig, params: ProtocolParams = ProtocolParams(), cost: CostModel = CostModel()) -> MergeReport:
    return simulate(cfg, params, cost).report
