"""Experiment orchestration: bit-reading simulations, scaling sweeps,
boundary and baseline experiments, and the lemma check suite."""

from __future__ import annotations

import itertools
import math
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from core.baseline_asy import DEFAULT_MAX_ROUNDS, DEFAULT_STEP_CAP, DEFAULT_TOL_FACTOR, run_asy
from core.bit_strings import compare_strings
from core.boundary import boundary_labels, boundary_stats, exact_boundary_label
from core.density_law import DEFAULT_LAW, DensityLaw, parse_density_law
from core.election import global_visibility_election
from core.errors import GraphDisconnectedError
from core.geometry import DiscConfig, sample_disc_array, smallest_enclosing_circle
from core.oracles import brute_force_edges, brute_force_sec, cycle_enumeration_label, naive_compare
from core.parallel import run_ordered
from core.protocol import Color, CostModel, ProtocolParams, RendezvousRun, simulate, step1a_classify
from core.rgg import (
    build_comm_graph, comm_graph_from_points, degree_window, graph_diameter, is_connected,
)
from core.rng import SAMPLING, STRINGS, make_rng
from utils.constants import SCALING_FIELDS
from utils.duration_format import format_duration
from utils.logger import logger

LawLike = Union[str, DensityLaw]
RIM_BAND = 3.0 / 5.0


def _law(law: LawLike) -> DensityLaw:
    return law if isinstance(law, DensityLaw) else parse_density_law(law)


def clean_n(n: float) -> Union[int, float]:
    """Integral radii print as integers in tables."""
    value = float(n)
    return int(value) if value.is_integer() else value


def _check_grid(n_grid: Sequence[float], trials: int) -> list[float]:
    grid = [float(n) for n in n_grid]
    if not grid:
        raise ValueError("n grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError(f"n grid must be strictly increasing, got {list(n_grid)}")
    if any(n <= 0 for n in grid):
        raise ValueError("disc radii must be positive")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    return grid


def fit_loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> Optional[float]:
    """Least-squares slope of log y on log x; None with fewer than two usable points."""
    pairs = [(float(x), float(y)) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if len({x for x, _ in pairs}) < 2:
        return None
    lx = np.log([x for x, _ in pairs])
    ly = np.log([y for _, y in pairs])
    return float(np.polyfit(lx, ly, 1)[0])


# ---------------------------------------------------------------------------
# Bit reading
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StringExperimentResult:
    n_strings: int
    k: int
    max_total_bits: int
    mean_total_bits: float
    per_pair_mean: float
    seed: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


def default_string_length(n_strings: int) -> int:
    return math.ceil(math.log2(n_strings)) + 32


def total_bits_read(strings: np.ndarray) -> np.ndarray:
    """X_i: bits read by string i over all other strings (equal lengths).

    Bit t of a pair is read iff the first t-1 bits agree, so X_i adds, for
    each t, the number of other strings sharing i's first t-1 bits.
    """
    count, k = strings.shape
    totals = np.zeros(count, dtype=np.int64)
    group = np.zeros(count, dtype=np.int64)
    for t in range(k):
        _, group, sizes = np.unique(group, return_inverse=True, return_counts=True)
        group = group.reshape(-1)
        shared = sizes[group] - 1
        if not shared.any():
            break
        totals += shared
        group = group * 2 + strings[:, t]
    return totals


def string_read_experiment(
    n_strings: int,
    k: Optional[int] = None,
    seed: int = 0,
    strings: Optional[np.ndarray] = None,
) -> StringExperimentResult:
    """Draw *n_strings* uniform k-bit strings (or use *strings*) and count reads.

    Args:
        n_strings: number of strings, at least 2.
        k: string length; defaults to ceil(log2 n_strings) + 32.
        seed: run seed for the string stream.
        strings: optional (n_strings, k) 0/1 array used instead of drawing.
    """
    if strings is not None:
        strings = np.asarray(strings, dtype=np.int64)
        if strings.ndim != 2:
            raise ValueError("strings must be a 2-D 0/1 array")
        n_strings, k = strings.shape
    if n_strings < 2:
        raise ValueError("need at least two strings")
    if k is None:
        k = default_string_length(n_strings)
    if k < 1:
        raise ValueError("k must be >= 1")
    if strings is None:
        strings = make_rng(seed, STRINGS).integers(0, 2, size=(n_strings, k), dtype=np.int64)
    totals = total_bits_read(strings)
    return StringExperimentResult(
        n_strings=int(n_strings),
        k=int(k),
        max_total_bits=int(totals.max()),
        mean_total_bits=float(totals.mean()),
        per_pair_mean=float(totals.sum() / (n_strings * (n_strings - 1))),
        seed=int(seed),
    )


def _string_job(args: tuple) -> StringExperimentResult:
    n_strings, k, seed = args
    return string_read_experiment(n_strings, k, seed)


def strings_experiment(n_strings: int, k: Optional[int], seed: int, trials: int, jobs: int = 1) -> list[StringExperimentResult]:
    return run_ordered(_string_job, [(n_strings, k, seed + i) for i in range(trials)], jobs)


# ---------------------------------------------------------------------------
# Scaling sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScalingRow:
    n: Union[int, float]
    f: int
    seed: int
    t_total: float
    t_1A: float
    t_1B: float
    t_1C: float
    t_wave: float
    t_travel: float
    success: bool
    leader_count: int
    blue_count: int
    pink_count: int
    boundary_count: int
    reason: Optional[str] = None

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in SCALING_FIELDS}


def row_from_run(run: RendezvousRun) -> ScalingRow:
    r = run.report
    return ScalingRow(
        n=clean_n(run.cfg.n),
        f=run.cfg.f,
        seed=run.cfg.seed,
        t_total=r.t_total,
        t_1A=r.t_1A,
        t_1B=r.t_1B,
        t_1C=r.t_1C,
        t_wave=r.t_wave,
        t_travel=r.t_travel,
        success=r.success,
        leader_count=r.leader_count,
        blue_count=r.blue_count,
        pink_count=r.pink_count,
        boundary_count=int(boundary_labels(run.graph).sum()),
        reason=r.reason,
    )


def _scaling_job(args: tuple) -> ScalingRow:
    cfg, params, cost = args
    return row_from_run(simulate(cfg, params, cost))


class ScalingTable:
    """Rows of a rendezvous sweep plus per-n aggregates"""

    def __init__(self):
        self.start_time: float = time.time()
        self.rows: list[ScalingRow] = []

    def add_row(self, row: ScalingRow) -> None:
        self.rows.append(row)

    def extend(self, rows: Iterable[ScalingRow]) -> None:
        self.rows.extend(rows)

    def n_values(self) -> list:
        return sorted({r.n for r in self.rows})

    def success_fraction(self, n) -> float:
        rows = [r for r in self.rows if r.n == n]
        return sum(r.success for r in rows) / len(rows) if rows else 0.0

    def median_t_total(self) -> dict:
        """Median t_total per n over successful rows; n without successes is omitted."""
        out = {}
        for n in self.n_values():
            ok = [r.t_total for r in self.rows if r.n == n and r.success]
            if ok:
                out[n] = statistics.median(ok)
        return out

    def slope(self) -> Optional[float]:
        medians = self.median_t_total()
        return fit_loglog_slope(list(medians), list(medians.values()))

    def failure_reasons(self) -> dict:
        reasons: dict[str, int] = {}
        for r in self.rows:
            if not r.success:
                reasons[r.reason or "unknown"] = reasons.get(r.reason or "unknown", 0) + 1
        return reasons

    def as_dicts(self) -> list[dict]:
        return [r.as_dict() for r in self.rows]

    def get_elapsed_time_str(self) -> str:
        return format_duration(time.time() - self.start_time)

    def summary_text(self) -> str:
        """
        Generate formatted summary text for the console.

        Returns:
            Multi-line summary string
        """
        medians = self.median_t_total()
        lines = [
            "━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━",
            "Rendezvous Sweep Complete",
            "━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━",
            "",
        ]
        for n in self.n_values():
            total = sum(1 for r in self.rows if r.n == n)
            med = medians.get(n)
            med_text = f"{med:.1f}" if med is not None else "-"
            lines.append(f"n={n:<6} success {self.success_fraction(n):6.1%} of {total:<4} median t_total {med_text}")
        slope = self.slope()
        reasons = self.failure_reasons()
        lines.extend([
            "",
            f"Slope:   {slope:.3f}" if slope is not None else "Slope:   undefined",
        ])
        if reasons:
            lines.append("Failures: " + ", ".join(f"{k} x{v}" for k, v in sorted(reasons.items())))
        lines.extend([
            f"Time:    {self.get_elapsed_time_str()}",
            "",
            "━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━",
        ])
        return "\n".join(lines)


@dataclass(frozen=True)
class ScalingResult:
    table: ScalingTable
    slope: Optional[float]


def scaling_experiment(
    n_grid: Sequence[float],
    density_law: LawLike = DEFAULT_LAW,
    trials: int = 1,
    params: ProtocolParams = ProtocolParams(),
    cost: CostModel = CostModel(),
    seed: int = 42,
    jobs: int = 1,
) -> ScalingResult:
    """Run the protocol for every (n, seed) and fit the log-log slope of
    median t_total against n. Seeds are ``seed + i`` for each trial i."""
    grid = _check_grid(n_grid, trials)
    law = _law(density_law)
    work = [
        (DiscConfig.from_law(n, law, seed + i), params, cost)
        for n in grid for i in range(trials)
    ]

    def progress(done: int, total: int) -> None:
        if done == total or done % max(1, total // 10) == 0:
            logger.info(f"  [{done}/{total}] rendezvous runs")

    table = ScalingTable()
    table.extend(run_ordered(_scaling_job, work, jobs, progress))
    return ScalingResult(table=table, slope=table.slope())


# ---------------------------------------------------------------------------
# Graph, boundary and baseline experiments
# ---------------------------------------------------------------------------

def _connected_job(cfg: DiscConfig) -> bool:
    return is_connected(build_comm_graph(cfg))


def connectivity_sweep(n: float, laws: Sequence[LawLike], trials: int, seed: int = 42, jobs: int = 1) -> dict:
    """Fraction of connected configurations per density law."""
    out = {}
    for raw in laws:
        law = _law(raw)
        cfgs = [DiscConfig.from_law(n, law, seed + i) for i in range(trials)]
        hits = run_ordered(_connected_job, cfgs, jobs)
        out[law.text] = sum(hits) / len(hits)
    return out


def _boundary_job(args: tuple) -> dict:
    cfg, params = args
    g = build_comm_graph(cfg)
    labels = boundary_labels(g)
    report = boundary_stats(g, cfg, labels)
    blue = step1a_classify(g, params).colors == Color.BLUE
    return {
        "n": clean_n(cfg.n),
        "f": cfg.f,
        "seed": cfg.seed,
        "count": report.count,
        "ratio_count_over_n": report.ratio_count_over_n,
        "max_rim_distance": report.max_rim_distance,
        "blue_count": int(blue.sum()),
        "blue_covers_boundary": bool(np.all(blue[labels])),
    }


def boundary_experiment(
    n_grid: Sequence[float],
    density_law: LawLike = DEFAULT_LAW,
    trials: int = 1,
    params: ProtocolParams = ProtocolParams(),
    seed: int = 42,
    jobs: int = 1,
) -> list[dict]:
    grid = _check_grid(n_grid, trials)
    law = _law(density_law)
    work = [(DiscConfig.from_law(n, law, seed + i), params) for n in grid for i in range(trials)]
    return run_ordered(_boundary_job, work, jobs)


def _asy_job(args: tuple) -> dict:
    cfg, max_rounds, tol, step_cap = args
    report = run_asy(cfg, max_rounds=max_rounds, tol=tol, step_cap=step_cap)
    return {
        "n": clean_n(cfg.n),
        "f": cfg.f,
        "seed": cfg.seed,
        "rounds": report.rounds,
        "comp_cost": report.comp_cost,
        "converged": report.converged,
        "final_spread": report.final_spread,
        "connectivity_preserved": report.connectivity_preserved,
        "spread_monotone": bool(np.all(np.diff(report.spread_history) <= 1e-9)),
    }


@dataclass(frozen=True)
class AsyExperimentResult:
    rows: list
    slope: Optional[float]


def asy_experiment(
    n_grid: Sequence[float],
    density_law: LawLike = DEFAULT_LAW,
    trials: int = 1,
    seed: int = 42,
    step_cap: float = DEFAULT_STEP_CAP,
    tol_factor: float = DEFAULT_TOL_FACTOR,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    jobs: int = 1,
    tol: Optional[float] = None,
) -> AsyExperimentResult:
    """Baseline runs per (n, seed) and the log-log slope of median comp_cost.

    The convergence tolerance is *tol* when given, else tol_factor * n.

    Raises:
        GraphDisconnectedError: a start configuration is disconnected.
    """
    grid = _check_grid(n_grid, trials)
    law = _law(density_law)
    work = [
        (DiscConfig.from_law(n, law, seed + i), max_rounds, tol if tol is not None else tol_factor * n, step_cap)
        for n in grid for i in range(trials)
    ]
    rows = run_ordered(_asy_job, work, jobs)
    medians = {n: statistics.median(r["comp_cost"] for r in rows if r["n"] == clean_n(n)) for n in grid}
    return AsyExperimentResult(rows=rows, slope=fit_loglog_slope(list(medians), list(medians.values())))


# ---------------------------------------------------------------------------
# Lemma suite
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    check: str
    statistic: float
    threshold: str
    verdict: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def as_dict(self) -> dict:
        return asdict(self)


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


@dataclass(frozen=True)
class LemmaSuiteConfig:
    """Sizes and seed counts of every check; defaults reproduce the acceptance runs."""
    law: str = DEFAULT_LAW
    seed: int = 42
    pass_fraction: float = 0.95
    degree_n: float = 40
    degree_seeds: int = 50
    diameter_n: float = 30
    diameter_seeds: int = 50
    diameter_sources: int = 32
    connectivity_n: float = 30
    connectivity_seeds: int = 50
    sparse_law: str = "n^2"
    boundary_grid: tuple = (15, 20, 25)
    boundary_seeds: int = 20
    rim_n: float = 25
    rim_seeds: int = 50
    strings_count: int = 10_000
    strings_k: Optional[int] = None
    strings_seeds: int = 30
    rendezvous_grid: tuple = (15, 30, 60)
    rendezvous_seeds: int = 50
    asy_grid: tuple = (6, 9, 12)
    asy_seeds: int = 3
    election_count: int = 1024
    election_seeds: int = 200
    oracle_instances: int = 5

    @classmethod
    def quick(cls) -> "LemmaSuiteConfig":
        """Small sizes for a smoke run; verdicts are indicative only."""
        return cls(
            degree_n=12, degree_seeds=5,
            diameter_n=10, diameter_seeds=5,
            connectivity_n=10, connectivity_seeds=10,
            boundary_grid=(8, 10, 12), boundary_seeds=4,
            rim_n=10, rim_seeds=5,
            strings_count=2000, strings_seeds=5,
            rendezvous_grid=(8, 12, 16), rendezvous_seeds=5,
            asy_grid=(3, 4, 5), asy_seeds=2,
            election_seeds=50,
            oracle_instances=2,
        )


@dataclass
class _SuiteContext:
    cfg: LemmaSuiteConfig
    params: ProtocolParams
    cost: CostModel
    jobs: int
    law: DensityLaw = field(init=False)

    def __post_init__(self):
        self.law = parse_density_law(self.cfg.law)

    def configs(self, n: float, count: int, law: Optional[DensityLaw] = None) -> list[DiscConfig]:
        return [DiscConfig.from_law(n, law or self.law, self.cfg.seed + i) for i in range(count)]


def _degree_job(cfg: DiscConfig) -> bool:
    g = build_comm_graph(cfg)
    lo, hi = degree_window(cfg.density)
    return g.size == 0 or bool(g.degrees.min() > lo and g.degrees.max() < hi)


def _check_degree(ctx: _SuiteContext) -> list[CheckResult]:
    c = ctx.cfg
    hits = run_ordered(_degree_job, ctx.configs(c.degree_n, c.degree_seeds), ctx.jobs)
    frac = sum(hits) / len(hits)
    return [CheckResult(
        "degree_window", frac, f">= {c.pass_fraction}", _verdict(frac >= c.pass_fraction),
        f"n={clean_n(c.degree_n)}: all degrees in (pi/3, 2pi) x density in {sum(hits)}/{len(hits)} seeds",
    )]


def _diameter_job(args: tuple) -> int:
    cfg, k = args
    try:
        return graph_diameter(build_comm_graph(cfg), mode="sampled", k=k, seed=cfg.seed)
    except GraphDisconnectedError:
        return -1


def _check_diameter(ctx: _SuiteContext) -> list[CheckResult]:
    c = ctx.cfg
    bound = 6 * c.diameter_n
    work = [(cfg, c.diameter_sources) for cfg in ctx.configs(c.diameter_n, c.diameter_seeds)]
    diam = run_ordered(_diameter_job, work, ctx.jobs)
    ok = [0 <= d <= bound for d in diam]
    frac = sum(ok) / len(ok)
    return [CheckResult(
        "diameter_bound", frac, ">= 1.0", _verdict(frac >= 1.0),
        f"n={clean_n(c.diameter_n)}: max sampled eccentricity {max(diam)} vs bound {bound:g}"
        + (f"; {diam.count(-1)} disconnected" if -1 in diam else ""),
    )]


def _check_connectivity(ctx: _SuiteContext) -> list[CheckResult]:
    c = ctx.cfg
    fractions = connectivity_sweep(c.connectivity_n, [ctx.law, c.sparse_law], c.connectivity_seeds, c.seed, ctx.jobs)
    dense = fractions[ctx.law.text]
    sparse_disconnected = 1.0 - fractions[parse_density_law(c.sparse_law).text]
    stat = min(dense, sparse_disconnected)
    return [CheckResult(
        "connectivity_threshold", stat, f">= {c.pass_fraction}", _verdict(stat >= c.pass_fraction),
        f"n={clean_n(c.connectivity_n)}: connected {dense:.2f} at {ctx.law.text}, "
        f"disconnected {sparse_disconnected:.2f} at {c.sparse_law}",
    )]


def _check_boundary(ctx: _SuiteContext) -> list[CheckResult]:
    c = ctx.cfg
    rows = boundary_experiment(c.boundary_grid, ctx.law, c.boundary_seeds, ctx.params, c.seed, ctx.jobs)
    means = {n: statistics.mean(r["ratio_count_over_n"] for r in rows if r["n"] == clean_n(n)) for n in c.boundary_grid}
    lo, hi = min(means.values()), max(means.values())
    spread = hi / lo if lo > 0 else math.inf
    covered = sum(r["blue_covers_boundary"] for r in rows)
    return [CheckResult(
        "boundary_linear", spread, "<= 2.0", _verdict(spread <= 2.0),
        "mean count/n " + ", ".join(f"n={clean_n(n)}: {m:.2f}" for n, m in means.items())
        + f"; blue covers boundary in {covered}/{len(rows)}",
    )]


def _rim_job(args: tuple) -> float:
    cfg, params = args
    g = build_comm_graph(cfg)
    blue = step1a_classify(g, params).blue_ids
    if len(blue) == 0:
        return 0.0
    return float((cfg.n - np.hypot(*g.coords[blue].T)).max())


def _check_rim(ctx: _SuiteContext) -> list[CheckResult]:
    c = ctx.cfg
    depth = run_ordered(_rim_job, [(cfg, ctx.params) for cfg in ctx.configs(c.rim_n, c.rim_seeds)], ctx.jobs)
    ok = [d <= RIM_BAND for d in depth]
    frac = sum(ok) / len(ok)
    return [CheckResult(
        "blue_near_rim", frac, f">= {c.pass_fraction}", _verdict(frac >= c.pass_fraction),
        f"n={clean_n(c.rim_n)} K={ctx.params.K}: deepest blue agent {max(depth):.2f} from the rim (median {statistics.median(depth):.2f})",
    )]


def _check_strings(ctx: _SuiteContext) -> list[CheckResult]:
    c = ctx.cfg
    k = c.strings_k if c.strings_k is not None else default_string_length(c.strings_count)
    results = strings_experiment(c.strings_count, k, c.seed, c.strings_seeds, ctx.jobs)
    limit = 2.2 * c.strings_count
    frac = sum(r.max_total_bits <= limit for r in results) / len(results)
    pair_mean = statistics.mean(r.per_pair_mean for r in results)
    return [
        CheckResult(
            "string_read_max", frac, f">= {c.pass_fraction}", _verdict(frac >= c.pass_fraction),
            f"max total bits <= {limit:g} in {round(frac * len(results))}/{len(results)} seeds "
            f"(largest {max(r.max_total_bits for r in results)})",
        ),
        CheckResult(
            "string_read_pair_mean", pair_mean, "in [1.9, 2.1]", _verdict(1.9 <= pair_mean <= 2.1),
            f"N={c.strings_count} k={k}",
        ),
    ]


def _check_rendezvous(ctx: _SuiteContext) -> list[CheckResult]:
    c = ctx.cfg
    result = scaling_experiment(c.rendezvous_grid, ctx.law, c.rendezvous_seeds, ctx.params, ctx.cost, c.seed, ctx.jobs)
    table = result.table
    fractions = {n: table.success_fraction(n) for n in table.n_values()}
    worst = min(fractions.values())
    slope = result.slope
    slope_stat = slope if slope is not None else math.nan
    return [
        CheckResult(
            "rendezvous_success", worst, f">= {c.pass_fraction}", _verdict(worst >= c.pass_fraction),
            "success " + ", ".join(f"n={n}: {v:.2f}" for n, v in fractions.items())
            + ("; failures " + ", ".join(f"{k} x{v}" for k, v in sorted(table.failure_reasons().items()))
               if table.failure_reasons() else ""),
        ),
        CheckResult(
            "rendezvous_slope", slope_stat, "in [0.8, 1.2]",
            _verdict(slope is not None and 0.8 <= slope <= 1.2),
            "medians " + ", ".join(f"n={n}: {m:.1f}" for n, m in table.median_t_total().items()),
        ),
    ]


def _check_asy(ctx: _SuiteContext) -> list[CheckResult]:
    c = ctx.cfg
    result = asy_experiment(c.asy_grid, ctx.law, c.asy_seeds, c.seed, jobs=ctx.jobs)
    rows = result.rows
    preserved = sum(r["connectivity_preserved"] for r in rows) / len(rows)
    converged = sum(r["converged"] for r in rows) / len(rows)
    monotone = sum(r["spread_monotone"] for r in rows) / len(rows)
    slope = result.slope
    return [
        CheckResult("asy_connectivity", preserved, ">= 1.0", _verdict(preserved >= 1.0),
                    f"{len(rows)} runs over n in {list(c.asy_grid)}"),
        CheckResult("asy_converged", converged, ">= 1.0", _verdict(converged >= 1.0),
                    f"max rounds {max(r['rounds'] for r in rows)}"),
        CheckResult("asy_spread_monotone", monotone, ">= 1.0", _verdict(monotone >= 1.0),
                    "enclosing radius never grows between rounds"),
        CheckResult("asy_slope", slope if slope is not None else math.nan, ">= 1.5",
                    _verdict(slope is not None and slope >= 1.5),
                    "comp_cost medians fitted on log-log axes"),
    ]


def _election_job(args: tuple) -> tuple:
    count, seed = args
    res = global_visibility_election(count, seed)
    return res.rounds, min(res.history), 0 <= res.winner < count


def _check_election(ctx: _SuiteContext) -> list[CheckResult]:
    c = ctx.cfg
    work = [(c.election_count, c.seed + i) for i in range(c.election_seeds)]
    out = run_ordered(_election_job, work, ctx.jobs)
    mean_rounds = statistics.mean(r for r, _, _ in out)
    bound = 3 * math.log2(c.election_count)
    always = all(lo >= 1 and ok for _, lo, ok in out)
    return [CheckResult(
        "election_rounds", mean_rounds, f"<= {bound:g}", _verdict(always and mean_rounds <= bound),
        f"count={c.election_count}, {len(out)} seeds; unique winner every run: {always}",
    )]


def _check_oracles(ctx: _SuiteContext) -> list[CheckResult]:
    c = ctx.cfg
    adjacency_bad = 0
    sec_bad = 0
    boundary_bad = 0
    boundary_checked = 0
    for i in range(c.oracle_instances):
        pts = sample_disc_array(DiscConfig(n=8.0, f=500, seed=c.seed + i))
        if comm_graph_from_points(pts).edge_set() != brute_force_edges(pts):
            adjacency_bad += 1

        rng = make_rng(c.seed + i, SAMPLING, 99)
        for size in range(1, 13):
            small = rng.uniform(-1, 1, size=(size, 2))
            if abs(smallest_enclosing_circle(small).radius - brute_force_sec(small).radius) > 1e-9:
                sec_bad += 1

        g = comm_graph_from_points(sample_disc_array(DiscConfig(n=5.0, f=160, seed=c.seed + i)))
        for v in np.flatnonzero(g.degrees <= 12):
            boundary_checked += 1
            if exact_boundary_label(g, int(v)) != cycle_enumeration_label(g, int(v), max_len=8):
                boundary_bad += 1

    compare_bad = 0
    compared = 0
    words = [w for length in range(1, 7) for w in itertools.product((0, 1), repeat=length)]
    for a in words:
        for b in words:
            compared += 1
            if compare_strings(a, b) != naive_compare(a, b):
                compare_bad += 1

    return [
        CheckResult("oracle_adjacency", adjacency_bad, "== 0", _verdict(adjacency_bad == 0),
                    f"{c.oracle_instances} instances of 500 points"),
        CheckResult("oracle_sec", sec_bad, "== 0", _verdict(sec_bad == 0),
                    f"{12 * c.oracle_instances} point sets of 1..12 points"),
        CheckResult("oracle_boundary", boundary_bad, "== 0", _verdict(boundary_bad == 0),
                    f"{boundary_checked} vertices of degree <= 12"),
        CheckResult("oracle_compare", compare_bad, "== 0", _verdict(compare_bad == 0),
                    f"{compared} string pairs of length <= 6"),
    ]


def _check_determinism(ctx: _SuiteContext) -> list[CheckResult]:
    cfg = DiscConfig.from_law(8, ctx.law, ctx.cfg.seed)
    first = row_from_run(simulate(cfg, ctx.params, ctx.cost)).as_dict()
    second = row_from_run(simulate(cfg, ctx.params, ctx.cost)).as_dict()
    s1 = string_read_experiment(500, None, ctx.cfg.seed)
    s2 = string_read_experiment(500, None, ctx.cfg.seed)
    same = first == second and s1 == s2
    return [CheckResult("determinism", 1.0 if same else 0.0, "== 1", _verdict(same),
                        "repeated rendezvous and string runs compared field by field")]


CHECKS: dict[str, Callable[[_SuiteContext], list[CheckResult]]] = {
    "degree": _check_degree,
    "diameter": _check_diameter,
    "connectivity": _check_connectivity,
    "boundary": _check_boundary,
    "rim": _check_rim,
    "strings": _check_strings,
    "rendezvous": _check_rendezvous,
    "oracles": _check_oracles,
    "asy": _check_asy,
    "election": _check_election,
    "determinism": _check_determinism,
}


def lemma_suite(
    suite: LemmaSuiteConfig = LemmaSuiteConfig(),
    checks: Optional[Sequence[str]] = None,
    params: ProtocolParams = ProtocolParams(),
    cost: CostModel = CostModel(),
    jobs: int = 1,
) -> list[CheckResult]:
    """Run the selected check groups (all by default) in a fixed order."""
    selected = list(CHECKS) if not checks else list(checks)
    unknown = [name for name in selected if name not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks {unknown}; choose from {', '.join(CHECKS)}")
    ctx = _SuiteContext(cfg=suite, params=params, cost=cost, jobs=jobs)
    results: list[CheckResult] = []
    for name in CHECKS:
        if name not in selected:
            continue
        logger.info(f"Running check group '{name}'...")
        for res in CHECKS[name](ctx):
            logger.info(f"  {res.check}: {res.statistic:.4g} ({res.verdict})")
            results.append(res)
    return results
