"""Disc rendezvous simulator: run the protocol, its experiments and the lemma suite.

Examples:
    python src/main.py rendezvous --n 20 --seed 7 --snapshot run.png
    python src/main.py scaling --n 15,30,60 --trials 50 --out runs.csv
    python src/main.py lemmas --quick --checks degree,strings
"""

import argparse
import dataclasses
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

base_path = str(Path(__file__).parent)
if base_path not in sys.path:
    sys.path.insert(0, base_path)

from core import report_io
from core.analysis import (
    CHECKS,
    LemmaSuiteConfig,
    asy_experiment,
    boundary_experiment,
    lemma_suite,
    row_from_run,
    scaling_experiment,
    strings_experiment,
)
from core.density_law import DensityLaw, parse_density_law
from core.errors import DensityLawError, SimulationError
from core.geometry import DiscConfig
from core.protocol import STORAGE_MODES, TRAVEL_MODES, CostModel, ProtocolParams, simulate
from core.snapshot import render_snapshot
from storage import dispose_engine, ensure_engine, record_rows
from utils.config import config
from utils.constants import (
    ASY_FIELDS,
    BOUNDARY_FIELDS,
    EXIT_IO,
    EXIT_OK,
    EXIT_SIMULATION,
    EXIT_USAGE,
    LEMMA_FIELDS,
    OUTPUT_FORMATS,
    SCALING_FIELDS,
    STRINGS_FIELDS,
)
from utils.logger import logger
from utils.validation import parse_float_list

DEFAULT_N = {
    "rendezvous": "20",
    "scaling": "15,30,60",
    "boundary": "15,20,25",
    "asy": "6,9,12",
}

FIELDS = {
    "rendezvous": SCALING_FIELDS,
    "scaling": SCALING_FIELDS,
    "lemmas": LEMMA_FIELDS,
    "strings": STRINGS_FIELDS,
    "asy": ASY_FIELDS,
    "boundary": BOUNDARY_FIELDS,
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    n_grid: tuple
    density_law: DensityLaw
    seed: int
    trials: int
    output_path: Path
    output_format: str
    params: ProtocolParams
    cost: CostModel
    jobs: int = 1
    db_path: Optional[Path] = None
    console_level: int = logging.INFO
    options: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Argument types
# ---------------------------------------------------------------------------

def _n_list(raw: str) -> tuple:
    try:
        values = parse_float_list(raw)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))
    bad = [v for v in values if v <= 0]
    if bad:
        raise argparse.ArgumentTypeError(f"n must be positive, got {bad[0]:g}")
    return tuple(values)


def _density_law(raw: str) -> DensityLaw:
    try:
        return parse_density_law(raw)
    except DensityLawError as e:
        raise argparse.ArgumentTypeError(str(e))


def _seed(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {raw!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed out of range: {value}")
    return value


def _positive_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {raw!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _positive_float(raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {raw!r}")
    if not value > 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"expected a positive finite number, got {raw}")
    return value


def _check_list(raw: str) -> tuple:
    names = tuple(p.strip() for p in raw.split(",") if p.strip())
    unknown = [name for name in names if name not in CHECKS]
    if not names or unknown:
        raise argparse.ArgumentTypeError(f"unknown checks {list(unknown)}; choose from {', '.join(CHECKS)}")
    return names


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    run = common.add_argument_group("run")
    run.add_argument("--n", type=_n_list, help="disc radius, or a comma-separated grid")
    run.add_argument("--density-law", type=_density_law, help="agent count f as an expression in n")
    run.add_argument("--seed", type=_seed, help="base seed; trial i uses seed + i")
    run.add_argument("--trials", type=_positive_int, help="seeds per grid point")
    run.add_argument("--jobs", type=_positive_int, help="worker processes")

    out = common.add_argument_group("output")
    out.add_argument("--out", type=Path, help="output file (default <output_dir>/<command>.<format>)")
    out.add_argument("--format", choices=sorted(OUTPUT_FORMATS), help="output format")
    out.add_argument("--db", type=Path, help="also record rows in this SQLite database")
    verbosity = out.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="debug output on the console")
    verbosity.add_argument("--quiet", action="store_true", help="warnings and errors only")

    proto = common.add_argument_group("protocol")
    proto.add_argument("--K", type=_positive_int, dest="K")
    proto.add_argument("--r-blue", type=_positive_float)
    proto.add_argument("--r-green", type=_positive_float)
    proto.add_argument("--r-yellow", type=_positive_float)
    proto.add_argument("--min-bits", type=_positive_int)
    proto.add_argument("--storage-mode", choices=STORAGE_MODES)
    proto.add_argument("--travel-mode", choices=TRAVEL_MODES)

    cost = common.add_argument_group("cost model")
    cost.add_argument("--scan-rate", type=_positive_float)
    cost.add_argument("--bit-op", type=_positive_float)
    cost.add_argument("--signal-op", type=_positive_float)
    cost.add_argument("--relay-hop", type=_positive_float)
    return common


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    common = _common_parser()
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    r = sub.add_parser("rendezvous", parents=[common], help="one protocol run")
    r.add_argument("--snapshot", type=Path, help="write a PNG of the final colouring")

    sub.add_parser("scaling", parents=[common], help="t_total over an n grid")
    sub.add_parser("boundary", parents=[common], help="boundary counts and blue coverage")

    s = sub.add_parser("strings", parents=[common], help="bits read over random string pairs")
    s.add_argument("--count", type=_positive_int, default=10_000, help="strings per trial")
    s.add_argument("--bits", type=_positive_int, help="string length (default ceil(log2 count) + 32)")

    a = sub.add_parser("asy", parents=[common], help="centre-of-enclosing-circle baseline")
    a.add_argument("--step-cap", type=_positive_float)
    a.add_argument("--tol", type=_positive_float, help="absolute spread tolerance (default tol_factor * n)")
    a.add_argument("--max-rounds", type=_positive_int)

    lm = sub.add_parser("lemmas", parents=[common], help="statistical checks with pass/fail verdicts")
    lm.add_argument("--quick", action="store_true", help="small sizes for a smoke run")
    lm.add_argument("--checks", type=_check_list, help=f"subset of: {','.join(CHECKS)}")
    return p


def _overrides(args: argparse.Namespace, base: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key in base:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def parse_args(argv: Optional[list[str]] = None) -> RunConfig:
    """Parse *argv* into a validated RunConfig; usage errors exit with code 2."""
    p = build_parser()
    args = p.parse_args(argv)
    command = args.command

    n_grid = args.n if args.n is not None else _n_list(DEFAULT_N.get(command, "20"))
    if command == "rendezvous" and len(n_grid) != 1:
        p.error("rendezvous takes a single --n value")
    if list(n_grid) != sorted(set(n_grid)):
        p.error("--n values must be strictly increasing")

    law = args.density_law if args.density_law is not None else _density_law(config.get_density_law())
    for n in n_grid:
        try:
            if law.point_count(n) < 1:
                p.error(f"density law {law.text!r} gives no agents at n={n:g}")
        except DensityLawError as e:
            p.error(str(e))

    try:
        params = ProtocolParams(**_overrides(args, config.get_protocol_settings()))
        cost = CostModel(**_overrides(args, config.get_cost_settings()))
    except ValueError as e:
        p.error(str(e))

    fmt = args.format or config.get_output_format()
    out = args.out if args.out is not None else config.get_output_dir() / f"{command}.{fmt}"
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO

    options: dict[str, Any] = {}
    if command == "rendezvous":
        options["snapshot"] = args.snapshot
    elif command == "strings":
        options.update(count=args.count, bits=args.bits)
    elif command == "asy":
        asy = config.get_asy_settings()
        options.update(
            step_cap=args.step_cap if args.step_cap is not None else asy["step_cap"],
            tol=args.tol,
            tol_factor=asy["tol_factor"],
            max_rounds=args.max_rounds if args.max_rounds is not None else asy["max_rounds"],
        )
        if options["step_cap"] > 1:
            p.error("--step-cap must be at most 1")
    elif command == "lemmas":
        options.update(quick=args.quick, checks=args.checks)
        if args.trials is not None or args.n is not None:
            logger.warning("--n and --trials are ignored by lemmas; sizes come from the suite")

    return RunConfig(
        command=command,
        n_grid=tuple(n_grid),
        density_law=law,
        seed=args.seed if args.seed is not None else config.get_default_seed(),
        trials=args.trials if args.trials is not None else config.get_default_trials(),
        output_path=out,
        output_format=fmt,
        params=params,
        cost=cost,
        jobs=args.jobs if args.jobs is not None else config.get_jobs(),
        db_path=args.db,
        console_level=level,
        options=options,
    )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _run_rendezvous(rc: RunConfig) -> tuple[list[dict], int]:
    cfg = DiscConfig.from_law(rc.n_grid[0], rc.density_law, rc.seed)
    logger.info(f"Rendezvous: n={cfg.n:g}, f={cfg.f}, seed={cfg.seed}")
    run = simulate(cfg, rc.params, rc.cost)
    report = run.report
    snapshot = rc.options.get("snapshot")
    if snapshot is not None:
        logger.info(f"Snapshot written to {render_snapshot(run, snapshot)}")
    if report.success:
        logger.success(f"Gathered at agent {report.leader_ids[0]} in t_total={report.t_total:.3f}")
        return [row_from_run(run).as_dict()], EXIT_OK
    logger.error(f"Rendezvous failed: {report.reason}")
    return [row_from_run(run).as_dict()], EXIT_SIMULATION


def _run_scaling(rc: RunConfig) -> tuple[list[dict], int]:
    result = scaling_experiment(rc.n_grid, rc.density_law, rc.trials, rc.params, rc.cost, rc.seed, rc.jobs)
    for line in result.table.summary_text().splitlines():
        logger.info(line)
    return result.table.as_dicts(), EXIT_OK


def _run_boundary(rc: RunConfig) -> tuple[list[dict], int]:
    rows = boundary_experiment(rc.n_grid, rc.density_law, rc.trials, rc.params, rc.seed, rc.jobs)
    covered = sum(1 for r in rows if r["blue_covers_boundary"])
    logger.info(f"Blue covers the boundary in {covered}/{len(rows)} runs")
    return rows, EXIT_OK


def _run_strings(rc: RunConfig) -> tuple[list[dict], int]:
    results = strings_experiment(rc.options["count"], rc.options["bits"], rc.seed, rc.trials, rc.jobs)
    worst = max(r.max_total_bits for r in results)
    logger.info(f"Largest per-string total over {len(results)} trials: {worst} bits")
    return [r.as_dict() for r in results], EXIT_OK


def _run_asy(rc: RunConfig) -> tuple[list[dict], int]:
    o = rc.options
    result = asy_experiment(
        rc.n_grid, rc.density_law, rc.trials, rc.seed,
        step_cap=o["step_cap"], tol_factor=o["tol_factor"], max_rounds=o["max_rounds"],
        jobs=rc.jobs, tol=o["tol"],
    )
    if result.slope is not None:
        logger.info(f"comp_cost log-log slope: {result.slope:.3f}")
    return result.rows, EXIT_OK


def _run_lemmas(rc: RunConfig) -> tuple[list[dict], int]:
    suite = LemmaSuiteConfig.quick() if rc.options.get("quick") else LemmaSuiteConfig()
    suite = dataclasses.replace(
        suite,
        law=rc.density_law.text,
        seed=rc.seed,
        diameter_sources=config.get_diameter_sources(),
    )
    results = lemma_suite(suite, rc.options.get("checks"), rc.params, rc.cost, rc.jobs)
    failed = [r.check for r in results if not r.passed]
    if failed:
        logger.warning(f"{len(failed)}/{len(results)} checks failed: {', '.join(failed)}")
    else:
        logger.success(f"All {len(results)} checks passed")
    return [r.as_dict() for r in results], EXIT_OK


RUNNERS = {
    "rendezvous": _run_rendezvous,
    "scaling": _run_scaling,
    "boundary": _run_boundary,
    "strings": _run_strings,
    "asy": _run_asy,
    "lemmas": _run_lemmas,
}


def _record(rc: RunConfig, rows: list[dict]) -> None:
    db = ensure_engine(rc.db_path)
    try:
        count = record_rows(rc.command, rows)
        logger.info(f"Recorded {count} rows in {db}")
    finally:
        dispose_engine()


def run(rc: RunConfig) -> int:
    """Execute *rc*, write its rows and return the process exit code."""
    try:
        rows, code = RUNNERS[rc.command](rc)
    except SimulationError as e:
        logger.error(f"Simulation failed: {e.reason}")
        return EXIT_SIMULATION
    except ValueError as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_USAGE

    try:
        report_io.emit(rows, rc.output_path, rc.output_format, FIELDS[rc.command])
        logger.success(f"Wrote {len(rows)} rows to {rc.output_path}")
        if rc.db_path is not None:
            _record(rc, rows)
    except OSError as e:
        logger.error(f"Could not write output: {e}")
        return EXIT_IO
    return code


def main(argv: Optional[list[str]] = None) -> int:
    try:
        rc = parse_args(argv)
        logger.configure(config.log_dir, rc.console_level)
        return run(rc)
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 130
    finally:
        config.flush()


if __name__ == "__main__":
    sys.exit(main())
