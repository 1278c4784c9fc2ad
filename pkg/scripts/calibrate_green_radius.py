r"""
Pilot sweep of the green radius: mean role counts per setting.

For every r_green value, runs the protocol on ``--trials`` seeds and prints
mean blue, green, yellow and pink counts, surviving chiefs (blue chiefs that
built strings), leaders and the success fraction. Use it to pick the
protocol defaults before a scaling run.

Run from project root (same layout as other scripts in this folder):

  python scripts/calibrate_green_radius.py --n 20 --r-green 0.05,0.1,0.2 --trials 10
"""

from __future__ import annotations

import argparse
import statistics
import sys
from pathlib import Path

_project_root = Path(__file__).resolve().parent.parent
_src = _project_root / "src"
if str(_src) not in sys.path:
    sys.path.insert(0, str(_src))

from core.density_law import parse_density_law  # noqa: E402
from core.geometry import DiscConfig  # noqa: E402
from core.protocol import (  # noqa: E402
    STORAGE_MODES,
    Color,
    CostModel,
    ProtocolParams,
    simulate,
    step1a_classify,
)
from utils.config import config  # noqa: E402
from utils.logger import logger  # noqa: E402
from utils.validation import parse_float_list  # noqa: E402


def _pilot_row(cfg: DiscConfig, params: ProtocolParams, cost: CostModel) -> dict:
    run = simulate(cfg, params, cost)
    classified = step1a_classify(run.graph, params, cost).colors
    return {
        "blue": int((classified == Color.BLUE).sum()),
        "green": int((classified == Color.GREEN).sum()),
        "yellow": int((classified == Color.YELLOW).sum()),
        "pink": run.report.pink_count,
        "chiefs": len(run.registry),
        "leaders": run.report.leader_count,
        "success": 1.0 if run.report.success else 0.0,
    }


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--n", type=float, default=20.0, help="disc radius")
    p.add_argument("--r-green", default="0.05,0.1,0.15,0.2", help="comma-separated r_green values")
    p.add_argument("--r-blue", type=float, help="override r_blue")
    p.add_argument("--storage-mode", choices=STORAGE_MODES, help="override storage mode")
    p.add_argument("--density-law", default=None, help="agent count as an expression in n")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=None)
    args = p.parse_args()

    try:
        radii = parse_float_list(args.r_green)
        law = parse_density_law(args.density_law or config.get_density_law())
    except ValueError as e:
        p.error(str(e))
    seed = args.seed if args.seed is not None else config.get_default_seed()
    base = config.get_protocol_settings()
    if args.r_blue is not None:
        base["r_blue"] = args.r_blue
    if args.storage_mode is not None:
        base["storage_mode"] = args.storage_mode
    cost = CostModel(**config.get_cost_settings())

    logger.info(f"n={args.n:g}, f={law.point_count(args.n)}, {args.trials} trials per setting")
    header = f"{'r_green':>8} {'blue':>8} {'green':>8} {'yellow':>8} {'pink':>8} {'chiefs':>8} {'leaders':>8} {'success':>8}"
    print(header)
    print("━" * len(header))
    for r_green in radii:
        try:
            params = ProtocolParams(**{**base, "r_green": r_green})
        except ValueError as e:
            logger.warning(f"skipping r_green={r_green:g}: {e}")
            continue
        rows = [_pilot_row(DiscConfig.from_law(args.n, law, seed + i), params, cost) for i in range(args.trials)]
        means = {key: statistics.fmean(r[key] for r in rows) for key in rows[0]}
        print(
            f"{r_green:>8.3f} {means['blue']:>8.1f} {means['green']:>8.1f} {means['yellow']:>8.1f} "
            f"{means['pink']:>8.1f} {means['chiefs']:>8.1f} {means['leaders']:>8.2f} {means['success']:>8.2f}"
        )


if __name__ == "__main__":
    main()
