"""Shared application-wide constants."""
from __future__ import annotations

APP_NAME = "DiscRendezvous"

# Process exit codes (stable contract for scripts and CI).
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_SIMULATION = 4

COMMANDS: tuple[str, ...] = ("rendezvous", "scaling", "lemmas", "strings", "asy", "boundary")
OUTPUT_FORMATS: frozenset[str] = frozenset({"csv", "json"})

SCALING_FIELDS: tuple[str, ...] = (
    "n", "f", "seed", "t_total", "t_1A", "t_1B", "t_1C", "t_wave", "t_travel",
    "success", "leader_count", "blue_count", "pink_count", "boundary_count",
)
LEMMA_FIELDS: tuple[str, ...] = ("check", "statistic", "threshold", "verdict", "detail")
STRINGS_FIELDS: tuple[str, ...] = (
    "seed", "n_strings", "k", "max_total_bits", "mean_total_bits", "per_pair_mean",
)
ASY_FIELDS: tuple[str, ...] = ("n", "f", "seed", "rounds", "comp_cost", "converged", "final_spread")
BOUNDARY_FIELDS: tuple[str, ...] = (
    "n", "f", "seed", "count", "ratio_count_over_n", "max_rim_distance",
    "blue_count", "blue_covers_boundary",
)

OUTPUT_DIR_ENV = "RENDEZVOUS_OUTPUT_DIR"
HOME_ENV = "DISC_RENDEZVOUS_HOME"
SLOW_TESTS_ENV = "RENDEZVOUS_SLOW_TESTS"
