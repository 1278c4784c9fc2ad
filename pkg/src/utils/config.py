"""Configuration management for the simulator"""

import copy
import json
import os
import sys
import threading
from pathlib import Path
from typing import Optional, Dict, Any

from utils.constants import APP_NAME, HOME_ENV, OUTPUT_DIR_ENV, OUTPUT_FORMATS
from utils.validation import safe_float, safe_int, safe_str

STORAGE_MODES = {"strings", "unlimited"}
TRAVEL_MODES = {"straight", "tree"}


def default_config_dir() -> Path:
    override = os.getenv(HOME_ENV)
    if override:
        return Path(override)
    if sys.platform == "win32":
        appdata = os.getenv('LOCALAPPDATA')
        if appdata:
            return Path(appdata) / APP_NAME
        return Path.home() / "AppData" / "Local" / APP_NAME
    return Path.home() / ".disc_rendezvous"


class Config:
    """Manages simulator configuration (JSON file layered over defaults)"""

    # -----------------------------------------------------------------------
    # Storage & Initialization
    # -----------------------------------------------------------------------

    def __init__(self, config_dir: Optional[Path] = None):
        self.config_dir = config_dir if config_dir is not None else default_config_dir()
        self.config_file = self.config_dir / "config.json"
        self.config: Dict[str, Any] = {}
        self._save_lock = threading.Lock()
        self._dirty = False
        self._load()

    def _load(self):
        """Load configuration from file"""
        if self.config_file.exists():
            try:
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    self.config = json.load(f)
                if not isinstance(self.config, dict):
                    self.config = {}
            except (json.JSONDecodeError, OSError, UnicodeError):
                self.config = {}
        else:
            self.config = {}
        self._ensure_defaults()

    def _set_defaults(self):
        """Set default configuration values (the pilot constants of the lemma suite)"""
        self.config = {
            "default_seed": 42,
            "density_law": "8*n^2*log(n)",
            "default_trials": 10,
            "diameter_sources": 32,
            "jobs": 1,
            "output_format": "csv",
            "output_dir": "",
            "protocol": {
                "K": 16,
                "r_blue": 0.5,
                "r_green": 0.1,
                "r_yellow": 0.5,
                "min_bits": 4,
                "storage_per_bit": 2,
                "storage_mode": "strings",     # strings | unlimited
                "travel_mode": "straight",     # straight | tree
            },
            "cost_model": {
                "scan_rate": 1.0,
                "bit_op": 1.0,
                "signal_op": 1.0,
                "relay_hop": 1.0,
            },
            "asy": {
                "step_cap": 0.25,
                "tol_factor": 1e-3,
                "max_rounds": 20000,
            },
        }

    def _ensure_defaults(self):
        """Merge default configuration with loaded config to fill in missing keys"""
        saved = self.config.copy()
        self._set_defaults()
        for key, saved_value in saved.items():
            if isinstance(saved_value, dict) and isinstance(self.config.get(key), dict):
                for nested_key, nested_val in saved_value.items():
                    self.config[key][nested_key] = nested_val
            else:
                self.config[key] = saved_value

    def _write_config_file_locked(self) -> None:
        """Persist config; caller must hold _save_lock."""
        self.config_dir.mkdir(parents=True, exist_ok=True)
        with open(self.config_file, 'w', encoding='utf-8') as f:
            json.dump(self.config, f, indent=2)
            f.write("\n")

    def flush(self) -> None:
        """Write pending changes (called once when the CLI exits)."""
        with self._save_lock:
            if not self._dirty:
                return
            self._dirty = False
            try:
                self._write_config_file_locked()
            except OSError as e:
                print(f"Error saving config: {e}", file=sys.stderr)

    def reload(self) -> None:
        with self._save_lock:
            self._dirty = False
            self._load()

    def get(self, key: str, default: Any = None) -> Any:
        """Get a configuration value"""
        return self.config.get(key, default)

    def set(self, key: str, value: Any):
        """Set a configuration value; written on flush()."""
        with self._save_lock:
            self.config[key] = value
            self._dirty = True

    @property
    def log_dir(self) -> Path:
        return self.config_dir / "logs"

    # -----------------------------------------------------------------------
    # Run defaults
    # -----------------------------------------------------------------------

    def get_default_seed(self) -> int:
        return safe_int(self.config.get("default_seed"), 42, 0, 2**64 - 1)

    def get_density_law(self) -> str:
        return safe_str(self.config.get("density_law"), "8*n^2*log(n)")

    def get_default_trials(self) -> int:
        return safe_int(self.config.get("default_trials"), 10, 1, 100_000)

    def get_diameter_sources(self) -> int:
        return safe_int(self.config.get("diameter_sources"), 32, 1, 1_000_000)

    def get_jobs(self) -> int:
        return safe_int(self.config.get("jobs"), 1, 1, os.cpu_count() or 1)

    def get_output_format(self) -> str:
        return safe_str(self.config.get("output_format"), "csv", set(OUTPUT_FORMATS))

    def get_output_dir(self) -> Path:
        """Configured output directory, else ``$RENDEZVOUS_OUTPUT_DIR``, else the cwd."""
        configured = safe_str(self.config.get("output_dir"), "")
        if configured:
            return Path(configured)
        env = os.getenv(OUTPUT_DIR_ENV)
        if env:
            return Path(env)
        return Path.cwd()

    # -----------------------------------------------------------------------
    # Nested sections (plain dicts; core builds its own dataclasses from them)
    # -----------------------------------------------------------------------

    def _section(self, name: str) -> Dict[str, Any]:
        raw = self.config.get(name)
        return copy.deepcopy(raw) if isinstance(raw, dict) else {}

    def get_protocol_settings(self) -> Dict[str, Any]:
        raw = self._section("protocol")
        return {
            "K": safe_int(raw.get("K"), 16, 4, 4096),
            "r_blue": safe_float(raw.get("r_blue"), 0.5, 1e-6, 1.0),
            "r_green": safe_float(raw.get("r_green"), 0.1, 1e-6, 1.0),
            "r_yellow": safe_float(raw.get("r_yellow"), 0.5, 1e-6, 1.0),
            "min_bits": safe_int(raw.get("min_bits"), 4, 1, 4096),
            "storage_per_bit": 2,
            "storage_mode": safe_str(raw.get("storage_mode"), "strings", STORAGE_MODES),
            "travel_mode": safe_str(raw.get("travel_mode"), "straight", TRAVEL_MODES),
        }

    def get_cost_settings(self) -> Dict[str, float]:
        raw = self._section("cost_model")
        return {
            key: safe_float(raw.get(key), 1.0, 1e-9, 1e9)
            for key in ("scan_rate", "bit_op", "signal_op", "relay_hop")
        }

    def get_asy_settings(self) -> Dict[str, Any]:
        raw = self._section("asy")
        return {
            "step_cap": safe_float(raw.get("step_cap"), 0.25, 1e-6, 1.0),
            "tol_factor": safe_float(raw.get("tol_factor"), 1e-3, 1e-12, 1.0),
            "max_rounds": safe_int(raw.get("max_rounds"), 20000, 1, 10_000_000),
        }


# Global config instance
config = Config()
