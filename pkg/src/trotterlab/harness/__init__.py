"""Sweep configs, runner, output writers and the command line."""
from .config import PRESETS, SweepConfig, load_config, parse_config, preset
from .output import emit_plotdata, write_csv
from .sweep import SweepResult, run_sweep
from .verify import verify

__all__ = [
    "PRESETS", "SweepConfig", "SweepResult", "emit_plotdata", "load_config",
    "parse_config", "preset", "run_sweep", "verify", "write_csv",
]
