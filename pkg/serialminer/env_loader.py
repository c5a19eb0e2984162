"""
Shared Environment Loader for the Miner Scripts
===============================================

Import and call load_settings() at the top of any stage script to:
  1. Load configuration from .env (if not already loaded by main.py)
  2. Return a Settings object with sensible defaults for every knob

Usage in a stage script:
    import sys
    from pathlib import Path
    sys.path.insert(0, str(Path(__file__).resolve().parent.parent))
    from serialminer.env_loader import load_settings

    settings = load_settings()

Command-line flags override these values; these values override the
built-in defaults below.
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from serialminer.errors import ParameterError

DEFAULT_ORACLE_MAX_ENTRIES = 40
DEFAULT_NAIVE_MAX_CANDIDATES = 1_000_000
DEFAULT_BENCH_TIME_BUDGET = 120.0


@dataclass(frozen=True)
class Settings:
    oracle_max_entries: int = DEFAULT_ORACLE_MAX_ENTRIES
    naive_max_candidates: int = DEFAULT_NAIVE_MAX_CANDIDATES
    jobs: int = 1
    bench_time_budget: float = DEFAULT_BENCH_TIME_BUDGET
    bench_mem_budget: Optional[int] = None
    bench_output_dir: Path = Path("bench-results")
    log_level: str = "WARNING"


def _find_project_root(start: Path = None) -> Path:
    """Find the project root by looking for .env file walking up from start."""
    if start is None:
        start = Path.cwd()
    current = start.resolve()
    for parent in [current] + list(current.parents):
        if (parent / ".env").exists():
            return parent
    # Fallback: serialminer/ sits one level below the root
    return Path(__file__).resolve().parent.parent


def _int_env(name: str, default: int, minimum: int = 0) -> int:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ParameterError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ParameterError(f"{name} must be >= {minimum}, got {value}")
    return value


def _float_env(name: str, default: float) -> float:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        value = float(raw)
    except ValueError:
        raise ParameterError(f"{name} must be a number, got {raw!r}")
    if value <= 0:
        raise ParameterError(f"{name} must be positive, got {value}")
    return value


def init_env() -> Path:
    """Load .env and return the project root.

    Uses override=False so that environment variables set by main.py
    (or any parent process) take precedence over .env file values.
    """
    project_root = _find_project_root()
    env_path = project_root / ".env"
    if env_path.exists():
        load_dotenv(dotenv_path=env_path, override=False)
    return project_root


def load_settings() -> Settings:
    """Load .env and read every knob from the environment."""
    project_root = init_env()

    mem_budget = _int_env("BENCH_MEM_BUDGET", 0)
    output_dir = Path(os.environ.get("BENCH_OUTPUT_DIR", "bench-results"))
    if not output_dir.is_absolute():
        output_dir = project_root / output_dir

    return Settings(
        oracle_max_entries=_int_env("ORACLE_MAX_ENTRIES", DEFAULT_ORACLE_MAX_ENTRIES, 1),
        naive_max_candidates=_int_env("NAIVE_MAX_CANDIDATES", DEFAULT_NAIVE_MAX_CANDIDATES, 1),
        jobs=_int_env("MINER_JOBS", 1, 1),
        bench_time_budget=_float_env("BENCH_TIME_BUDGET", DEFAULT_BENCH_TIME_BUDGET),
        bench_mem_budget=mem_budget or None,
        bench_output_dir=output_dir,
        log_level=os.environ.get("LOG_LEVEL", "WARNING").upper(),
    )
