"""
Shared Configuration Module
===========================

Centralized configuration for the troplanar toolkit. Values come from the
defaults below, then the YAML config file, then environment variables, then
explicit overrides (CLI flags).
"""

import logging
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional

import psutil

from shared.config_loader import load_config_from_file

logger = logging.getLogger(__name__)

# Default Constants
CORPUS_ENV_VAR = "TROPLANAR_CORPUS"
DEFAULT_LATTICE_POINT_LIMIT = 16
DEFAULT_BACKTRACKING_POINT_LIMIT = 12
DEFAULT_FM_MAX_VARIABLES = 8
DEFAULT_FM_ROW_LIMIT = 4000
DEFAULT_CORPUS_MAX_POINTS = 12
DEFAULT_WORKERS = 1

ENV_OVERRIDES = {
    CORPUS_ENV_VAR: "corpus_dir",
    "TROPLANAR_WORKERS": "workers",
    "TROPLANAR_POINT_LIMIT": "lattice_point_limit",
    "TROPLANAR_METRICS": "metrics_enabled",
}


def default_workers() -> int:
    """Physical core count, used when ``workers`` is set to 0."""
    return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1


def _coerce(value: Any, default: Any) -> Any:
    if isinstance(default, bool):
        if isinstance(value, str):
            return value.strip().lower() in ("1", "true", "yes", "on")
        return bool(value)
    if isinstance(default, int):
        return int(value)
    return value


@dataclass
class Config:
    """Application Configuration."""

    lattice_point_limit: int = DEFAULT_LATTICE_POINT_LIMIT
    backtracking_point_limit: int = DEFAULT_BACKTRACKING_POINT_LIMIT
    fm_max_variables: int = DEFAULT_FM_MAX_VARIABLES
    fm_row_limit: int = DEFAULT_FM_ROW_LIMIT
    regular_only: bool = True
    workers: int = DEFAULT_WORKERS
    corpus_dir: Optional[Path] = None
    corpus_max_points: int = DEFAULT_CORPUS_MAX_POINTS
    find_witness_on_classify: bool = True
    metrics_enabled: bool = False
    verbose: bool = False

    def __post_init__(self):
        if self.corpus_dir is not None and not isinstance(self.corpus_dir, Path):
            self.corpus_dir = Path(str(self.corpus_dir)).expanduser()
        if self.lattice_point_limit < 3:
            raise ValueError(f"lattice_point_limit must be at least 3, got {self.lattice_point_limit}")
        if self.backtracking_point_limit < 3:
            raise ValueError(f"backtracking_point_limit must be at least 3, got {self.backtracking_point_limit}")
        if self.workers < 0:
            raise ValueError(f"workers must be non-negative, got {self.workers}")
        if self.workers == 0:
            self.workers = default_workers()

    @property
    def uses_bundled_corpus(self) -> bool:
        return self.corpus_dir is None

    @classmethod
    def from_sources(
        cls, overrides: Optional[Dict[str, Any]] = None, config_path: Optional[Path] = None
    ) -> "Config":
        defaults = {f.name: f.default for f in fields(cls)}
        values: Dict[str, Any] = {}

        for key, value in load_config_from_file(config_path).items():
            if key not in defaults:
                logger.warning(f"Ignoring unknown config key '{key}'")
                continue
            values[key] = value

        for env_var, key in ENV_OVERRIDES.items():
            raw = os.getenv(env_var)
            if raw:
                logger.debug(f"Using {env_var}={raw}")
                values[key] = raw

        for key, value in (overrides or {}).items():
            if value is not None:
                values[key] = value

        coerced = {}
        for key, value in values.items():
            default = defaults[key]
            coerced[key] = value if default is None else _coerce(value, default)
        return cls(**coerced)
