import difflib
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, Optional

from rich.console import Console
from rich.table import Table

from shared.config import (
    DEFAULT_BACKTRACKING_POINT_LIMIT,
    DEFAULT_CORPUS_MAX_POINTS,
    DEFAULT_FM_MAX_VARIABLES,
    DEFAULT_FM_ROW_LIMIT,
    DEFAULT_LATTICE_POINT_LIMIT,
    DEFAULT_WORKERS,
    Config,
)
from shared.config_loader import get_config_path, load_config_from_file, save_config_file, user_config_path

console = Console()

CONFIG_KEYS: Dict[str, Dict[str, Any]] = {
    "lattice_point_limit": {
        "description": "Largest polygon (in lattice points) the flip enumerator accepts",
        "default": DEFAULT_LATTICE_POINT_LIMIT,
    },
    "backtracking_point_limit": {
        "description": "Largest polygon for the backtracking cross-check",
        "default": DEFAULT_BACKTRACKING_POINT_LIMIT,
    },
    "fm_max_variables": {
        "description": "Try Fourier-Motzkin only up to this many height variables",
        "default": DEFAULT_FM_MAX_VARIABLES,
    },
    "fm_row_limit": {"description": "Abandon Fourier-Motzkin past this many rows", "default": DEFAULT_FM_ROW_LIMIT},
    "regular_only": {"description": "Census keeps only regular triangulations", "default": True},
    "workers": {"description": "Census worker processes (0 = one per physical core)", "default": DEFAULT_WORKERS},
    "corpus_dir": {"description": "Directory of curated polygons and witnesses", "default": None},
    "corpus_max_points": {
        "description": "Lattice point bound of the generated polygon corpus",
        "default": DEFAULT_CORPUS_MAX_POINTS,
    },
    "find_witness_on_classify": {"description": "Search a witness for troplanar verdicts", "default": True},
    "metrics_enabled": {"description": "Collect Prometheus census metrics", "default": False},
    "verbose": {"description": "Enable verbose logging", "default": False},
}


def convert_value(key: str, value: str) -> Any:
    """Convert a command-line string to the type of the key's default."""
    default = CONFIG_KEYS[key]["default"]
    if isinstance(default, bool):
        if value.lower() in ("true", "yes", "1"):
            return True
        if value.lower() in ("false", "no", "0"):
            return False
        raise ValueError("Must be boolean")
    if isinstance(default, int):
        return int(value)
    if default is None and value.lower() in ("none", "null", ""):
        return None
    return value


class ConfigManager:
    def __init__(self, config_path: Optional[Path] = None):
        self.config_path: Path = config_path or get_config_path() or user_config_path()

    def _load_config(self) -> Dict[str, Any]:
        return load_config_from_file(self.config_path)

    def _save_config(self, config: Dict[str, Any]):
        save_config_file(self.config_path, config)

    def list_keys(self):
        """Display a table of available configuration keys."""
        table = Table(title="Configuration Keys")
        table.add_column("Key", style="cyan")
        table.add_column("Description", style="magenta")
        table.add_column("Default", style="green")
        table.add_column("Current Value", style="yellow")

        current_config = self._load_config()
        for key, info in CONFIG_KEYS.items():
            current_val = current_config.get(key, "Not Set")
            table.add_row(key, info["description"], str(info["default"]), str(current_val))

        console.print(table)
        console.print(f"\n[dim]Config file: {self.config_path}[/dim]")

    def set_value(self, key: str, value: str) -> bool:
        """Set a configuration value; returns False when the key or value is rejected."""
        if key not in CONFIG_KEYS:
            console.print(f"[red]Error: Unknown key '{key}'.[/red]")
            matches = difflib.get_close_matches(key, CONFIG_KEYS.keys(), n=1, cutoff=0.6)
            if matches:
                console.print(f"[yellow]Did you mean '{matches[0]}'? [/yellow]")
            else:
                self.list_keys()
            return False

        try:
            val = convert_value(key, value)
        except ValueError:
            console.print(f"[red]Error: Invalid value for {key}. Expected type matching default.[/red]")
            return False

        config = self._load_config()
        candidate = {**config, key: val}
        try:
            Config(**{k: v for k, v in candidate.items() if k in CONFIG_KEYS})
        except (ValueError, TypeError) as e:
            console.print(f"[red]Error: {e}[/red]")
            return False

        config[key] = val
        self._save_config(config)
        console.print(f"[green]Set '{key}' to '{val}'[/green]")
        return True

    def show(self):
        """Display the effective configuration after file, environment and defaults are merged."""
        effective = Config.from_sources(config_path=self.config_path)
        table = Table(title="Effective Configuration")
        table.add_column("Key", style="cyan")
        table.add_column("Value", style="yellow")
        for key, value in asdict(effective).items():
            table.add_row(key, str(value))
        console.print(table)
