"""
Discovery and YAML I/O for ``troplanar_config.yaml``.

The file is looked up in the working directory first, then in the user
config directory. ``config init`` and ``config set`` write to the user
config directory when neither exists.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import platformdirs
import yaml

logger = logging.getLogger(__name__)

APP_DIR_NAME = "troplanar"
CONFIG_FILE_NAME = "troplanar_config.yaml"

DEFAULT_CONFIG_TEXT = """# troplanar configuration
# =======================

# --- Enumeration limits ---
lattice_point_limit: 16        # flip-graph enumeration refuses larger polygons
backtracking_point_limit: 12   # the slow cross-check enumerator

# --- Regularity ---
fm_max_variables: 8            # Fourier-Motzkin is only tried on small systems
fm_row_limit: 4000             # abandon elimination past this many inequalities

# --- Census / oracle ---
regular_only: true             # census keeps only regular triangulations
corpus_max_points: 12          # generated corpus for genus 1-4
workers: 1                     # 0 = one per physical core
# corpus_dir: /path/to/polygons   (or set TROPLANAR_CORPUS)
metrics_enabled: false

# --- Classifier ---
find_witness_on_classify: true
"""


def user_config_path() -> Path:
    return Path(platformdirs.user_config_dir(APP_DIR_NAME)) / CONFIG_FILE_NAME


def get_config_path() -> Optional[Path]:
    """The first existing of ``./troplanar_config.yaml`` and the user config file, else None."""
    for candidate in (Path(CONFIG_FILE_NAME), user_config_path()):
        if candidate.exists():
            logger.debug(f"Using config file {candidate}")
            return candidate
    return None


def create_default_config(path: Path) -> None:
    """Write the commented default configuration."""
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(DEFAULT_CONFIG_TEXT)
        logger.info(f"Created default configuration at {path}")
    except OSError as e:
        logger.error(f"Failed to create default config at {path}: {e}")


def ensure_config_exists() -> Path:
    """Return the config file in use, creating the default one in the user config dir if there is none."""
    path = get_config_path()
    if path is None:
        path = user_config_path()
        create_default_config(path)
    return path


def load_config_from_file(config_path: Optional[Path] = None) -> Dict[str, Any]:
    """
    Load the mapping stored in a YAML config file.

    Args:
        config_path: Specific path to load. If None, resolves using get_config_path().

    Returns:
        The mapping, or an empty dict if the file is missing, empty or unreadable.
    """
    path = config_path or get_config_path()
    if path is None or not path.exists():
        logger.debug("No configuration file found.")
        return {}
    try:
        data = yaml.safe_load(path.read_text())
    except (OSError, yaml.YAMLError) as e:
        logger.error(f"Error loading config file {path}: {e}")
        return {}
    if data is None:
        return {}
    if not isinstance(data, dict):
        logger.error(f"Config file {path} does not contain a mapping")
        return {}
    logger.debug(f"Loaded configuration from {path}")
    return data


def save_config_file(path: Path, values: Mapping[str, Any]) -> None:
    """Write ``values`` as YAML. Comments of an existing file are not kept."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(yaml.safe_dump(dict(values), default_flow_style=False))
