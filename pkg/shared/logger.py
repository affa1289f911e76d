"""
Logging Configuration
=====================

Run logs for long commands (``census``, ``verify-paper``). Console output is
left to the CLI's RichHandler on the root logger; this adds an optional log
file and an in-memory tail that is printed when a run fails.
"""

import logging
import sys
from pathlib import Path
from typing import Optional, Tuple

from shared.log_handler import MemoryLogHandler

FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logger(
    name: str = "troplanar",
    log_file: Optional[Path] = None,
    verbose: bool = False,
    stream: bool = False,
    capacity: int = 200,
) -> Tuple[logging.Logger, MemoryLogHandler]:
    """Configure and return a logger instance and its memory handler.

    Calling again for the same name reuses the existing memory handler.
    """
    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)

    for handler in logger.handlers:
        if isinstance(handler, MemoryLogHandler):
            return logger, handler

    formatter = logging.Formatter(FORMAT, datefmt="%H:%M:%S")

    if stream:
        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setLevel(logging.DEBUG if verbose else logging.INFO)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    memory_handler = MemoryLogHandler(capacity)
    memory_handler.setLevel(logging.DEBUG)
    memory_handler.setFormatter(formatter)
    logger.addHandler(memory_handler)

    return logger, memory_handler


def teardown_logger(logger: logging.Logger) -> None:
    """Detach and close every handler added by setup_logger."""
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
