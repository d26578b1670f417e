"""
Logging setup
rich console handler on the cvnn_cost logger, plus an optional plain log file
"""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = "cvnn_cost"


def setup_logging(level: str = "INFO", file: Optional[str] = None) -> logging.Logger:
    """Configure the package logger once; repeated calls replace the handlers"""
    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(getattr(logging, str(level).upper(), logging.INFO))
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    console = RichHandler(console=Console(stderr=True), show_path=False, markup=False)
    console.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(console)

    if file:
        file_handler = logging.FileHandler(file, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger
