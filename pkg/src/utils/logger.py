"""Logging for nqcount: diagnostics on stderr, optional log file, debug cross-checks."""

import logging
import sys
from pathlib import Path
from typing import Optional

LOG_LEVEL_PRODUCTION = logging.ERROR
LOG_LEVEL_DEBUG = logging.DEBUG

DEBUG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s'
PROD_FORMAT = '%(message)s'

# Per-character and per-row chatter; pinned to ERROR outside debug mode
NOISY_LOGGERS = [
    'src.gf',
    'src.charsum',
    'src.diagonal',
    'src.counter',
]

DEBUG = False


def debug_checks_enabled() -> bool:
    """Whether redundant closed-form cross-checks should run (set by --debug)."""
    return DEBUG


def setup_logger(debug: bool = False, log_file: Optional[str] = None) -> logging.Logger:
    """Configure the root logger.

    Args:
        debug (bool): DEBUG level with file:line records, and cross-checks on
        log_file (Optional[str]): Also append records to this file

    Returns:
        logging.Logger: The root logger
    """
    global DEBUG
    DEBUG = debug

    logger = logging.getLogger()
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)
    logger.setLevel(LOG_LEVEL_DEBUG if debug else LOG_LEVEL_PRODUCTION)

    # JSON reports own stdout
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(logging.Formatter(DEBUG_FORMAT if debug else PROD_FORMAT))
    logger.addHandler(console_handler)

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(logging.Formatter(DEBUG_FORMAT))
        logger.addHandler(file_handler)

    level = logging.NOTSET if debug else LOG_LEVEL_PRODUCTION
    for logger_name in NOISY_LOGGERS:
        logging.getLogger(logger_name).setLevel(level)

    return logger
