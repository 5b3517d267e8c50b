"""
Logging configuration for the F2 PRNG workbench.

Console output goes to stderr; stdout is reserved for raw streams, CSV and JSON.
"""

import logging
import sys
from config import settings


# -1 quiet, 0 normal, 1 verbose
_CONSOLE_LEVELS = {-1: logging.WARNING, 0: logging.INFO, 1: logging.DEBUG}


def setup_logging(verbosity=0, log_file=None):
    """
    Set up the root logger for one workbench run.

    Args:
        verbosity (int): -1 for --quiet, 0 by default, 1 for --verbose
        log_file (Path): Path to log file (default: settings.LOG_FILE; False disables the file)

    Returns:
        logging.Logger: Configured root logger
    """
    if log_file is None:
        log_file = settings.LOG_FILE

    level = logging.DEBUG if verbosity > 0 else getattr(logging, settings.LOG_LEVEL.upper())
    logger = logging.getLogger()
    # the file handler keeps DEBUG records even when the console is quieter
    logger.setLevel(logging.DEBUG if log_file else level)
    logger.handlers = []

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(_CONSOLE_LEVELS[max(-1, min(1, verbosity))])
    if verbosity > 0:
        console_handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    else:
        console_handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
    logger.addHandler(console_handler)

    if log_file:
        try:
            file_handler = logging.FileHandler(log_file)
        except OSError as e:
            logger.warning(f"Could not create log file: {e}")
        else:
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(logging.Formatter(settings.LOG_FORMAT, datefmt=settings.LOG_DATE_FORMAT))
            logger.addHandler(file_handler)

    return logger


def log_invocation(command, args):
    """Record the subcommand and its parsed options, so a stored log reproduces the run."""
    options = {k: v for k, v in sorted(vars(args).items()) if k not in ('func', 'command') and v is not None}
    logging.getLogger('f2prng').debug(
        f"{settings.APP_NAME} {settings.VERSION}: {command} "
        + " ".join(f"{k}={v!r}" for k, v in options.items())
    )
