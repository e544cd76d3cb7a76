import sys
from loguru import logger

CONSOLE_FORMAT = "<green>{time:HH:mm:ss}</green> | <level>{level: <7}</level> | <cyan>{name}</cyan>:{function} - {message}"
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <7} | {name}:{function}:{line} - {message}"


def setup_logger(verbose: bool, save: bool, log_file: str, level: str = "INFO") -> None:
    """
    Route logicsup's log records.

    stdout belongs to the reports (JSON output must stay parseable), so the
    console sink writes to stderr. With neither sink requested the package
    is silenced entirely.
    """
    logger.remove()
    if not verbose and not save:
        logger.disable("logicsup")
        return
    logger.enable("logicsup")
    level = level.upper()
    if verbose:
        logger.add(sys.stderr, level=level, format=CONSOLE_FORMAT, colorize=None, enqueue=True)
    if save:
        logger.add(log_file, level=level, format=FILE_FORMAT, rotation="10 MB", retention=5, enqueue=True)
    logger.debug(f"logging at {level} (console={verbose}, file={log_file if save else None})")
