"""
Run log for hopfmorita. Logs are written to "logs/run.log" inside the cache
directory. Once enabled, logs triggered by
  - regular `logger.{debug,info,warning,error}` calls are written to the log file
  and printed to the console as usual;
  - `hopfmorita._internal.logging.log` calls (per-identity traces of the checkers)
  are only written to the log file.
"""
import os

from loguru import logger

from ..config import LOGS_DIR
from ..util import create_cached_dir_if_needed

_LEVEL = "HOPFMORITA_TRACE"
_LOGFILE_BASE = LOGS_DIR / "run.log"
_HANDLER_ID = None
_enabled: bool = False

# no = 9, right below loguru's DEBUG (10)
logger.level(name=_LEVEL, no=9)


def disable():
    """
    Disables the run log. enable() and disable() can be called multiple times.
    """
    global _enabled
    global _HANDLER_ID
    if _enabled:
        if _HANDLER_ID is not None:
            logger.remove(_HANDLER_ID)
        _enabled = False


def enable():
    """
    Enables the run log under hopfmorita.config.LOGS_DIR.

    The run log writes to the filesystem, so it additionally requires the env
    variable "HOPFMORITA_ENABLE_RUN_LOG" to be 1 or true. Otherwise enable() is a
    no-op.
    """
    global _enabled
    global _HANDLER_ID

    if os.environ.get("HOPFMORITA_ENABLE_RUN_LOG", "0").lower() not in ("1", "true"):
        return

    if not _enabled:
        create_cached_dir_if_needed()
        _HANDLER_ID = logger.add(
            _LOGFILE_BASE,
            level=_LEVEL,
            colorize=False,
            rotation="10 MB",
            retention=3,
            compression="zip",
        )
        _enabled = True


def is_enabled() -> bool:
    return _enabled


def log(*args, **kwargs):
    if not _enabled:
        return
    return logger.opt(depth=1).log(_LEVEL, *args, **kwargs)
