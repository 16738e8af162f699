"""
Logging setup shared by the CLI and the HTTP app.

Engine modules only create module-level loggers; handlers are installed
here, once, by the entry points.
"""
import logging
import sys
from typing import Optional

from app.core.config import get_log_level

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: Optional[str] = None) -> None:
    """
    Install a single stderr handler on the root "app" logger.

    Args:
        level: Logging level name; defaults to FLP_LOG_LEVEL
    """
    root = logging.getLogger("app")
    root.setLevel(level or get_log_level())
    if not any(getattr(h, "_flp_handler", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._flp_handler = True
        root.addHandler(handler)
