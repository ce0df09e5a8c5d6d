import logging
import sys

ROOT = "coxgame"
FORMAT = "%(name)s:%(levelname)s:%(message)s"


def get_logger(name: str) -> logging.Logger:
    """Module logger under the coxgame root."""
    return logging.getLogger(f"{ROOT}.{name}")


def configure(verbosity: int = 0) -> logging.Logger:
    """Attach one stderr handler; 0 -> WARNING, 1 -> INFO, 2+ -> DEBUG."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    root = logging.getLogger(ROOT)
    root.setLevel(level)
    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(FORMAT))
        root.addHandler(handler)
    return root
