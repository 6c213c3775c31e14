import logging

from rich.logging import RichHandler

from .config import settings

LOG_FORMAT = "%(message)s"


def configure_logging(level=None):
    """Installs a rich console handler on the package's root logger.

    Args:
        level (str | int, optional): Level name or number. Defaults to the configured LOG_LEVEL.

    Returns:
        logging.Logger: The package root logger.
    """
    level = level if level is not None else settings.LOG_LEVEL
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())

    root = logging.getLogger("core")
    root.setLevel(level)
    if not any(isinstance(h, RichHandler) for h in root.handlers):
        handler = RichHandler(show_path=False, rich_tracebacks=True)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
    return root
