"""
Logging configuration for grwtails.

Structured logging through structlog layered on the standard library, with a
human-readable console renderer for interactive use and JSON lines for CI and
batch runs. Everything goes to stderr so report bytes written to stdout stay
clean.
"""

import logging
import os
import sys
from typing import Any, Optional

import structlog


def configure_logging(
    level: str = "INFO",
    format_type: str = "auto",
    log_file: Optional[str] = None,
) -> None:
    """
    Configure logging for the application.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        format_type: Log format type ('auto', 'json', 'console')
                    - 'auto': JSON when stderr is not a terminal, console otherwise
                    - 'json': Always use JSON format
                    - 'console': Always use human-readable format
        log_file: Optional log file path
    """
    use_json = format_type == "json" or (
        format_type == "auto" and not sys.stderr.isatty()
    )
    renderer: Any = (
        structlog.processors.JSONRenderer(sort_keys=True)
        if use_json
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        format="%(message)s",
        level=getattr(logging, level.upper(), logging.INFO),
        handlers=handlers,
        force=True,
    )


def get_logger(name: str) -> Any:
    """
    Get a structured logger.

    Args:
        name: Logger name (usually __name__)

    Returns:
        structlog bound logger; usable before configure_logging() is called
    """
    return structlog.get_logger(name)


def setup_cli_logging(verbose: bool = False) -> None:
    """
    Setup logging for CLI context.

    GRWTAILS_LOG_LEVEL, GRWTAILS_LOG_FORMAT and GRWTAILS_LOG_FILE override the
    defaults; --verbose forces DEBUG.
    """
    level = "DEBUG" if verbose else os.environ.get("GRWTAILS_LOG_LEVEL", "WARNING")
    configure_logging(
        level=level,
        format_type=os.environ.get("GRWTAILS_LOG_FORMAT", "auto"),
        log_file=os.environ.get("GRWTAILS_LOG_FILE"),
    )
