"""
Structured JSON logging for the matrix-profile toolkit.

Each record is one JSON object carrying the run context (command, window
length, series length, ...) next to the message and its keyword data. Records
go to standard error; standard output is reserved for tables and profiles.
"""

import json
import logging
import logging.config
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, replace
from datetime import datetime, timezone
from typing import Any, Dict, Iterator, Mapping, Optional, Union


# third-party loggers capped at WARNING
QUIET_LOGGERS = ("numba",)


@dataclass
class LogContext:
    """Run context attached to every record."""

    command: Optional[str] = None
    component: Optional[str] = None
    processing_step: Optional[str] = None
    window: Optional[int] = None
    series_length: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {k: v for k, v in asdict(self).items() if v is not None}


def _error_fields(error: BaseException) -> Dict[str, Any]:
    return {
        "type": getattr(error, "error_type", type(error).__name__),
        "message": str(error),
        "details": getattr(error, "details", {})
    }


class StructuredLogger:
    """
    JSON logger with a run context and timed operations.

    Keyword arguments of every logging call become top-level fields of the
    record. Serialization is skipped entirely when the level is disabled, so
    debug calls inside the learning loop cost one level check.
    """

    def __init__(self, name: str, context: Optional[LogContext] = None):
        """
        Args:
            name: Logger name (typically __name__)
            context: Initial run context
        """
        self.logger = logging.getLogger(name)
        self.context = context or LogContext()

    def bind(self, **fields) -> "StructuredLogger":
        """A logger on the same channel with extra context fields."""
        known = {k: v for k, v in fields.items() if hasattr(self.context, k)}
        return StructuredLogger(self.logger.name, replace(self.context, **known))

    def _log(self, level: int, message: str, fields: Mapping[str, Any]) -> None:
        if not self.logger.isEnabledFor(level):
            return
        record = {
            "message": message,
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "context": self.context.to_dict()
        }
        record.update(fields)
        self.logger.log(level, json.dumps(record, default=str))

    def debug(self, message: str, **fields) -> None:
        self._log(logging.DEBUG, message, fields)

    def info(self, message: str, **fields) -> None:
        self._log(logging.INFO, message, fields)

    def warning(self, message: str, **fields) -> None:
        self._log(logging.WARNING, message, fields)

    def error(self, message: str, error: Optional[BaseException] = None, **fields) -> None:
        """Log an error; a library error contributes its type and details."""
        if error is not None:
            fields["error"] = _error_fields(error)
        self._log(logging.ERROR, message, fields)

    @contextmanager
    def timed_operation(self, operation: str, **fields) -> Iterator[Dict[str, Any]]:
        """
        Time a block and log its outcome.

        Yields a dict the block may fill with result fields (iterations,
        stored samples, ...); they are logged with the duration. A failing
        block is logged at WARNING and the exception propagates.
        """
        self.debug(f"Started {operation}", operation=operation, **fields)
        outcome: Dict[str, Any] = {}
        started = time.perf_counter()
        try:
            yield outcome
        except Exception as e:
            self.warning(
                f"Operation {operation} failed",
                operation=operation,
                duration_ms=round((time.perf_counter() - started) * 1000.0, 3),
                success=False,
                error=str(e),
                **fields
            )
            raise
        self.info(
            f"Operation {operation} completed",
            operation=operation,
            duration_ms=round((time.perf_counter() - started) * 1000.0, 3),
            success=True,
            **{**fields, **outcome}
        )

    def log_metrics(self, metrics: Dict[str, Union[int, float, str, None]], operation: Optional[str] = None) -> None:
        """Log a flat metrics mapping for one operation."""
        self.info(f"Metrics for {operation or 'operation'}", operation=operation, metrics=metrics)


def configure_logging(log_level: str = "WARNING", enable_structured: bool = True) -> None:
    """
    Install the process-wide handler on standard error.

    Args:
        log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL
        enable_structured: Emit bare JSON lines; otherwise prefix time, name and level
    """
    logging.config.dictConfig({
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "json": {"format": "%(message)s"},
            "text": {"format": "%(asctime)s %(name)s %(levelname)s %(message)s"}
        },
        "handlers": {
            "stderr": {
                "class": "logging.StreamHandler",
                "level": log_level,
                "formatter": "json" if enable_structured else "text",
                "stream": "ext://sys.stderr"
            }
        },
        "root": {"level": log_level, "handlers": ["stderr"]},
        "loggers": {name: {"level": "WARNING"} for name in QUIET_LOGGERS}
    })


def get_logger(name: str, context: Optional[LogContext] = None) -> StructuredLogger:
    """Structured logger for a module."""
    return StructuredLogger(name, context)
