"""Logging for henselkit.

The CLI calls `setup_logging()` once. Two environment variables shape it:
- HENSELKIT_LOG_LEVEL (default WARNING, so certificates on stdout stay the only output)
- HENSELKIT_LOG_JSON (1 to emit JSON)

Records always go to stderr. Solver records may carry ``stage``, ``iteration`` or ``suite``
through ``extra=``; the JSON form keeps them as fields.
"""

from __future__ import annotations

import json
import logging
import os
import sys
from typing import Any

CONTEXT_FIELDS = ("stage", "iteration", "suite")
PLAIN_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class JsonFormatter(logging.Formatter):
    """One JSON object per record."""

    def format(self, record: logging.LogRecord) -> str:
        payload: dict[str, Any] = {
            "time": self.formatTime(record, datefmt="%Y-%m-%dT%H:%M:%S%z"),
            "level": record.levelname,
            "name": record.name,
            "message": record.getMessage(),
        }
        for key in CONTEXT_FIELDS:
            if hasattr(record, key):
                payload[key] = getattr(record, key)
        if record.exc_info:
            payload["exc_info"] = self.formatException(record.exc_info)
        return json.dumps(payload, ensure_ascii=False, default=str)


def _level(name: str | None) -> int:
    name = (name or os.getenv("HENSELKIT_LOG_LEVEL") or "WARNING").upper()
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.WARNING


def setup_logging(level: str | None = None) -> None:
    """Route every record to stderr; ``level`` overrides HENSELKIT_LOG_LEVEL."""
    handler = logging.StreamHandler(stream=sys.stderr)
    if os.getenv("HENSELKIT_LOG_JSON") == "1":
        handler.setFormatter(JsonFormatter())
    else:
        handler.setFormatter(logging.Formatter(PLAIN_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))

    root = logging.getLogger()
    root.handlers.clear()
    root.addHandler(handler)
    root.setLevel(_level(level))
