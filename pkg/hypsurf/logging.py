# Copyright 2024 The hypsurf Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Structured logging for hypsurf.

Logs always go to stderr so that reports written to stdout stay
byte-identical between runs.
"""

import enum
import logging
import sys
from typing import TextIO

import numpy as np
import structlog


class Level(enum.Enum):
    """Supported log levels, named as on the command line."""

    DISABLED = "disabled"
    DEBUG = "debug"
    INFO = "info"


def _plain_numbers(logger, method_name, event_dict):  # noqa: ARG001  # structlog processor signature.
    """Turn numpy scalars and arrays into plain Python numbers and lists."""
    for key, value in event_dict.items():
        if isinstance(value, np.generic):
            event_dict[key] = value.item()
        elif isinstance(value, np.ndarray):
            event_dict[key] = value.tolist()
    return event_dict


def configure(level: Level = Level.INFO, stream: TextIO | None = None) -> None:
    """Configure logging.

    Args:
        level: What log level to enable.
        stream: Where to write logs. Defaults to stderr.

    Must be called before calling get_logger. Debug logs are rendered for
    humans, with timestamps. Info logs are JSON lines with sorted keys.
    """

    def dropper(logger, method_name, event_dict):  # noqa: ARG001  # We need this signature.
        raise structlog.DropEvent

    if level == Level.DISABLED:
        structlog.configure(processors=[dropper])
        return

    out = structlog.PrintLoggerFactory(file=stream if stream is not None else sys.stderr)
    processors = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.processors.CallsiteParameterAdder(
            {
                structlog.processors.CallsiteParameter.MODULE,
                structlog.processors.CallsiteParameter.LINENO,
            }
        ),
        _plain_numbers,
    ]

    if level == Level.DEBUG:
        structlog.configure(
            processors=[*processors, structlog.processors.TimeStamper(fmt="iso"), structlog.dev.ConsoleRenderer()],
            wrapper_class=structlog.make_filtering_bound_logger(logging.DEBUG),
            logger_factory=out,
        )
        return

    structlog.configure(
        processors=[
            *processors,
            structlog.processors.dict_tracebacks,
            structlog.processors.TimeStamper(key="ts"),
            structlog.processors.EventRenamer(to="msg"),
            structlog.processors.JSONRenderer(sort_keys=True),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(logging.INFO),
        logger_factory=out,
    )


def bind_run(**context) -> None:
    """Attach context, such as the command and surface, to every later log event."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(**context)


def get_logger() -> structlog.stdlib.BoundLogger:
    """Get a logger. Events carry whatever bind_run attached.

    Call configure first, or events go to structlog's default console output.
    """
    return structlog.stdlib.get_logger()
