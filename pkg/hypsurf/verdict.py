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

"""Utilities for attaching verdicts to reports."""

import enum
from typing import TYPE_CHECKING

import pydantic

if TYPE_CHECKING:
    from hypsurf import report

"""Exit code of a run whose assertions all held."""
EXIT_OK = 0

"""Exit code of a run that could not start because its input was invalid."""
EXIT_INPUT = 1

"""Exit code of a run with a fatal result."""
EXIT_FATAL = 2


class Severity(enum.Enum):
    """How much a result matters."""

    NORMAL = "normal"
    WARNING = "warning"
    FATAL = "fatal"


class Result(pydantic.BaseModel):
    """A message attached to a report."""

    severity: Severity
    message: str


def normal(env: "report.Envelope", message: str) -> None:
    """Add a normal result to the envelope."""
    env.results.append(Result(severity=Severity.NORMAL, message=message))


def warning(env: "report.Envelope", message: str) -> None:
    """Add a warning result to the envelope."""
    env.results.append(Result(severity=Severity.WARNING, message=message))


def fatal(env: "report.Envelope", message: str) -> None:
    """Add a fatal result to the envelope."""
    env.results.append(Result(severity=Severity.FATAL, message=message))


def exit_code(env: "report.Envelope") -> int:
    """Return EXIT_FATAL if any result is fatal, EXIT_OK otherwise."""
    if any(r.severity == Severity.FATAL for r in env.results):
        return EXIT_FATAL
    return EXIT_OK
