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

"""Report envelopes and their JSON and CSV encodings."""

import csv
import dataclasses
import json
from collections.abc import Iterable
from typing import TextIO

import pydantic

from hypsurf import verdict
from hypsurf.__version__ import __version__


def tool() -> str:
    """Return the tool version string embedded in every report."""
    return f"hypsurf {__version__}"


class Envelope(pydantic.BaseModel):
    """What a command writes: its configuration, its report and any results."""

    tool: str = pydantic.Field(default_factory=tool)
    command: str
    config: dict = {}
    report: dict = {}
    results: list[verdict.Result] = []


def to_dict(source: dict | pydantic.BaseModel) -> dict:
    """Convert a report to a JSON-compatible dict.

    The source can be a dictionary, a Pydantic model or a dataclass.
    """
    match source:
        case pydantic.BaseModel():
            return source.model_dump(mode="json")
        case dict():
            return dict(source)
        case _ if dataclasses.is_dataclass(source) and not isinstance(source, type):
            return json.loads(json.dumps(dataclasses.asdict(source), default=str))
        case _:
            t = type(source)
            msg = f"Unsupported type: {t}"
            raise TypeError(msg)


def update(env: Envelope, source: dict | pydantic.BaseModel) -> None:
    """Update the report held by an envelope.

    The semantics are the same as a dictionary's update method: fields that
    don't exist are added and fields that exist are overwritten.
    """
    env.report.update(to_dict(source))


def dumps(env: Envelope) -> str:
    """Encode an envelope as canonical JSON, with sorted keys.

    Equal envelopes always encode to the same bytes.
    """
    return json.dumps(env.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def write_csv(f: TextIO, rows: Iterable[dict]) -> int:
    """Write one CSV line per row, with the first row's keys as header.

    Returns:
        The number of rows written.
    """
    rows = list(rows)
    if not rows:
        return 0
    w = csv.DictWriter(f, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return len(rows)
