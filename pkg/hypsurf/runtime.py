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

"""Utilities to fan a computation out over worker threads."""

import concurrent.futures
import os
from collections.abc import Callable, Iterable, Sequence
from typing import TypeVar

from hypsurf import errors

"""The environment variable holding the worker count."""
THREADS_ENV = "HYPSURF_THREADS"

"""The most workers used when HYPSURF_THREADS is unset."""
DEFAULT_MAX_WORKERS = 8

_override: int | None = None

T = TypeVar("T")
R = TypeVar("R")


def set_worker_count(count: int | None) -> None:
    """Override the worker count for this process.

    Args:
        count: The number of workers, or None to fall back to the environment.

    Raises:
        ConfigError if count is less than 1.
    """
    global _override  # noqa: PLW0603  # Process-wide setting, like the env var it overrides.
    if count is not None and count < 1:
        msg = f"must be at least 1, got {count}"
        raise errors.ConfigError("threads", msg)
    _override = count


def worker_count() -> int:
    """Return how many worker threads to use.

    An explicit set_worker_count wins, then HYPSURF_THREADS, then the CPU
    count capped at DEFAULT_MAX_WORKERS.
    """
    if _override is not None:
        return _override

    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return max(1, min(os.cpu_count() or 1, DEFAULT_MAX_WORKERS))

    try:
        count = int(raw)
    except ValueError as e:
        msg = f"must be an integer, got {raw!r}"
        raise errors.ConfigError(THREADS_ENV, msg) from e
    if count < 1:
        msg = f"must be at least 1, got {count}"
        raise errors.ConfigError(THREADS_ENV, msg)
    return count


def fan_out(fn: Callable[[T], R], parts: Iterable[T]) -> list[R]:
    """Apply fn to every partition and return the results in partition order.

    Args:
        fn: A pure function of one partition.
        parts: The partitions.

    Returns:
        One result per partition, in the order the partitions were supplied.

    Callers must merge the results with an order-independent reduction. With a
    single worker, or a single partition, fn runs on the calling thread.
    """
    items: Sequence[T] = list(parts)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(p) for p in items]

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
