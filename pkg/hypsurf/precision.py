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

"""Double and extended precision arithmetic for acceptance-grade sums."""

import enum
import math
from collections.abc import Iterable

import mpmath

"""Significant decimal digits used in extended precision."""
EXTENDED_DIGITS = 40


class Precision(enum.Enum):
    """Supported arithmetic precisions."""

    DOUBLE = "double"
    EXTENDED = "extended"


def length_from_trace(trace: float, precision: Precision = Precision.DOUBLE) -> float:
    """Return the translation length 2·arccosh(|trace|/2)."""
    t = abs(trace)
    if precision == Precision.EXTENDED:
        with mpmath.workdps(EXTENDED_DIGITS):
            return float(2 * mpmath.acosh(mpmath.mpf(t) / 2))
    return 2 * math.acosh(t / 2)


def trace_from_length(length: float, precision: Precision = Precision.DOUBLE) -> float:
    """Return the absolute trace 2·cosh(length/2)."""
    if precision == Precision.EXTENDED:
        with mpmath.workdps(EXTENDED_DIGITS):
            return float(2 * mpmath.cosh(mpmath.mpf(length) / 2))
    return 2 * math.cosh(length / 2)


def total(values: Iterable[float], precision: Precision = Precision.DOUBLE) -> float:
    """Sum values without depending on their order.

    Double precision uses math.fsum, which is exactly rounded. Extended
    precision accumulates in mpmath at EXTENDED_DIGITS digits.
    """
    if precision == Precision.EXTENDED:
        with mpmath.workdps(EXTENDED_DIGITS):
            return float(mpmath.fsum(mpmath.mpf(v) for v in values))
    return math.fsum(values)
