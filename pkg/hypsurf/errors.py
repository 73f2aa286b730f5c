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

"""Errors raised by hypsurf.

Every error derives from HypsurfError and from the closest builtin exception,
so callers may catch either.
"""


class HypsurfError(Exception):
    """Base class for all hypsurf errors."""


class DomainError(HypsurfError, ValueError):
    """An argument lies outside the domain of a formula."""


class NonPositiveLengthError(DomainError):
    """A length or modulus that must be positive (or non-negative) is not."""

    def __init__(self, name: str, value: float, *, allow_zero: bool = False):
        """Create a new NonPositiveLengthError.

        Args:
            name: The name of the offending argument.
            value: The offending value.
            allow_zero: Whether zero would have been accepted.
        """
        self.name = name
        self.value = value
        bound = "non-negative" if allow_zero else "positive"
        super().__init__(f"{name} must be {bound}, got {value!r}")


class DegenerateMapError(DomainError):
    """A matrix has non-positive determinant and is not a Möbius map of H."""


class NotHyperbolicError(HypsurfError, ValueError):
    """An element that must be hyperbolic is not."""


class NotParabolicError(HypsurfError, ValueError):
    """An element that must be parabolic is not."""


class FixesInfinityError(HypsurfError, ValueError):
    """A map fixes infinity, so it has no isometric circle."""


class IndexOutOfRangeError(HypsurfError, IndexError):
    """A word refers to a generator the group does not have."""


class NotFreeError(HypsurfError, ValueError):
    """An operation needs a group flagged as free."""


class NoCuspError(HypsurfError, ValueError):
    """An operation needs a cusp-normalized group."""


class EmptyBallError(HypsurfError, ValueError):
    """A word ball holds no word the operation can use."""


class NotSimpleError(HypsurfError, ValueError):
    """An operation needs a class certified simple."""


class InadmissibleTracesError(HypsurfError, ValueError):
    """A trace triple does not describe a hyperbolic one-holed torus."""


class CuspedBoundaryError(HypsurfError, ValueError):
    """An operation needs geodesic boundary but a boundary is a cusp."""


class NoHyperbolicClassError(HypsurfError, ValueError):
    """No hyperbolic conjugacy class was found within the search bounds."""


class DegenerateRegionError(HypsurfError, ValueError):
    """A sampling region is empty or leaves the upper half-plane."""


class PreconditionViolatedError(HypsurfError, ValueError):
    """A named precondition of a bound does not hold."""

    def __init__(self, clause: str, detail: str):
        """Create a new PreconditionViolatedError.

        Args:
            clause: The name of the failed precondition clause.
            detail: A human readable explanation.
        """
        self.clause = clause
        super().__init__(f"precondition {clause!r} violated: {detail}")


class PrecisionLossError(HypsurfError, ArithmeticError):
    """A closed-form identity failed to hold within tolerance."""


class ConfigError(HypsurfError, ValueError):
    """A run configuration or input document could not be parsed."""

    def __init__(self, field: str, detail: str):
        """Create a new ConfigError.

        Args:
            field: The dotted path of the offending field.
            detail: A human readable explanation.
        """
        self.field = field
        super().__init__(f"{field}: {detail}")
