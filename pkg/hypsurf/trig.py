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

"""Scalar hyperbolic trigonometry: collars, cusp loops, pentagons and hexagons."""

import dataclasses
import math

from hypsurf import errors


def _positive(name: str, value: float) -> None:
    if not value > 0:
        raise errors.NonPositiveLengthError(name, value)


@dataclasses.dataclass(frozen=True)
class CollarParams:
    """The collar around a simple closed geodesic."""

    core_length: float

    def __post_init__(self):
        """Check the core length is positive."""
        _positive("core_length", self.core_length)

    @property
    def width(self) -> float:
        """The width of the embedded collar."""
        return collar_width(self.core_length)


def collar_width(length: float) -> float:
    """Return the collar width arcsinh(1/sinh(ℓ/2)) of a geodesic of length ℓ.

    Raises:
        NonPositiveLengthError if length is not positive.
    """
    _positive("length", length)
    return math.asinh(1 / math.sinh(length / 2))


def loop_from_horocycle(horocycle_length: float) -> float:
    """Return the length of the geodesic loop homotopic to a closed horocycle.

    A horocycle of length h through x is homotopic to a loop at x of length
    2·arcsinh(h/2).

    Raises:
        NonPositiveLengthError if horocycle_length is not positive.
    """
    _positive("horocycle_length", horocycle_length)
    return 2 * math.asinh(horocycle_length / 2)


def loop_from_horodisk_distance(distance: float) -> float:
    """Return the cusp loop length at a point from its signed distance to the area-2 horodisk.

    sinh(loop/2) = exp(distance), so points on the boundary of the area-2
    cusp region carry loops of length 2·arcsinh(1).
    """
    return 2 * math.asinh(math.exp(distance))


def displacement_from_offset(length: float, offset: float) -> float:
    """Return how far a hyperbolic element moves a point at distance offset from its axis.

    sinh(d/2) = sinh(ℓ/2)·cosh(offset).

    Raises:
        NonPositiveLengthError if length is not positive or offset is negative.
    """
    _positive("length", length)
    if offset < 0:
        raise errors.NonPositiveLengthError("offset", offset, allow_zero=True)
    return 2 * math.asinh(math.sinh(length / 2) * math.cosh(offset))


def apex_distance(opposite_half: float, half_angle: float) -> float:
    """Return the apex distance of a symmetric pentagon with four right angles.

    The pentagon has an apex of angle 2·half_angle and a base of length
    2·opposite_half; the two sides leaving the base at right angles are
    joined to the apex by perpendiculars. The result is the length of those
    perpendiculars, from the half-pentagon trirectangle:
    sinh²d = sinh²c + cot²ψ·cosh²c.

    Args:
        opposite_half: Half the length of the base, c > 0.
        half_angle: Half the apex angle, ψ in (0, π/2).

    Raises:
        DomainError outside the stated ranges.
    """
    if not opposite_half > 0:
        msg = f"opposite_half must be positive, got {opposite_half}"
        raise errors.DomainError(msg)
    if not 0 < half_angle < math.pi / 2:
        msg = f"half_angle must lie in (0, π/2), got {half_angle}"
        raise errors.DomainError(msg)

    sc = math.sinh(opposite_half)
    cc = math.cosh(opposite_half)
    cot = math.cos(half_angle) / math.sin(half_angle)
    return math.asinh(math.sqrt(sc * sc + cot * cot * cc * cc))


def seam_length(li: float, lj: float, lk: float) -> float:
    """Return the seam between boundaries i and j of a pair of pants.

    cosh s = (cosh(ℓi/2)·cosh(ℓj/2) + cosh(ℓk/2)) / (sinh(ℓi/2)·sinh(ℓj/2)),
    from the right-angled hexagon with alternate sides ℓi/2, ℓj/2, ℓk/2.

    Raises:
        NonPositiveLengthError if li or lj is not positive, or lk is negative.
    """
    _positive("li", li)
    _positive("lj", lj)
    if lk < 0:
        raise errors.NonPositiveLengthError("lk", lk, allow_zero=True)
    hi, hj, hk = li / 2, lj / 2, lk / 2
    value = (math.cosh(hi) * math.cosh(hj) + math.cosh(hk)) / (math.sinh(hi) * math.sinh(hj))
    return math.acosh(value)
