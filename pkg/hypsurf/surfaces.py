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

"""Concrete surfaces of Euler characteristic -1, and the funnel model."""

import dataclasses
import enum
import json
import math
import pathlib

import mpmath
import pydantic
from scipy import optimize

from hypsurf import core, errors, fuchsian, precision, trig

"""Area of every surface built here, by Gauss-Bonnet."""
AREA = 2 * math.pi

"""Slack allowed in the one-holed torus admissibility inequality."""
ADMISSIBILITY_TOLERANCE = 1e-9


def thrice_punctured_sphere() -> fuchsian.FuchsianGroup:
    """Return the level-2 congruence group, cusp-normalized with width 2.

    The generators are X: z ↦ z + 2 and γ: z ↦ -z/(2z - 1).
    """
    x = core.MoebiusMap(1.0, 2.0, 0.0, 1.0)
    gamma = core.MoebiusMap(-1.0, 0.0, 2.0, -1.0)
    return fuchsian.FuchsianGroup(
        generators=(x, gamma),
        labels=("X", "g"),
        cusp=fuchsian.CuspData(width=2.0),
        label="sphere3",
    )


@dataclasses.dataclass(frozen=True)
class OneHoledTorus:
    """A one-holed torus given by the traces of A, B and AB."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        """Check the traces are admissible."""
        x, y, z = self.x, self.y, self.z
        if not (x > 2 and y > 2 and z > 2):  # noqa: PLR2004
            msg = f"traces must exceed 2, got ({x}, {y}, {z})"
            raise errors.InadmissibleTracesError(msg)
        excess = x * x + y * y + z * z - x * y * z
        if excess > ADMISSIBILITY_TOLERANCE * max(1.0, x * y * z):
            msg = f"x² + y² + z² - xyz must be ≤ 0, got {excess} for ({x}, {y}, {z})"
            raise errors.InadmissibleTracesError(msg)

    @classmethod
    def symmetric(cls, boundary_length: float) -> "OneHoledTorus":
        """Return the torus with x = y = z and the given boundary length.

        Solves 3x² - x³ - 2 = -2·cosh(b/2) for x ≥ 3.

        Raises:
            NonPositiveLengthError if boundary_length is negative.
        """
        if boundary_length < 0:
            raise errors.NonPositiveLengthError("boundary_length", boundary_length, allow_zero=True)
        if boundary_length == 0:
            return cls(3.0, 3.0, 3.0)
        target = -2 * math.cosh(boundary_length / 2)

        def f(x: float) -> float:
            return 3 * x * x - x**3 - 2 - target

        hi = 4.0
        while f(hi) > 0:
            hi *= 2
        x = optimize.brentq(f, 3.0, hi, xtol=1e-14)
        return cls(x, x, x)

    @property
    def boundary_trace(self) -> float:
        """The commutator trace x² + y² + z² - xyz - 2."""
        x, y, z = self.x, self.y, self.z
        return x * x + y * y + z * z - x * y * z - 2

    @property
    def cusped(self) -> bool:
        """Whether the boundary is a cusp."""
        return abs(self.boundary_trace + 2) <= core.PARABOLIC_BAND * max(1.0, self.x * self.y * self.z)

    @property
    def boundary_length(self) -> float:
        """The boundary length, 0 for a cusp."""
        if self.cusped:
            return 0.0
        return 2 * math.acosh(abs(self.boundary_trace) / 2)

    def boundary_length_at(self, prec: precision.Precision) -> float:
        """The boundary length, with the commutator trace evaluated at prec.

        The trace x² + y² + z² - xyz - 2 cancels heavily near a cusp; extended
        precision evaluates it in mpmath from the exact float traces.
        """
        if prec == precision.Precision.DOUBLE or self.cusped:
            return self.boundary_length
        with mpmath.workdps(precision.EXTENDED_DIGITS):
            x, y, z = (mpmath.mpf(v) for v in (self.x, self.y, self.z))
            trace = x * x + y * y + z * z - x * y * z - 2
            return precision.length_from_trace(trace, prec)

    @property
    def commutator(self) -> fuchsian.Word:
        """The boundary word A B A⁻¹ B⁻¹."""
        return fuchsian.Word((1, 2, -1, -2))


def one_holed_torus(x: float, y: float, z: float) -> fuchsian.FuchsianGroup:
    """Return a group ⟨A, B⟩ with tr A = x, tr B = y and tr AB = z.

    A is diagonal, so its axis is (0, ∞).

    Raises:
        InadmissibleTracesError if the traces do not describe a one-holed torus.
    """
    torus = OneHoledTorus(x, y, z)
    lam = (x + math.sqrt(x * x - 4)) / 2
    p = (z - y / lam) / (lam - 1 / lam)
    s = y - p
    qr = p * s - 1
    if qr > 0:
        q = r = math.sqrt(qr)
    else:
        q = math.sqrt(-qr)
        r = -q
    a = core.MoebiusMap.from_entries(lam, 0.0, 0.0, 1 / lam)
    b = core.MoebiusMap.from_entries(p, q, r, s)
    return fuchsian.FuchsianGroup(
        generators=(a, b),
        labels=("A", "B"),
        label=f"torus1({torus.x:g},{torus.y:g},{torus.z:g})",
    )


@dataclasses.dataclass(frozen=True)
class PairOfPants:
    """A pair of pants given by its three boundary lengths, 0 meaning a cusp."""

    l1: float
    l2: float
    l3: float

    def __post_init__(self):
        """Check the lengths are non-negative."""
        for name, v in (("l1", self.l1), ("l2", self.l2), ("l3", self.l3)):
            if not v >= 0:
                raise errors.NonPositiveLengthError(name, v, allow_zero=True)

    @property
    def lengths(self) -> tuple[float, float, float]:
        """The three boundary lengths."""
        return (self.l1, self.l2, self.l3)

    @property
    def traces(self) -> tuple[float, float, float]:
        """The absolute boundary traces 2·cosh(ℓ/2)."""
        return tuple(2 * math.cosh(v / 2) for v in self.lengths)

    @property
    def boundary_words(self) -> tuple[fuchsian.Word, fuchsian.Word, fuchsian.Word]:
        """Words for the three boundaries: g1, g2 and (g1 g2)⁻¹."""
        return (fuchsian.Word((1,)), fuchsian.Word((2,)), fuchsian.Word((-2, -1)))

    def seam(self, i: int, j: int) -> float:
        """Return the seam length between boundaries i and j (0-based)."""
        k = 3 - i - j
        ls = self.lengths
        return trig.seam_length(ls[i], ls[j], ls[k])


def pair_of_pants(l1: float, l2: float, l3: float) -> fuchsian.FuchsianGroup:
    """Return a group ⟨g1, g2⟩ whose boundaries g1, g2, (g1 g2)⁻¹ have the given lengths.

    g1 = [[x1, 1], [-1, 0]] and g2 = [[0, t], [-1/t, x2]] with
    xi = 2·cosh(ℓi/2) and t + 1/t = x3, so tr(g1 g2) = -x3.

    Raises:
        NonPositiveLengthError if a length is negative.
    """
    pants = PairOfPants(l1, l2, l3)
    x1, x2, x3 = pants.traces
    t = (x3 + math.sqrt(max(x3 * x3 - 4, 0.0))) / 2
    g1 = core.MoebiusMap(x1, 1.0, -1.0, 0.0)
    g2 = core.MoebiusMap(0.0, t, -1 / t, x2)
    return fuchsian.FuchsianGroup(
        generators=(g1, g2),
        labels=("P", "Q"),
        label=f"pants({l1:g},{l2:g},{l3:g})",
    )


@dataclasses.dataclass(frozen=True)
class FunnelData:
    """A funnel and the conformal modulus of the annulus it is."""

    boundary_length: float
    modulus: float


def funnel_modulus(boundary_length: float) -> FunnelData:
    """Return the modulus π²/ℓ of the funnel bounded by a geodesic of length ℓ.

    Raises:
        NonPositiveLengthError if boundary_length is not positive.
    """
    if not boundary_length > 0:
        raise errors.NonPositiveLengthError("boundary_length", boundary_length)
    return FunnelData(boundary_length=boundary_length, modulus=math.pi**2 / boundary_length)


def core_length_from_modulus(modulus: float) -> float:
    """Return the boundary length of the funnel of the given modulus.

    Raises:
        NonPositiveLengthError if modulus is not positive.
    """
    if not modulus > 0:
        raise errors.NonPositiveLengthError("modulus", modulus)
    return math.pi**2 / modulus


def funnel_group(boundary_length: float) -> fuchsian.FuchsianGroup:
    """Return ⟨z ↦ αz⟩ with α = e^ℓ, whose quotient of Re z > 0 is the funnel.

    Raises:
        NonPositiveLengthError if boundary_length is not positive.
    """
    if not boundary_length > 0:
        raise errors.NonPositiveLengthError("boundary_length", boundary_length)
    return fuchsian.FuchsianGroup(
        generators=(core.MoebiusMap.dilation(math.exp(boundary_length)),),
        labels=("T",),
        label=f"funnel({boundary_length:g})",
    )


@dataclasses.dataclass(frozen=True)
class ContractionData:
    """The hyperbolic cylinder before and after a round annulus is added to one funnel."""

    core_before: float
    core_after: float
    added_modulus: float

    @property
    def factor(self) -> float:
        """The ratio core_after / core_before, in (0, 1)."""
        return self.core_after / self.core_before


def _strip_extension(boundary_length: float, added_modulus: float) -> float:
    if not boundary_length > 0:
        raise errors.NonPositiveLengthError("boundary_length", boundary_length)
    if not added_modulus > 0:
        raise errors.NonPositiveLengthError("added_modulus", added_modulus)
    return added_modulus * boundary_length / (2 * math.pi)


def enlarge_funnel(boundary_length: float, added_modulus: float) -> ContractionData:
    """Add an annulus of modulus δ to one funnel of the cylinder of core ℓ.

    The cylinder H/⟨z ↦ e^ℓ z⟩ has modulus 2π²/ℓ, so the enlarged one has
    core 2π²/(2π²/ℓ + δ).

    Raises:
        NonPositiveLengthError if either argument is not positive.
    """
    _strip_extension(boundary_length, added_modulus)
    after = 2 * math.pi**2 / (2 * math.pi**2 / boundary_length + added_modulus)
    return ContractionData(core_before=boundary_length, core_after=after, added_modulus=added_modulus)


def inclusion_conformal_factor(boundary_length: float, added_modulus: float, angle: float) -> float:
    """Return how much the inclusion into the enlarged cylinder shrinks lengths at a point.

    In log coordinates the cylinder is the strip 0 < θ < π and the enlarged
    one is -δ' < θ < π with δ' = δℓ/(2π). The factor is the ratio of the two
    strip metrics at polar angle θ, (π/H)·sin θ / sin(π(θ + δ')/H) with
    H = π + δ'. It lies in (0, 1).

    Raises:
        NonPositiveLengthError if boundary_length or added_modulus is not positive.
        DomainError if angle is not in (0, π).
    """
    extra = _strip_extension(boundary_length, added_modulus)
    if not 0 < angle < math.pi:
        msg = f"angle must lie in (0, π), got {angle}"
        raise errors.DomainError(msg)
    height = math.pi + extra
    return (math.pi / height) * math.sin(angle) / math.sin(math.pi * (angle + extra) / height)


class SurfaceKind(enum.Enum):
    """The kinds of surface the command line can build."""

    SPHERE3 = "sphere3"
    TORUS1 = "torus1"
    PANTS = "pants"


class SurfaceSpec(pydantic.BaseModel):
    """A surface as given on the command line or in a JSON file.

    torus1 takes either three traces or a single boundary length (the
    symmetric torus). pants takes three boundary lengths.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    kind: SurfaceKind
    params: tuple[float, ...] = ()

    @pydantic.model_validator(mode="after")
    def check_params(self) -> "SurfaceSpec":
        counts = {
            SurfaceKind.SPHERE3: (0,),
            SurfaceKind.TORUS1: (1, 3),
            SurfaceKind.PANTS: (3,),
        }[self.kind]
        if len(self.params) not in counts:
            msg = f"{self.kind.value} takes {' or '.join(map(str, counts))} parameters, got {len(self.params)}"
            raise ValueError(msg)
        return self

    @pydantic.computed_field
    @property
    def area(self) -> float:
        """The area, 2π for every kind."""
        return AREA

    @classmethod
    def parse(cls, text: str) -> "SurfaceSpec":
        """Parse "sphere3", "pants:a,b,c", "torus1:x,y,z", "torus1:b=L" or a JSON file path.

        Raises:
            ConfigError if the text is not a valid surface.
        """
        path = pathlib.Path(text)
        if text.endswith(".json"):
            try:
                return cls.model_validate(json.loads(path.read_text()))
            except (OSError, ValueError) as e:
                raise errors.ConfigError("surface", f"cannot load {text}: {e}") from e

        kind, _, rest = text.partition(":")
        params: list[float] = []
        try:
            for part in filter(None, rest.split(",")):
                params.append(float(part.removeprefix("b=")))
            return cls(kind=SurfaceKind(kind), params=tuple(params))
        except ValueError as e:
            raise errors.ConfigError("surface", f"cannot parse {text!r}: {e}") from e

    @property
    def label(self) -> str:
        """The compact string form of the spec."""
        if not self.params:
            return self.kind.value
        return f"{self.kind.value}:{','.join(f'{v:g}' for v in self.params)}"

    def torus(self) -> OneHoledTorus:
        """Return the one-holed torus this spec describes."""
        if self.kind != SurfaceKind.TORUS1:
            raise errors.ConfigError("surface", f"{self.label} is not a one-holed torus")
        if len(self.params) == 1:
            return OneHoledTorus.symmetric(self.params[0])
        return OneHoledTorus(*self.params)

    def pants(self) -> PairOfPants:
        """Return the pair of pants this spec describes."""
        if self.kind != SurfaceKind.PANTS:
            raise errors.ConfigError("surface", f"{self.label} is not a pair of pants")
        return PairOfPants(*self.params)

    def build(self) -> fuchsian.FuchsianGroup:
        """Return a group uniformizing the surface."""
        match self.kind:
            case SurfaceKind.SPHERE3:
                return thrice_punctured_sphere()
            case SurfaceKind.TORUS1:
                t = self.torus()
                return one_holed_torus(t.x, t.y, t.z)
            case SurfaceKind.PANTS:
                return pair_of_pants(*self.params)
