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

"""Points, Möbius maps, geodesics and horodisks of the upper half-plane.

Every type here is an immutable value and every function is pure. Boundary
points carry an explicit infinity tag; infinity is never a large float.
"""

import dataclasses
import enum
import math

import numpy as np

from hypsurf import errors

"""Half-width of the band around |tr| = 2 classified as parabolic."""
PARABOLIC_BAND = 1e-10

"""Allowed relative deviation of ad - bc from 1."""
DET_TOLERANCE = 1e-12

"""Relative size below which a lower-left entry c counts as zero."""
INFINITY_TOLERANCE = 1e-14

"""Allowed entrywise deviation from the identity for a map to be trivial."""
IDENTITY_TOLERANCE = 1e-9

"""Sine of the angle below which two boundary points coincide."""
ENDPOINT_TOLERANCE = 1e-12

"""Relative tolerance of horodisk tangency."""
TANGENCY_TOLERANCE = 1e-9

"""Allowed relative residual of the displacement factorization."""
FACTORIZATION_TOLERANCE = 1e-10


@dataclasses.dataclass(frozen=True)
class HPoint:
    """A point x + iy of the upper half-plane."""

    x: float
    y: float

    def __post_init__(self):
        """Check the point lies strictly above the real line."""
        if not (math.isfinite(self.x) and math.isfinite(self.y)) or self.y <= 0:
            msg = f"point ({self.x}, {self.y}) is not in the upper half-plane"
            raise errors.DomainError(msg)

    @classmethod
    def from_complex(cls, z: complex) -> "HPoint":
        """Create a point from a complex number."""
        return cls(float(z.real), float(z.imag))

    @property
    def z(self) -> complex:
        """The point as a complex number."""
        return complex(self.x, self.y)


@dataclasses.dataclass(frozen=True)
class BoundaryPoint:
    """A point of the real line, or the point at infinity when value is None."""

    value: float | None = None

    def __post_init__(self):
        """Check a finite boundary point is a finite real."""
        if self.value is not None and not math.isfinite(self.value):
            msg = "use BoundaryPoint() for the point at infinity"
            raise errors.DomainError(msg)

    @classmethod
    def from_homogeneous(cls, u: float, v: float) -> "BoundaryPoint":
        """Create a boundary point from homogeneous coordinates [u : v]."""
        norm = math.hypot(u, v)
        if norm == 0:
            msg = "homogeneous coordinates must not both vanish"
            raise errors.DomainError(msg)
        if abs(v) <= INFINITY_TOLERANCE * norm:
            return INFINITY
        return cls(u / v)

    @property
    def is_infinite(self) -> bool:
        """Whether this is the point at infinity."""
        return self.value is None

    def homogeneous(self) -> tuple[float, float]:
        """Return unit-free homogeneous coordinates [u : v]."""
        if self.value is None:
            return (1.0, 0.0)
        return (self.value, 1.0)

    def close(self, other: "BoundaryPoint", tolerance: float = ENDPOINT_TOLERANCE) -> bool:
        """Whether two boundary points coincide within tolerance."""
        u1, v1 = self.homogeneous()
        u2, v2 = other.homogeneous()
        sine = abs(u1 * v2 - v1 * u2) / (math.hypot(u1, v1) * math.hypot(u2, v2))
        return sine <= tolerance

    def __str__(self) -> str:
        """Format the point, using ∞ for infinity."""
        return "∞" if self.value is None else repr(self.value)


INFINITY = BoundaryPoint()


@dataclasses.dataclass(frozen=True)
class MoebiusMap:
    """The map z ↦ (az + b)/(cz + d) with ad - bc = 1.

    The signed SL(2,R) lift is stored, so signed trace identities hold for
    products. Two maps are the same isometry when they agree up to sign; use
    equal_up_to_sign or key to compare them.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        """Check the entries are finite with unit determinant."""
        entries = (self.a, self.b, self.c, self.d)
        if not all(math.isfinite(v) for v in entries):
            msg = f"matrix entries must be finite, got {entries}"
            raise errors.DomainError(msg)
        det = self.a * self.d - self.b * self.c
        if det <= 0:
            msg = f"determinant must be positive, got {det}"
            raise errors.DegenerateMapError(msg)
        scale = max(1.0, sum(v * v for v in entries))
        if abs(det - 1) > DET_TOLERANCE * scale:
            msg = f"determinant must be 1, got {det}; use MoebiusMap.from_entries"
            raise errors.DomainError(msg)

    @classmethod
    def from_entries(cls, a: float, b: float, c: float, d: float) -> "MoebiusMap":
        """Create a map from any matrix with positive determinant."""
        det = a * d - b * c
        if det <= 0:
            msg = f"determinant must be positive, got {det}"
            raise errors.DegenerateMapError(msg)
        s = math.sqrt(det)
        return cls(a / s, b / s, c / s, d / s)

    @classmethod
    def from_array(cls, m: np.ndarray) -> "MoebiusMap":
        """Create a map from a 2×2 array."""
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]))

    @classmethod
    def identity(cls) -> "MoebiusMap":
        """Return z ↦ z."""
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def translation(cls, omega: float) -> "MoebiusMap":
        """Return z ↦ z + omega."""
        return cls(1.0, float(omega), 0.0, 1.0)

    @classmethod
    def dilation(cls, factor: float) -> "MoebiusMap":
        """Return z ↦ factor·z for factor > 0."""
        if factor <= 0:
            raise errors.NonPositiveLengthError("factor", factor)
        s = math.sqrt(factor)
        return cls(s, 0.0, 0.0, 1 / s)

    @property
    def trace(self) -> float:
        """The signed trace a + d of the stored lift."""
        return self.a + self.d

    def as_array(self) -> np.ndarray:
        """Return the matrix as a 2×2 array."""
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=np.float64)

    def inverse(self) -> "MoebiusMap":
        """Return the inverse map."""
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        """Return the composition self ∘ other."""
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def canonical(self) -> "MoebiusMap":
        """Return the lift whose first nonzero entry among a, b is positive."""
        if self.a > 0 or (self.a == 0 and self.b > 0):
            return self
        return MoebiusMap(-self.a, -self.b, -self.c, -self.d)

    def key(self, digits: int = 9) -> tuple[float, float, float, float]:
        """Return a hashable key of the isometry, rounded to digits."""
        m = self.canonical()
        # Adding 0.0 folds -0.0 into 0.0.
        return tuple(round(v, digits) + 0.0 for v in (m.a, m.b, m.c, m.d))

    def equal_up_to_sign(self, other: "MoebiusMap", tolerance: float = 1e-12) -> bool:
        """Whether two maps are the same isometry within tolerance."""
        mine = np.array([self.a, self.b, self.c, self.d])
        theirs = np.array([other.a, other.b, other.c, other.d])
        return bool(
            np.max(np.abs(mine - theirs)) <= tolerance
            or np.max(np.abs(mine + theirs)) <= tolerance
        )

    def fixes_infinity(self, tolerance: float = INFINITY_TOLERANCE) -> bool:
        """Whether c vanishes relative to the other entries."""
        return abs(self.c) <= tolerance * max(1.0, abs(self.a), abs(self.d))


class Kind(enum.Enum):
    """Classification of a Möbius map by its trace."""

    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


def compose(m1: MoebiusMap, m2: MoebiusMap) -> MoebiusMap:
    """Return m1 ∘ m2."""
    return m1 @ m2


def inverse(m: MoebiusMap) -> MoebiusMap:
    """Return the inverse of m."""
    return m.inverse()


def conjugate(m: MoebiusMap, g: MoebiusMap) -> MoebiusMap:
    """Return g ∘ m ∘ g⁻¹."""
    return g @ m @ g.inverse()


def apply(m: MoebiusMap, p: HPoint | BoundaryPoint) -> HPoint | BoundaryPoint:
    """Apply m to a point of the half-plane or of its boundary."""
    if isinstance(p, HPoint):
        z = p.z
        w = (m.a * z + m.b) / (m.c * z + m.d)
        return HPoint.from_complex(w)

    u, v = p.homogeneous()
    return BoundaryPoint.from_homogeneous(m.a * u + m.b * v, m.c * u + m.d * v)


def is_identity(m: MoebiusMap, tolerance: float = IDENTITY_TOLERANCE) -> bool:
    """Whether m is ±Id entrywise within tolerance."""
    return m.equal_up_to_sign(MoebiusMap.identity(), tolerance)


def classify(m: MoebiusMap, band: float = PARABOLIC_BAND) -> Kind:
    """Classify m as identity, elliptic, parabolic or hyperbolic.

    Args:
        m: The map to classify.
        band: Half-width of the band around |tr| = 2 treated as parabolic.

    Returns:
        The kind of m.
    """
    if is_identity(m):
        return Kind.IDENTITY
    t = abs(m.trace)
    if abs(t - 2) <= band:
        return Kind.PARABOLIC
    if t > 2:  # noqa: PLR2004  # |tr| = 2 separates the kinds.
        return Kind.HYPERBOLIC
    return Kind.ELLIPTIC


def _require_hyperbolic(m: MoebiusMap, band: float) -> None:
    kind = classify(m, band)
    if kind != Kind.HYPERBOLIC:
        msg = f"map with trace {m.trace} is {kind.value}, not hyperbolic"
        raise errors.NotHyperbolicError(msg)


def translation_length(m: MoebiusMap, band: float = PARABOLIC_BAND) -> float:
    """Return the translation length 2·arccosh(|tr|/2) of a hyperbolic map.

    Raises:
        NotHyperbolicError if m is not hyperbolic.
    """
    _require_hyperbolic(m, band)
    return 2 * math.acosh(abs(m.trace) / 2)


def fixed_points(m: MoebiusMap, band: float = PARABOLIC_BAND) -> tuple[BoundaryPoint, BoundaryPoint]:
    """Return the two boundary fixed points of a hyperbolic map.

    The points solve cz² + (d - a)z - b = 0, one of them being infinity
    when c vanishes.

    Raises:
        NotHyperbolicError if m is not hyperbolic.
    """
    _require_hyperbolic(m, band)
    if m.fixes_infinity():
        return (BoundaryPoint(m.b / (m.d - m.a)), INFINITY)

    # Stable quadratic roots: q/c and -b/q.
    bb = m.d - m.a
    root = math.sqrt(m.trace * m.trace - 4)
    q = -0.5 * (bb + math.copysign(root, bb))
    return (BoundaryPoint(q / m.c), BoundaryPoint(-m.b / q))


def parabolic_fixed_point(m: MoebiusMap, band: float = PARABOLIC_BAND) -> BoundaryPoint:
    """Return the boundary fixed point of a parabolic map.

    Raises:
        NotParabolicError if m is not parabolic.
    """
    kind = classify(m, band)
    if kind != Kind.PARABOLIC:
        msg = f"map with trace {m.trace} is {kind.value}, not parabolic"
        raise errors.NotParabolicError(msg)
    if m.fixes_infinity():
        return INFINITY
    return BoundaryPoint((m.a - m.d) / (2 * m.c))


def _boundary_key(p: BoundaryPoint) -> tuple[int, float]:
    return (1, 0.0) if p.value is None else (0, p.value)


@dataclasses.dataclass(frozen=True)
class Geodesic:
    """A complete geodesic, given by its two distinct boundary endpoints.

    Endpoints are unordered; they are stored finite-ascending with infinity
    last, so equal geodesics compare equal.
    """

    start: BoundaryPoint
    end: BoundaryPoint

    def __post_init__(self):
        """Check the endpoints are distinct and store them in canonical order."""
        if self.start.close(self.end):
            msg = f"geodesic endpoints coincide: {self.start} and {self.end}"
            raise errors.DomainError(msg)
        if _boundary_key(self.end) < _boundary_key(self.start):
            s, e = self.start, self.end
            object.__setattr__(self, "start", e)
            object.__setattr__(self, "end", s)

    @classmethod
    def between(cls, p: float | None, q: float | None) -> "Geodesic":
        """Create the geodesic joining two reals, None meaning infinity."""
        return cls(BoundaryPoint(p), BoundaryPoint(q))

    @property
    def is_vertical(self) -> bool:
        """Whether the geodesic is a vertical line."""
        return self.end.is_infinite

    @property
    def foot(self) -> float:
        """The real foot of a vertical geodesic."""
        if not self.is_vertical:
            msg = "a half-circle has no foot"
            raise errors.DomainError(msg)
        return self.start.value

    @property
    def center(self) -> float:
        """The euclidean center of a half-circle geodesic."""
        if self.is_vertical:
            msg = "a vertical geodesic has no center"
            raise errors.DomainError(msg)
        return (self.start.value + self.end.value) / 2

    @property
    def radius(self) -> float:
        """The euclidean radius of a half-circle geodesic, infinite if vertical."""
        if self.is_vertical:
            return math.inf
        return (self.end.value - self.start.value) / 2

    @property
    def apex_height(self) -> float:
        """The highest euclidean height reached by the geodesic."""
        return self.radius

    def endpoint_vectors(self) -> tuple[np.ndarray, np.ndarray]:
        """Return the homogeneous coordinates of both endpoints."""
        return (np.array(self.start.homogeneous()), np.array(self.end.homogeneous()))

    def image(self, m: MoebiusMap) -> "Geodesic":
        """Return the image of the geodesic under m."""
        return Geodesic(apply(m, self.start), apply(m, self.end))


def axis(m: MoebiusMap, band: float = PARABOLIC_BAND) -> Geodesic:
    """Return the invariant axis of a hyperbolic map.

    Raises:
        NotHyperbolicError if m is not hyperbolic.
    """
    return Geodesic(*fixed_points(m, band))


def dist(p: HPoint, q: HPoint) -> float:
    """Return the hyperbolic distance between two points.

    Uses sinh(d/2) = |p - q| / (2·sqrt(y_p·y_q)), which is the formula
    cosh d = 1 + |p - q|²/(2·y_p·y_q) without cancellation near p = q.
    """
    return 2 * math.asinh(abs(p.z - q.z) / (2 * math.sqrt(p.y * q.y)))


class Relation(enum.IntEnum):
    """How two geodesics sit relative to each other."""

    EQUAL = 0
    CROSSING = 1
    ASYMPTOTIC = 2
    DISJOINT = 3


@dataclasses.dataclass(frozen=True)
class GeodesicRelation:
    """The relation of two geodesics, with their distance when disjoint."""

    kind: Relation
    distance: float | None = None


def _unit_rows(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _det2(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def relation_arrays(
    a1: np.ndarray,
    a2: np.ndarray,
    b1: np.ndarray,
    b2: np.ndarray,
    tolerance: float = ENDPOINT_TOLERANCE,
) -> tuple[np.ndarray, np.ndarray]:
    """Relate geodesics (a1, a2) and (b1, b2) given by homogeneous endpoints.

    Args:
        a1: Homogeneous coordinates of the first endpoint of A, shape (..., 2).
        a2: The second endpoint of A.
        b1: The first endpoint of B.
        b2: The second endpoint of B.
        tolerance: Sine of the angle below which endpoints coincide.

    Returns:
        Relation codes and distances (NaN unless disjoint), broadcast together.

    The cross ratio X = [a1,b1][a2,b2] / ([a1,b2][a2,b1]) is negative exactly
    when the endpoint pairs interleave. For disjoint geodesics
    tanh²(d/2) = min(X, 1/X), and 1 - X = -[a1,a2][b1,b2] / ([a1,b2][a2,b1])
    keeps far-apart distances accurate.
    """
    a1, a2, b1, b2 = (_unit_rows(v) for v in (a1, a2, b1, b2))
    s11 = _det2(a1, b1)
    s22 = _det2(a2, b2)
    s12 = _det2(a1, b2)
    s21 = _det2(a2, b1)
    z11, z22, z12, z21 = (np.abs(s) <= tolerance for s in (s11, s22, s12, s21))

    equal = (z11 & z22) | (z12 & z21)
    shared = z11 | z22 | z12 | z21
    generic = ~shared

    with np.errstate(divide="ignore", invalid="ignore"):
        denom = s12 * s21
        x = s11 * s22 / denom
        one_minus_x = -_det2(a1, a2) * _det2(b1, b2) / denom
        below = x < 1
        q = np.where(below, x, 1 / x)
        one_minus_q = np.where(below, one_minus_x, -one_minus_x / x)
        distance = 2 * np.log1p(np.sqrt(q)) - np.log(one_minus_q)

    crossing = generic & (x < 0)
    disjoint = generic & (x > 0)
    codes = np.full(np.shape(x), int(Relation.DISJOINT), dtype=np.int8)
    codes[crossing] = int(Relation.CROSSING)
    codes[shared & ~equal] = int(Relation.ASYMPTOTIC)
    codes[equal] = int(Relation.EQUAL)
    distance = np.where(disjoint, distance, np.nan)
    return codes, distance


def geodesics_relation(g1: Geodesic, g2: Geodesic) -> GeodesicRelation:
    """Decide whether two geodesics are equal, crossing, asymptotic or disjoint.

    Crossing means the endpoint pairs interleave on the boundary circle.
    Disjoint geodesics carry the length of their common perpendicular.
    """
    a1, a2 = g1.endpoint_vectors()
    b1, b2 = g2.endpoint_vectors()
    codes, distance = relation_arrays(a1, a2, b1, b2)
    kind = Relation(int(codes))
    if kind == Relation.DISJOINT:
        return GeodesicRelation(kind=kind, distance=float(distance))
    return GeodesicRelation(kind=kind)


def point_geodesic_distance(p: HPoint, g: Geodesic) -> float:
    """Return the hyperbolic distance from a point to a geodesic."""
    if g.is_vertical:
        return math.asinh(abs(p.x - g.foot) / p.y)
    r = g.radius
    offset = abs(p.z - g.center) ** 2 - r * r
    return math.asinh(abs(offset) / (2 * r * p.y))


@dataclasses.dataclass(frozen=True)
class Displacement:
    """How far a hyperbolic map moves a point.

    sinh(distance/2) = sinh(translation_length/2)·cosh(offset), where offset
    is the distance from the point to the axis.
    """

    distance: float
    translation_length: float
    offset: float


def displacement(
    m: MoebiusMap,
    p: HPoint,
    tolerance: float = FACTORIZATION_TOLERANCE,
    band: float = PARABOLIC_BAND,
) -> Displacement:
    """Return the displacement of p under a hyperbolic map, with its factors.

    Args:
        m: A hyperbolic map.
        p: The point to displace.
        tolerance: Allowed relative residual of the factorization.
        band: Parabolic band used to classify m.

    Raises:
        NotHyperbolicError if m is not hyperbolic.
        PrecisionLossError if the two sides of the factorization disagree.
    """
    length = translation_length(m, band)
    d = dist(p, apply(m, p))
    h = point_geodesic_distance(p, axis(m, band))

    lhs = math.sinh(d / 2)
    rhs = math.sinh(length / 2) * math.cosh(h)
    if abs(lhs - rhs) > tolerance * max(1.0, lhs):
        msg = f"displacement factorization failed: sinh(d/2)={lhs}, product={rhs}"
        raise errors.PrecisionLossError(msg)
    return Displacement(distance=d, translation_length=length, offset=h)


@dataclasses.dataclass(frozen=True)
class Circle:
    """A euclidean circle centred on the real line."""

    center: float
    radius: float

    def __post_init__(self):
        """Check the radius is positive."""
        if not self.radius > 0:
            raise errors.NonPositiveLengthError("radius", self.radius)


def isometric_circle(m: MoebiusMap) -> Circle:
    """Return the isometric circle |cz + d| = 1 of m.

    Raises:
        FixesInfinityError if m fixes infinity.
    """
    if m.fixes_infinity():
        msg = f"map {m} fixes infinity and has no isometric circle"
        raise errors.FixesInfinityError(msg)
    return Circle(center=-m.d / m.c, radius=1 / abs(m.c))


@dataclasses.dataclass(frozen=True)
class AxisAngles:
    """The half-angle θ of a hyperbolic map read in two ways.

    from_circles is read where the isometric circles meet the axis, and
    from_distance where the axis points at distance ℓ/2 from its top sit.
    Both equal atan(sinh(ℓ/2)), and axis_radius = isometric_radius·tan θ.
    """

    from_circles: float
    from_distance: float
    isometric_radius: float
    axis_radius: float
    translation_length: float


def axis_angles(m: MoebiusMap, band: float = PARABOLIC_BAND) -> AxisAngles:
    """Read the half-angle of a hyperbolic map from its isometric circle.

    The axis is first translated so that it is centred at 0.

    Raises:
        NotHyperbolicError if m is not hyperbolic.
        FixesInfinityError if m fixes infinity (its axis is vertical).
    """
    g = axis(m, band)
    circle = isometric_circle(m)
    length = translation_length(m, band)
    r = g.radius
    centre = circle.center - g.center
    big_r = circle.radius

    # Intersection abscissa of |z| = r with |z - centre| = R.
    x = (r * r - big_r * big_r + centre * centre) / (2 * centre)
    y = math.sqrt(max(r * r - x * x, 0.0))
    from_circles = math.atan2(abs(x), y)

    half = length / 2
    from_distance = math.atan2(r * math.tanh(half), r / math.cosh(half))
    return AxisAngles(
        from_circles=from_circles,
        from_distance=from_distance,
        isometric_radius=big_r,
        axis_radius=r,
        translation_length=length,
    )


@dataclasses.dataclass(frozen=True)
class Horodisk:
    """A horodisk based at a boundary point.

    size is the height of the bounding horizontal line when the base is
    infinity, and the euclidean diameter otherwise.
    """

    base: BoundaryPoint
    size: float

    def __post_init__(self):
        """Check the size is positive."""
        if not self.size > 0:
            raise errors.NonPositiveLengthError("size", self.size)


class Contact(enum.Enum):
    """How two horodisks meet."""

    DISJOINT = "disjoint"
    TANGENT = "tangent"
    OVERLAPPING = "overlapping"


def _contact(gap: float, touch: float, tolerance: float) -> Contact:
    # Disjoint when gap exceeds touch, tangent when they agree.
    if gap > touch * (1 + tolerance):
        return Contact.DISJOINT
    if gap < touch * (1 - tolerance):
        return Contact.OVERLAPPING
    return Contact.TANGENT


def horodisk_relation(h1: Horodisk, h2: Horodisk, tolerance: float = TANGENCY_TOLERANCE) -> Contact:
    """Decide by euclidean geometry whether two horodisks are disjoint, tangent or overlapping."""
    if h1.base.is_infinite and h2.base.is_infinite:
        return Contact.OVERLAPPING
    if h1.base.is_infinite or h2.base.is_infinite:
        top, other = (h1, h2) if h1.base.is_infinite else (h2, h1)
        return _contact(top.size, other.size, tolerance)
    if h1.base.close(h2.base):
        return Contact.OVERLAPPING
    gap = (h1.base.value - h2.base.value) ** 2
    return _contact(gap, h1.size * h2.size, tolerance)


@dataclasses.dataclass(frozen=True)
class HorodiskImage:
    """The image of a horodisk and how it meets the original."""

    image: Horodisk
    contact: Contact


def horodisk_image(m: MoebiusMap, h: Horodisk, tolerance: float = TANGENCY_TOLERANCE) -> HorodiskImage:
    """Return m(h) and how it meets h.

    For h based at infinity and m not fixing infinity the contact is read
    from the isometric circle of m⁻¹: h and m(h) are disjoint (tangent) iff h
    is disjoint from (tangent to) that circle of radius 1/|c|.
    """
    if h.base.is_infinite:
        if m.fixes_infinity():
            image = Horodisk(INFINITY, h.size * m.a * m.a)
            return HorodiskImage(image=image, contact=horodisk_relation(h, image, tolerance))
        image = Horodisk(BoundaryPoint(m.a / m.c), 1 / (m.c * m.c * h.size))
        contact = _contact(h.size, 1 / abs(m.c), tolerance)
        return HorodiskImage(image=image, contact=contact)

    b = h.base.value
    denom = m.c * b + m.d
    if abs(denom) <= INFINITY_TOLERANCE * max(1.0, abs(m.c * b), abs(m.d)):
        image = Horodisk(INFINITY, 1 / (m.c * m.c * h.size))
    else:
        image = Horodisk(BoundaryPoint((m.a * b + m.b) / denom), h.size / (denom * denom))
    return HorodiskImage(image=image, contact=horodisk_relation(h, image, tolerance))


def horodisk_signed_distance(p: HPoint, h: Horodisk) -> float:
    """Return the signed distance from p to the boundary of h, negative inside."""
    if h.base.is_infinite:
        return math.log(h.size / p.y)
    return math.log(abs(p.z - h.base.value) ** 2 / (h.size * p.y))
