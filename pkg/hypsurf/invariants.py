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

"""Metric invariants: injectivity radius, systoles and cusp displacement bounds.

Every result is relative to a word-ball depth, and reports carry that depth
together with whatever certificate the computation could produce.
"""

import dataclasses
import math

import numpy as np
import pydantic
from scipy import optimize

from hypsurf import core, errors, fuchsian, logging, runtime, trig

"""Realizing loops within this relative margin of the minimum count as balanced."""
BALANCE_TOLERANCE = 1e-6

"""Realizing loops within this relative margin of the minimum are reported."""
REALIZING_TOLERANCE = 1e-9

"""Lower bound on sinh(d/2) for words whose axis enters the cusp region."""
PENETRATION_BOUND = 2 / math.sqrt(3)

"""Points evaluated per worker task during a grid search."""
GRID_CHUNK = 64

"""Number of best grid points refined by local ascent."""
REFINE_STARTS = 4


def _sinh_half_displacement(matrices: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Return sinh(d(z, Mz)/2) = |cz² + (d - a)z - b| / (2 Im z).

    Args:
        matrices: Array of shape (N, 2, 2).
        z: Complex array of shape (P,).

    Returns:
        Array of shape (P, N).
    """
    a = matrices[:, 0, 0]
    b = matrices[:, 0, 1]
    c = matrices[:, 1, 0]
    d = matrices[:, 1, 1]
    zz = z[:, np.newaxis]
    q = c * zz * zz + (d - a) * zz - b
    return np.abs(q) / (2 * zz.imag)


def _require_depth(depth: int) -> None:
    if depth < 1:
        msg = f"depth must be at least 1, got {depth}"
        raise errors.EmptyBallError(msg)


def _up_to_inversion(words: list[fuchsian.Word]) -> list[fuchsian.Word]:
    seen: set[tuple[int, ...]] = set()
    out = []
    for w in words:
        key = min(w.letters, w.inverse().letters)
        if key in seen:
            continue
        seen.add(key)
        out.append(w)
    return out


class InjRadReport(pydantic.BaseModel):
    """The injectivity radius at a point.

    floor_certificate is the least displacement over the words of length
    exactly depth. The radius is certified when that floor exceeds twice the
    radius.
    """

    point: tuple[float, float]
    radius: float
    realizing_words: list[str]
    realizing_letters: list[list[int]]
    depth: int
    floor_certificate: float
    certified: bool


def injrad_at(group: fuchsian.FuchsianGroup, p: core.HPoint, depth: int) -> InjRadReport:
    """Return half the shortest displacement of p by a non-identity word of the ball.

    Parabolic words count, so loops around cusps are included. Realizing
    words are listed once up to inversion.

    Raises:
        EmptyBallError if depth is less than 1.
    """
    _require_depth(depth)
    b = fuchsian.word_ball(group, depth)
    s = _sinh_half_displacement(b.matrices, np.array([p.z]))[0]
    s[0] = np.inf

    best = float(np.min(s))
    radius = math.asinh(best)
    close = np.flatnonzero(s <= best * (1 + REALIZING_TOLERANCE))
    words = _up_to_inversion([b.word(int(i)) for i in close])
    floor = 2 * math.asinh(float(np.min(s[b.lengths == depth])))

    report = InjRadReport(
        point=(p.x, p.y),
        radius=radius,
        realizing_words=[group.format(w) for w in words],
        realizing_letters=[list(w.letters) for w in words],
        depth=depth,
        floor_certificate=floor,
        certified=floor > 2 * radius * (1 + REALIZING_TOLERANCE),
    )
    logging.get_logger().debug("computed injectivity radius", point=report.point, radius=radius, depth=depth)
    return report


@dataclasses.dataclass(frozen=True)
class Region:
    """An axis-aligned box [x0, x1] × [y0, y1] in the upper half-plane."""

    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        """Check the box is non-empty and above the real line."""
        if not (self.x1 > self.x0 and self.y1 > self.y0 and self.y0 > 0):
            msg = f"region [{self.x0}, {self.x1}] × [{self.y0}, {self.y1}] is empty or leaves the half-plane"
            raise errors.DegenerateRegionError(msg)

    @classmethod
    def parse(cls, text: str) -> "Region":
        """Parse "x0,x1,y0,y1".

        Raises:
            ConfigError if the text is not four numbers.
            DegenerateRegionError if the box is degenerate.
        """
        try:
            values = [float(v) for v in text.split(",")]
        except ValueError as e:
            raise errors.ConfigError("region", f"cannot parse {text!r}: {e}") from e
        if len(values) != 4:  # noqa: PLR2004  # Four box coordinates.
            raise errors.ConfigError("region", f"expected x0,x1,y0,y1, got {text!r}")
        return cls(*values)

    def contains(self, x: float, y: float) -> bool:
        """Report whether (x, y) lies in the closed box."""
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1


class SupInjRadReport(pydantic.BaseModel):
    """A lower bound on the supremum of the injectivity radius over a region."""

    lower: float
    argmax: tuple[float, float]
    realizing_words: list[str]
    balanced: bool
    balance_count: int
    certified: bool
    region: tuple[float, float, float, float]
    grid: int
    refine_iters: int
    depth: int


def _radius_at(matrices: np.ndarray, x: float, y: float) -> float:
    if not y > 0:
        return -math.inf
    s = _sinh_half_displacement(matrices, np.array([complex(x, y)]))[0]
    return math.asinh(float(np.min(s)))


def _balance(matrices: np.ndarray, x: float, y: float) -> tuple[float, float] | None:
    """Move (x, y) to where the three shortest loops have equal length.

    Returns:
        The balanced point, or None if the solver does not converge.
    """
    s = _sinh_half_displacement(matrices, np.array([complex(x, y)]))[0]
    # Inverse rows displace equally; keep one row per loop.
    picked: list[int] = []
    for i in np.argsort(s):
        if not any(_same_loop(matrices, int(i), j) for j in picked):
            picked.append(int(i))
        if len(picked) == 3:  # noqa: PLR2004  # Two equations need three loops.
            break
    three = matrices[picked]

    def residual(v: np.ndarray) -> np.ndarray:
        z = complex(v[0], math.exp(v[1]))
        t = _sinh_half_displacement(three, np.array([z]))[0]
        return np.array([t[0] - t[1], t[0] - t[2]])

    sol = optimize.root(residual, np.array([x, math.log(y)]), method="hybr")
    if not sol.success:
        return None
    return float(sol.x[0]), math.exp(float(sol.x[1]))


def _same_loop(matrices: np.ndarray, i: int, j: int) -> bool:
    """Report whether rows i and j are inverse to each other up to sign."""
    inv = np.array([[matrices[j, 1, 1], -matrices[j, 0, 1]], [-matrices[j, 1, 0], matrices[j, 0, 0]]])
    return bool(np.allclose(matrices[i], inv, atol=1e-9) or np.allclose(matrices[i], -inv, atol=1e-9))


def sup_injrad(
    group: fuchsian.FuchsianGroup,
    region: Region,
    grid: int = 60,
    refine_iters: int = 400,
    depth: int = 8,
) -> SupInjRadReport:
    """Search a region for the point of largest injectivity radius.

    Evaluates the radius on a grid × grid lattice, then refines the best
    lattice points with Nelder-Mead and a final solve balancing the three
    shortest loops. The balanced point is kept only if it stays in the
    region and does not lower the radius.

    Returns:
        A lower bound on the supremum, the point achieving it and whether at
        least three loops realize the radius there, within BALANCE_TOLERANCE.

    Raises:
        EmptyBallError if depth is less than 1.
        DegenerateRegionError if grid is less than 2.
    """
    _require_depth(depth)
    if grid < 2:  # noqa: PLR2004  # A lattice needs two points per side.
        msg = f"grid must be at least 2, got {grid}"
        raise errors.DegenerateRegionError(msg)

    log = logging.get_logger()
    mats = fuchsian.word_ball(group, depth).matrices[1:]
    xs = np.linspace(region.x0, region.x1, grid)
    ys = np.linspace(region.y0, region.y1, grid)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    points = (gx + 1j * gy).ravel()

    def evaluate(chunk: np.ndarray) -> np.ndarray:
        return np.arcsinh(np.min(_sinh_half_displacement(mats, chunk), axis=1))

    chunks = [points[i : i + GRID_CHUNK] for i in range(0, points.size, GRID_CHUNK)]
    values = np.concatenate(runtime.fan_out(evaluate, chunks))

    best_x, best_y, best = float(points[0].real), float(points[0].imag), -math.inf
    for i in np.argsort(values)[::-1][:REFINE_STARTS]:
        x, y = float(points[i].real), float(points[i].imag)
        if values[i] > best:
            best_x, best_y, best = x, y, float(values[i])

        def objective(v: np.ndarray) -> float:
            px, py = float(v[0]), math.exp(float(v[1]))
            if not region.contains(px, py):
                return math.inf
            return -_radius_at(mats, px, py)

        sol = optimize.minimize(
            objective,
            np.array([x, math.log(y)]),
            method="Nelder-Mead",
            options={"xatol": 1e-9, "fatol": 1e-13, "maxiter": refine_iters},
        )
        cx, cy = float(sol.x[0]), math.exp(float(sol.x[1]))
        candidates = [(cx, cy)]
        balanced = _balance(mats, cx, cy)
        if balanced is not None:
            candidates.append(balanced)
        for px, py in candidates:
            if not region.contains(px, py):
                continue
            r = _radius_at(mats, px, py)
            if r > best:
                best_x, best_y, best = px, py, r

    at = injrad_at(group, core.HPoint(best_x, best_y), depth)
    s = _sinh_half_displacement(mats, np.array([complex(best_x, best_y)]))[0]
    close = np.flatnonzero(s <= float(np.min(s)) * (1 + BALANCE_TOLERANCE))
    b = fuchsian.word_ball(group, depth)
    balance_words = _up_to_inversion([b.word(int(i) + 1) for i in close])

    report = SupInjRadReport(
        lower=best,
        argmax=(best_x, best_y),
        realizing_words=[group.format(w) for w in balance_words],
        balanced=len(balance_words) >= 3,  # noqa: PLR2004  # A local maximum is pinned by three loops.
        balance_count=len(balance_words),
        certified=at.certified,
        region=(region.x0, region.x1, region.y0, region.y1),
        grid=grid,
        refine_iters=refine_iters,
        depth=depth,
    )
    if not report.balanced:
        log.debug("supremum point is not balanced", loops=report.balance_count, argmax=report.argmax)
    log.debug("searched injectivity radius", lower=best, argmax=report.argmax, grid=grid, depth=depth)
    return report


class SystoleReport(pydantic.BaseModel):
    """The shortest closed geodesic and the shortest non-simple one."""

    length: float
    trace: float
    word: str
    letters: list[int]
    simplicity: str
    nonsimple_length: float | None = None
    nonsimple_word: str | None = None
    nonsimple_witness: str | None = None
    classes_examined: int
    depth: int
    trace_bound: float


def systoles(group: fuchsian.FuchsianGroup, depth: int, trace_bound: float) -> SystoleReport:
    """Return the systole and non-simple systole among classes of the ball.

    Classes are taken with |trace| ≤ trace_bound and representatives of
    length at most depth. Simplicity is decided in order of length until
    the first class with a crossing witness.

    Raises:
        EmptyBallError if depth is less than 1.
        NoHyperbolicClassError if no class qualifies.
    """
    _require_depth(depth)
    classes = fuchsian.conjugacy_classes(group, trace_bound, depth)
    if not classes:
        msg = f"no hyperbolic class with |trace| ≤ {trace_bound} at depth {depth}"
        raise errors.NoHyperbolicClassError(msg)

    shortest = classes[0].with_simplicity(fuchsian.simplicity(group, classes[0], depth))
    nonsimple = None
    for cls in classes:
        status = shortest.simplicity if cls is classes[0] else fuchsian.simplicity(group, cls, depth)
        if status.kind == fuchsian.Simplicity.NON_SIMPLE:
            nonsimple = cls.with_simplicity(status)
            break

    report = SystoleReport(
        length=shortest.length,
        trace=shortest.trace,
        word=group.format(shortest.rep),
        letters=list(shortest.rep.letters),
        simplicity=shortest.simplicity.kind.value,
        nonsimple_length=nonsimple.length if nonsimple else None,
        nonsimple_word=group.format(nonsimple.rep) if nonsimple else None,
        nonsimple_witness=group.format(nonsimple.simplicity.witness) if nonsimple else None,
        classes_examined=len(classes),
        depth=depth,
        trace_bound=trace_bound,
    )
    logging.get_logger().debug(
        "found systoles",
        group=group.label,
        length=report.length,
        nonsimple_length=report.nonsimple_length,
        depth=depth,
    )
    return report


class PenetrationReport(pydantic.BaseModel):
    """How far a word whose axis enters the cusp moves a point high in the cusp."""

    word: str
    lhs: float
    bound: float
    holds: bool
    apex_height: float
    cusp_height: float


def axis_penetration_bound(
    group: fuchsian.FuchsianGroup,
    w: fuchsian.Word,
    z0: core.HPoint,
    cusp_height: float | None = None,
    depth: int = 6,
) -> PenetrationReport:
    """Check sinh(d(z0, w·z0)/2) > 2/√3 for a word whose axis enters {Im z > 1}.

    Applies when Im z0 ≥ √3, w is hyperbolic with axis reaching above
    height 1, and the horodisk {Im z > 1} is embedded, i.e. the maximal cusp
    height is at most 1.

    Args:
        group: A cusp-normalized group.
        w: The word.
        z0: The base point.
        cusp_height: The maximal cusp height, computed at depth when omitted.
        depth: Ball depth used to compute the maximal cusp height.

    Raises:
        PreconditionViolatedError naming the failed clause.
    """
    if z0.y < math.sqrt(3) * (1 - 1e-12):
        raise errors.PreconditionViolatedError("basepoint_height", f"Im z0 = {z0.y} is below √3")
    m = fuchsian.evaluate(group, w)
    if core.classify(m) != core.Kind.HYPERBOLIC:
        raise errors.PreconditionViolatedError("hyperbolic", f"{group.format(w)} is not hyperbolic")
    ax = core.axis(m)
    apex = math.inf if ax.is_vertical else ax.apex_height
    if not apex > 1:
        raise errors.PreconditionViolatedError("axis_penetration", f"axis apex {apex} does not exceed 1")
    if cusp_height is None:
        try:
            cusp_height = fuchsian.maximal_cusp(group, depth).height
        except errors.NoCuspError as e:
            raise errors.PreconditionViolatedError("cusp_embedding", str(e)) from e
    if cusp_height > 1 + 1e-12:
        raise errors.PreconditionViolatedError(
            "cusp_embedding", f"maximal cusp height {cusp_height} is above 1, so Im z > 1 is not embedded"
        )

    lhs = float(_sinh_half_displacement(m.as_array()[np.newaxis], np.array([z0.z]))[0, 0])
    return PenetrationReport(
        word=group.format(w),
        lhs=lhs,
        bound=PENETRATION_BOUND,
        holds=lhs > PENETRATION_BOUND,
        apex_height=apex,
        cusp_height=cusp_height,
    )


def cusp_loop_length(group: fuchsian.FuchsianGroup, p: core.HPoint, tolerance: float = 1e-10) -> float:
    """Return the length of the loop at p around the normalized cusp.

    Computed as d(p, p + ω) and again from the signed distance of p to the
    area-2 horodisk {Im z > ω/2}; the two must agree.

    Raises:
        NoCuspError if the group is not cusp-normalized.
        PrecisionLossError if the two computations disagree.
    """
    if group.cusp is None or not group.cusp.normalized:
        msg = f"group {group.label!r} is not cusp-normalized"
        raise errors.NoCuspError(msg)
    omega = group.cusp.width
    direct = core.dist(p, core.HPoint(p.x + omega, p.y))
    distance = core.horodisk_signed_distance(p, core.Horodisk(core.INFINITY, omega / 2))
    via_horodisk = trig.loop_from_horodisk_distance(distance)
    if abs(direct - via_horodisk) > tolerance * max(1.0, direct):
        msg = f"cusp loop mismatch: {direct} by distance, {via_horodisk} by horodisk"
        raise errors.PrecisionLossError(msg)
    return direct
