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

"""Numerical verification of the McShane-Mirzakhani and Bridgeman identities.

McShane-Mirzakhani is checked on one-holed tori, whose simple closed
geodesics are enumerated by slope on the Markoff trace tree. Bridgeman is
checked on pairs of pants, whose orthogeodesics are enumerated from a word
ball and deduplicated by where they leave the boundary.
"""

import dataclasses
import enum
import functools
import math

import mpmath
import numpy as np
import pydantic
from scipy import special

from hypsurf import core, errors, fuchsian, logging, precision, surfaces

"""Length cutoff of the cusped torus sum that selects the McShane convention."""
CONVENTION_CUTOFF = 25.0

"""The classical value of Σ 1/(1 + e^ℓ) over simple geodesics of a cusped torus."""
CUSPED_MCSHANE_SUM = 0.5


def rogers_dilog(x: float, prec: precision.Precision = precision.Precision.DOUBLE) -> float:
    """Return the Rogers dilogarithm Li₂(x) + ½·ln(x)·ln(1 - x) on [0, 1].

    Arguments above 1/2 go through R(x) + R(1 - x) = π²/6.

    Raises:
        DomainError if x is outside [0, 1].
    """
    if not 0 <= x <= 1:
        msg = f"Rogers dilogarithm needs 0 ≤ x ≤ 1, got {x}"
        raise errors.DomainError(msg)
    if x == 0:
        return 0.0
    if x == 1:
        return math.pi**2 / 6

    if prec == precision.Precision.EXTENDED:
        with mpmath.workdps(precision.EXTENDED_DIGITS):
            v = mpmath.mpf(x)
            return float(mpmath.polylog(2, v) + mpmath.log(v) * mpmath.log1p(-v) / 2)

    if x > 0.5:  # noqa: PLR2004  # Reflection keeps the series argument small.
        return math.pi**2 / 6 - rogers_dilog(1 - x)
    # scipy's spence(z) is Li₂(1 - z).
    li2 = float(special.spence(1 - x))
    return li2 + 0.5 * math.log(x) * math.log1p(-x)


def _log1pexp(u: float) -> float:
    if u > 0:
        return u + math.log1p(math.exp(-u))
    return math.log1p(math.exp(u))


def mcshane_term_D(  # noqa: N802  # Named after the identity's D term.
    b1: float, x: float, y: float, prec: precision.Precision = precision.Precision.DOUBLE
) -> float:
    """Return 2·ln((e^(b1/2) + e^((x+y)/2)) / (e^(-b1/2) + e^((x+y)/2))).

    The term of a pair of pants bounded by b1 and geodesics of lengths x, y.
    For small b1 the ratio is close to 1, and extended precision keeps the
    digits double precision cancels.

    Raises:
        DomainError unless b1, x and y are positive.
    """
    if not (b1 > 0 and x > 0 and y > 0):
        msg = f"D needs positive arguments, got ({b1}, {x}, {y})"
        raise errors.DomainError(msg)
    if prec == precision.Precision.EXTENDED:
        with mpmath.workdps(precision.EXTENDED_DIGITS):
            h, s = mpmath.mpf(b1) / 2, (mpmath.mpf(x) + mpmath.mpf(y)) / 2
            return float(2 * mpmath.log((mpmath.exp(h) + mpmath.exp(s)) / (mpmath.exp(-h) + mpmath.exp(s))))
    s = (x + y) / 2
    return 2 * (_log1pexp(b1 / 2 - s) - _log1pexp(-b1 / 2 - s))


def mirzakhani_term_R(  # noqa: N802  # Named after the identity's R term.
    b1: float, bi: float, eta: float, prec: precision.Precision = precision.Precision.DOUBLE
) -> float:
    """Return b1 - ln((cosh(bi/2) + cosh((b1+η)/2)) / (cosh(bi/2) + cosh((b1-η)/2))).

    Raises:
        DomainError unless b1, bi and eta are positive.
    """
    if not (b1 > 0 and bi > 0 and eta > 0):
        msg = f"R needs positive arguments, got ({b1}, {bi}, {eta})"
        raise errors.DomainError(msg)
    if prec == precision.Precision.EXTENDED:
        with mpmath.workdps(precision.EXTENDED_DIGITS):
            b, c = mpmath.mpf(b1), mpmath.cosh(mpmath.mpf(bi) / 2)
            e = mpmath.mpf(eta)
            return float(b - mpmath.log((c + mpmath.cosh((b + e) / 2)) / (c + mpmath.cosh((b - e) / 2))))
    ci = math.cosh(bi / 2)
    return b1 - math.log((ci + math.cosh((b1 + eta) / 2)) / (ci + math.cosh((b1 - eta) / 2)))


@dataclasses.dataclass(frozen=True)
class SimpleGeodesic:
    """A simple closed geodesic of a one-holed torus, named by its slope p/q."""

    slope: tuple[int, int]
    trace: float
    length: float

    @property
    def label(self) -> str:
        """The slope as "p/q"."""
        return f"{self.slope[0]}/{self.slope[1]}"


def _slope(p: int, q: int) -> tuple[int, int]:
    g = math.gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return (p, q)


def _markoff_traces(start, trace_cutoff: float) -> dict:
    """Walk the trace tree from a triple of (slope, trace) pairs.

    Traces may be floats or mpmath numbers; the recursion only multiplies and
    subtracts them.
    """
    found = {}
    stack = [start]
    seen: set[frozenset[tuple[int, int]]] = set()
    while stack:
        triple = stack.pop()
        key = frozenset(s for s, _ in triple)
        if key in seen:
            continue
        seen.add(key)
        for s, tr in triple:
            if tr <= trace_cutoff:
                found[s] = tr
        for i in range(3):
            (sa, ta), (sb, tb) = (triple[k] for k in range(3) if k != i)
            sc = triple[i][0]
            plus = _slope(sa[0] + sb[0], sa[1] + sb[1])
            minus = _slope(sa[0] - sb[0], sa[1] - sb[1])
            new = minus if sc == plus else plus
            new_trace = ta * tb - triple[i][1]
            if new_trace > trace_cutoff and new_trace > max(ta, tb):
                continue
            stack.append(((sa, ta), (sb, tb), (new, new_trace)))
    return found


def simple_torus_spectrum(
    t: surfaces.OneHoledTorus, length_cutoff: float, prec: precision.Precision = precision.Precision.DOUBLE
) -> list[SimpleGeodesic]:
    """Return every simple closed geodesic of length at most length_cutoff.

    Walks the Markoff trace tree: in a triple of adjacent slopes a, b, c the
    slope c can be swapped for its other neighbour of a and b, whose trace is
    tr(a)·tr(b) - tr(c). A branch is pruned once the new trace exceeds both
    the cutoff and the two kept traces, since traces only grow from there.
    In extended precision the traces are carried in mpmath.

    Returns:
        One geodesic per slope, sorted by length then slope. A has slope 0/1,
        B has slope 1/0 and AB has slope 1/1.

    Raises:
        InadmissibleTracesError if the traces are not admissible.
    """
    # Revalidate in case a caller built the value by hand.
    t = surfaces.OneHoledTorus(t.x, t.y, t.z)
    if not length_cutoff > 0:
        raise errors.NonPositiveLengthError("length_cutoff", length_cutoff)
    trace_cutoff = precision.trace_from_length(length_cutoff)

    if prec == precision.Precision.EXTENDED:
        with mpmath.workdps(precision.EXTENDED_DIGITS):
            x, y, z = (mpmath.mpf(v) for v in (t.x, t.y, t.z))
            found = _markoff_traces((((0, 1), x), ((1, 0), y), ((1, 1), z)), trace_cutoff)
    else:
        found = _markoff_traces((((0, 1), t.x), ((1, 0), t.y), ((1, 1), t.z)), trace_cutoff)

    spectrum = [
        SimpleGeodesic(slope=s, trace=float(tr), length=precision.length_from_trace(tr, prec))
        for s, tr in found.items()
    ]

    spectrum.sort(key=lambda g: (g.length, g.slope))
    logging.get_logger().debug("enumerated simple torus geodesics", cutoff=length_cutoff, count=len(spectrum))
    return spectrum


class Convention(enum.Enum):
    """Which right-hand side the McShane-Mirzakhani sum is compared with.

    "paper" compares with b1/2 and "mirzakhani" with b1. HALF and FULL are
    aliases naming the right-hand side.
    """

    PAPER = "paper"
    MIRZAKHANI = "mirzakhani"
    HALF = "paper"
    FULL = "mirzakhani"


class Targets(pydantic.BaseModel):
    """A value under each convention.

    paper holds the b1/2 value and alternative the b1 value.
    """

    paper: float
    alternative: float

    @property
    def half(self) -> float:
        """The value against b1/2."""
        return self.paper

    @property
    def full(self) -> float:
        """The value against b1."""
        return self.alternative



class TermRecord(pydantic.BaseModel):
    """One term of an identity sum."""

    label: str
    length: float
    term: float
    running_sum: float


class IdentityReport(pydantic.BaseModel):
    """How close a truncated identity sum comes to its target."""

    surface: str
    identity: str
    cutoff: float
    depth: int | None = None
    terms: int
    partial_sum: float
    target: float
    residual: float
    targets: Targets
    residuals: Targets
    convention_selected: str
    convention_evidence: float | None = None
    precision: str = precision.Precision.DOUBLE.value
    records: list[TermRecord] = pydantic.Field(default=[], exclude=True)


def cusped_mcshane_sum(t: surfaces.OneHoledTorus, length_cutoff: float) -> float:
    """Return Σ 1/(1 + e^ℓ) over the simple geodesics of length at most length_cutoff."""
    return math.fsum(1 / (1 + math.exp(g.length)) for g in simple_torus_spectrum(t, length_cutoff))


@functools.lru_cache(maxsize=4)
def select_convention(length_cutoff: float = CONVENTION_CUTOFF) -> tuple[Convention, float]:
    """Pick the McShane-Mirzakhani convention from the cusped torus limit.

    As b1 → 0, Σ D(b1, ℓ, ℓ)/b1 → Σ 2/(1 + e^ℓ) = 2·S, where S is the cusped
    sum on the (3, 3, 3) torus. A right-hand side of b1 needs S = 1/2; a
    right-hand side of b1/2 needs S = 1/4.

    Returns:
        The selected convention and the measured S.
    """
    s = cusped_mcshane_sum(surfaces.OneHoledTorus(3.0, 3.0, 3.0), length_cutoff)
    convention = Convention.FULL if abs(s - 0.5) < abs(s - 0.25) else Convention.HALF
    logging.get_logger().debug("selected McShane convention", convention=convention.value, cusped_sum=s)
    return convention, s


def _report(
    *,
    surface: str,
    identity: str,
    cutoff: float,
    depth: int | None,
    labelled_terms: list[tuple[str, float, float]],
    targets: Targets,
    convention: Convention,
    evidence: float | None,
    prec: precision.Precision,
) -> IdentityReport:
    records = []
    running: list[float] = []
    for label, length, term in labelled_terms:
        running.append(term)
        records.append(TermRecord(label=label, length=length, term=term, running_sum=math.fsum(running)))
    partial = precision.total((term for _, _, term in labelled_terms), prec)
    target = targets.half if convention == Convention.HALF else targets.full
    return IdentityReport(
        surface=surface,
        identity=identity,
        cutoff=cutoff,
        depth=depth,
        terms=len(labelled_terms),
        partial_sum=partial,
        target=target,
        residual=target - partial,
        targets=targets,
        residuals=Targets(paper=targets.paper - partial, alternative=targets.alternative - partial),
        convention_selected=convention.value,
        convention_evidence=evidence,
        precision=prec.value,
        records=records,
    )


def verify_mcshane(
    t: surfaces.OneHoledTorus,
    length_cutoff: float,
    prec: precision.Precision = precision.Precision.DOUBLE,
    surface: str | None = None,
) -> IdentityReport:
    """Sum D(b1, ℓγ, ℓγ) over the simple geodesics γ of a one-holed torus.

    Cutting the torus along a simple γ leaves a pair of pants bounded by the
    boundary and two copies of γ, so each γ contributes one term. The target
    is b1/2 under the "paper" convention and b1 under the "mirzakhani" one;
    the selected convention comes from select_convention.

    Raises:
        DomainError if the boundary is a cusp.
    """
    b1 = t.boundary_length_at(prec)
    if not b1 > 0:
        msg = "McShane-Mirzakhani verification needs a geodesic boundary"
        raise errors.DomainError(msg)

    spectrum = simple_torus_spectrum(t, length_cutoff, prec)
    terms = [(g.label, g.length, mcshane_term_D(b1, g.length, g.length, prec)) for g in spectrum]
    convention, evidence = select_convention()
    report = _report(
        surface=surface or f"torus1:{t.x:g},{t.y:g},{t.z:g}",
        identity="mcshane",
        cutoff=length_cutoff,
        depth=None,
        labelled_terms=terms,
        targets=Targets(paper=b1 / 2, alternative=b1),
        convention=convention,
        evidence=evidence,
        prec=prec,
    )
    logging.get_logger().debug(
        "verified McShane-Mirzakhani", cutoff=length_cutoff, terms=report.terms, residual=report.residual
    )
    return report


@dataclasses.dataclass(frozen=True)
class Orthogeodesic:
    """A geodesic arc meeting the boundary of a pair of pants orthogonally at both ends.

    boundaries holds the 0-based indices of the boundaries at its ends, and
    word the conjugator carrying the second boundary's axis to the lift the
    arc reaches.
    """

    boundaries: tuple[int, int]
    word: fuchsian.Word
    length: float


def _frame(g: core.Geodesic) -> core.MoebiusMap:
    """Return a map sending the endpoints of g to 0 and ∞."""
    s = g.start.value
    if g.is_vertical:
        return core.MoebiusMap.translation(-s)
    return core.MoebiusMap.from_entries(1.0, -s, -1.0, g.end.value)


def orthogeodesic_spectrum(
    p: surfaces.PairOfPants,
    length_cutoff: float,
    depth: int,
    group: fuchsian.FuchsianGroup | None = None,
    prec: precision.Precision = precision.Precision.DOUBLE,
) -> list[Orthogeodesic]:
    """Return the orthogeodesics of a pair of pants of length at most length_cutoff.

    For boundaries i ≤ j and words w of the depth-ball, the common
    perpendicular of axis(g_i) and w·axis(g_j) is kept when the two are
    disjoint. Arcs are identified by the point where they leave boundary i,
    measured along the closed geodesic, together with their length: two arcs
    leaving the same point of the same boundary orthogonally into the
    surface coincide. An arc from a boundary to itself is keyed by the
    earlier of its two feet.

    Args:
        p: The pair of pants; every boundary must be geodesic.
        length_cutoff: Longest arc kept.
        depth: Word-ball depth.
        group: A group uniformizing p, by default pair_of_pants(*p.lengths).
        prec: In extended precision each kept length is recomputed in mpmath
            from the endpoints of the framed lift.

    Raises:
        CuspedBoundaryError if a boundary is a cusp.
        EmptyBallError if depth is less than 1.
    """
    if any(v == 0 for v in p.lengths):
        msg = f"pair of pants {p.lengths} has a cusp; orthogeodesics need geodesic boundary"
        raise errors.CuspedBoundaryError(msg)
    if depth < 1:
        msg = f"depth must be at least 1, got {depth}"
        raise errors.EmptyBallError(msg)

    g = group if group is not None else surfaces.pair_of_pants(*p.lengths)
    words = p.boundary_words
    elements = [fuchsian.evaluate(g, w) for w in words]
    axes = [core.axis(e) for e in elements]
    b = fuchsian.word_ball(g, depth)

    found: dict[tuple, Orthogeodesic] = {}
    for i in range(3):
        frame = _frame(axes[i]).as_array()
        period = core.translation_length(elements[i])
        at_start = b.starts_with(words[i]) | b.starts_with(words[i].inverse())
        for j in range(i, 3):
            at_end = b.ends_with(words[j]) | b.ends_with(words[j].inverse())
            rows = np.flatnonzero(~at_start & ~at_end)
            mats = frame @ b.matrices[rows]
            f1, f2 = axes[j].endpoint_vectors()
            v1, v2 = mats @ f1, mats @ f2
            codes, lengths = core.relation_arrays(np.array([0.0, 1.0]), np.array([1.0, 0.0]), v1, v2)
            ok = np.flatnonzero((codes == core.Relation.DISJOINT) & (lengths <= length_cutoff))
            if ok.size == 0:
                continue

            pp = v1[ok, 0] / v1[ok, 1]
            qq = v2[ok, 0] / v2[ok, 1]
            foot = np.sqrt(pp * qq)
            position = np.mod(np.log(foot) / period, 1.0)
            if i == j:
                position = np.minimum(position, _far_foot_position(mats[ok], frame, pp, qq, period))
            position = np.mod(np.round(position, 7), 1.0)
            side = np.sign(pp)

            for k, row in enumerate(ok):
                length = float(lengths[row])
                if prec == precision.Precision.EXTENDED:
                    length = _perpendicular_length(v1[row], v2[row])
                key = (i, j, int(side[k]), float(position[k]), round(length, 8))
                if key not in found:
                    found[key] = Orthogeodesic(boundaries=(i, j), word=b.word(int(rows[row])), length=length)

    spectrum = sorted(found.values(), key=lambda o: (o.length, o.boundaries, o.word.letters))
    logging.get_logger().debug(
        "enumerated orthogeodesics", pants=p.lengths, cutoff=length_cutoff, depth=depth, count=len(spectrum)
    )
    return spectrum


def _far_foot_position(
    mats: np.ndarray, frame: np.ndarray, pp: np.ndarray, qq: np.ndarray, period: float
) -> np.ndarray:
    """Return where an arc from a boundary to itself meets the boundary at its far end.

    In the frame where the boundary's axis is (0, ∞), the arc ends on the
    circle over (p, q) at the point of modulus sqrt(pq). Pulling that point
    back by the framed conjugator lands on the imaginary axis.
    """
    x = 2 * pp * qq / (pp + qq)
    y = np.sqrt(np.maximum(pp * qq - x * x, 0.0))
    end = x + 1j * y

    # The framed conjugator is mats · frame⁻¹; apply its inverse.
    frame_inv = np.array([[frame[1, 1], -frame[0, 1]], [-frame[1, 0], frame[0, 0]]])
    framed = mats @ frame_inv
    a, bb = framed[:, 0, 0], framed[:, 0, 1]
    c, d = framed[:, 1, 0], framed[:, 1, 1]
    back = (d * end - bb) / (-c * end + a)
    return np.mod(np.log(np.abs(back)) / period, 1.0)


def _perpendicular_length(v1: np.ndarray, v2: np.ndarray) -> float:
    """Return the distance from (0, ∞) to a disjoint geodesic with homogeneous endpoints v1, v2.

    With endpoints p, q of one sign, tanh²(d/2) is the smaller of p/q and q/p.
    Evaluated in extended precision.
    """
    with mpmath.workdps(precision.EXTENDED_DIGITS):
        p = mpmath.mpf(float(v1[0])) / mpmath.mpf(float(v1[1]))
        q = mpmath.mpf(float(v2[0])) / mpmath.mpf(float(v2[1]))
        ratio = min(p / q, q / p)
        return float(2 * mpmath.atanh(mpmath.sqrt(ratio)))


def _bridgeman_argument(length: float, prec: precision.Precision) -> float:
    """Return sech²(length/2)."""
    if prec == precision.Precision.EXTENDED:
        with mpmath.workdps(precision.EXTENDED_DIGITS):
            return float(mpmath.sech(mpmath.mpf(length) / 2) ** 2)
    return 1 / math.cosh(length / 2) ** 2


def verify_bridgeman(
    p: surfaces.PairOfPants,
    length_cutoff: float,
    depth: int,
    prec: precision.Precision = precision.Precision.DOUBLE,
    group: fuchsian.FuchsianGroup | None = None,
    surface: str | None = None,
) -> IdentityReport:
    """Sum R(sech²(ℓ/2)) over the orthogeodesics of a pair of pants.

    The target is π/4 times the area 2π, that is π²/2.

    Raises:
        CuspedBoundaryError if a boundary is a cusp.
        EmptyBallError if depth is less than 1.
    """
    spectrum = orthogeodesic_spectrum(p, length_cutoff, depth, group, prec)
    terms = []
    for o in spectrum:
        x = _bridgeman_argument(o.length, prec)
        label = f"{o.boundaries[0] + 1}-{o.boundaries[1] + 1}:{' '.join(map(str, o.word.letters))}"
        terms.append((label, o.length, rogers_dilog(x, prec)))
    target = math.pi / 4 * surfaces.AREA
    report = _report(
        surface=surface or f"pants:{p.l1:g},{p.l2:g},{p.l3:g}",
        identity="bridgeman",
        cutoff=length_cutoff,
        depth=depth,
        labelled_terms=terms,
        targets=Targets(paper=target, alternative=target),
        convention=Convention.HALF,
        evidence=None,
        prec=prec,
    )
    logging.get_logger().debug(
        "verified Bridgeman", cutoff=length_cutoff, depth=depth, terms=report.terms, residual=report.residual
    )
    return report
