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

"""Free Fuchsian groups: words, word balls, conjugacy classes and cusps.

Words use signed 1-based generator indices: letter k is generator k - 1 and
letter -k is its inverse. All searches are bounded by a word-length depth,
and every result that depends on it reports the depth it was computed at.
"""

import dataclasses
import enum
import functools
import math
from collections.abc import Iterator, Sequence

import numpy as np
import pydantic

from hypsurf import core, errors, logging, runtime

"""Number of word balls kept in the cache."""
BALL_CACHE_SIZE = 2

"""Relative tolerance when checking a word evaluates to a translation."""
TRANSLATION_TOLERANCE = 1e-9


def letter_key(letter: int) -> int:
    """Order letters as 1, -1, 2, -2, ..."""
    return 2 * (abs(letter) - 1) + (1 if letter < 0 else 0)


@dataclasses.dataclass(frozen=True)
class Word:
    """A freely reduced word in the generators and their inverses."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        """Check the word is freely reduced and uses no zero letter."""
        letters = tuple(int(v) for v in self.letters)
        object.__setattr__(self, "letters", letters)
        if any(v == 0 for v in letters):
            msg = f"letters are signed 1-based generator indices, got {letters}"
            raise errors.DomainError(msg)
        for x, y in zip(letters, letters[1:], strict=False):
            if x == -y:
                msg = f"word {letters} is not freely reduced"
                raise errors.DomainError(msg)

    @classmethod
    def reduce(cls, letters: Sequence[int]) -> "Word":
        """Create a word by freely reducing a sequence of letters."""
        stack: list[int] = []
        for v in letters:
            if stack and stack[-1] == -v:
                stack.pop()
            else:
                stack.append(int(v))
        return cls(tuple(stack))

    def __len__(self) -> int:
        """Return the word length."""
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        """Return the reduced concatenation."""
        return Word.reduce(self.letters + other.letters)

    def inverse(self) -> "Word":
        """Return the inverse word."""
        return Word(tuple(-v for v in reversed(self.letters)))

    def power(self, k: int) -> "Word":
        """Return the reduced k-th power."""
        base = self if k >= 0 else self.inverse()
        return Word.reduce(base.letters * abs(k))

    @property
    def is_cyclically_reduced(self) -> bool:
        """Whether the first letter is not the inverse of the last."""
        return len(self.letters) < 2 or self.letters[0] != -self.letters[-1]  # noqa: PLR2004

    def cyclic_reduction(self) -> "Word":
        """Return the cyclically reduced core of the word."""
        letters = self.letters
        while len(letters) >= 2 and letters[0] == -letters[-1]:  # noqa: PLR2004
            letters = letters[1:-1]
        return Word(letters)

    def is_proper_power(self) -> bool:
        """Whether a cyclically reduced word is a power u^k with k ≥ 2."""
        n = len(self.letters)
        for k in range(1, n // 2 + 1):
            if n % k == 0 and self.letters == self.letters[k:] + self.letters[:k]:
                return True
        return False

    def canonical_cyclic(self) -> "Word":
        """Return the least rotation of the word or of its inverse.

        Letters are compared in the order 1, -1, 2, -2, ... The word is
        cyclically reduced first.
        """
        core_word = self.cyclic_reduction()
        if not core_word.letters:
            return core_word
        return Word(_least_rotation(core_word.letters))

    def format(self, labels: Sequence[str]) -> str:
        """Format the word with generator labels, e.g. "X Y^-1"."""
        if not self.letters:
            return "1"
        parts = []
        for v in self.letters:
            label = labels[abs(v) - 1]
            parts.append(label if v > 0 else f"{label}^-1")
        return " ".join(parts)


def _least_rotation(letters: tuple[int, ...]) -> tuple[int, ...]:
    inv = tuple(-v for v in reversed(letters))
    n = len(letters)
    best: tuple[int, ...] | None = None
    best_key: tuple[int, ...] | None = None
    for source in (letters, inv):
        for i in range(n):
            rot = source[i:] + source[:i]
            key = tuple(letter_key(v) for v in rot)
            if best_key is None or key < best_key:
                best, best_key = rot, key
    return best


@dataclasses.dataclass(frozen=True)
class CuspData:
    """Where the group's distinguished cusp sits.

    When normalized, the cusp is at infinity and the peripheral word
    evaluates to z ↦ z + width.
    """

    width: float
    peripheral: Word = Word((1,))
    normalized: bool = True

    def __post_init__(self):
        """Check the width is positive."""
        if not self.width > 0:
            raise errors.NonPositiveLengthError("width", self.width)


@dataclasses.dataclass(frozen=True)
class FuchsianGroup:
    """A finitely generated Fuchsian group, given by its generators.

    The group is treated as free on its generators when assumed_free is set.
    """

    generators: tuple[core.MoebiusMap, ...]
    labels: tuple[str, ...] = ()
    assumed_free: bool = True
    cusp: CuspData | None = None
    label: str = ""

    def __post_init__(self):
        """Check generators are nontrivial and the cusp data is consistent."""
        object.__setattr__(self, "generators", tuple(self.generators))
        labels = tuple(self.labels) or tuple(f"g{i + 1}" for i in range(len(self.generators)))
        object.__setattr__(self, "labels", labels)
        if not self.generators:
            msg = "a group needs at least one generator"
            raise errors.DomainError(msg)
        if len(labels) != len(self.generators):
            msg = f"got {len(labels)} labels for {len(self.generators)} generators"
            raise errors.DomainError(msg)
        for label, g in zip(labels, self.generators, strict=True):
            if core.is_identity(g):
                msg = f"generator {label} is the identity"
                raise errors.DomainError(msg)
        if self.cusp is not None and self.cusp.normalized:
            self._check_cusp()

    def _check_cusp(self) -> None:
        width = self.cusp.width
        if self.cusp.peripheral == Word((1,)):
            g = self.generators[0]
            exact = (g.a, g.b, g.c, g.d) in ((1.0, width, 0.0, 1.0), (-1.0, -width, 0.0, -1.0))
            if not exact:
                msg = f"generator 0 must be z ↦ z + {width} exactly, got {g}"
                raise errors.DomainError(msg)
            return
        p = evaluate(self, self.cusp.peripheral).canonical()
        ok = (
            p.fixes_infinity(TRANSLATION_TOLERANCE)
            and abs(p.a - 1) <= TRANSLATION_TOLERANCE
            and abs(p.b - width) <= TRANSLATION_TOLERANCE * max(1.0, width)
        )
        if not ok:
            msg = f"peripheral word does not evaluate to z ↦ z + {width}: {p}"
            raise errors.DomainError(msg)

    @property
    def rank(self) -> int:
        """The number of generators."""
        return len(self.generators)

    def format(self, w: Word) -> str:
        """Format a word with this group's labels."""
        return w.format(self.labels)

    def conjugated(self, g: core.MoebiusMap, label: str | None = None) -> "FuchsianGroup":
        """Return g G g⁻¹ with the cusp data dropped."""
        return FuchsianGroup(
            generators=tuple(core.conjugate(m, g) for m in self.generators),
            labels=self.labels,
            assumed_free=self.assumed_free,
            label=self.label if label is None else label,
        )


def evaluate(group: FuchsianGroup, w: Word) -> core.MoebiusMap:
    """Return the product of the generators spelled by w.

    Raises:
        IndexOutOfRangeError if w uses a generator the group does not have.
    """
    m = core.MoebiusMap.identity()
    for v in w.letters:
        i = abs(v) - 1
        if i >= group.rank:
            msg = f"letter {v} refers to generator {i}, but the group has {group.rank}"
            raise errors.IndexOutOfRangeError(msg)
        g = group.generators[i]
        m = m @ (g if v > 0 else g.inverse())
    return m


def ball_size(rank: int, depth: int) -> int:
    """Return 1 + Σ 2g(2g - 1)^(k-1), the number of reduced words of length ≤ depth."""
    return 1 + sum(2 * rank * (2 * rank - 1) ** (k - 1) for k in range(1, depth + 1))


@dataclasses.dataclass(frozen=True, eq=False)
class WordBall:
    """Every freely reduced word of length at most depth, as arrays.

    Rows are ordered by word length. Row 0 is the empty word. letters holds
    the words left-aligned and zero padded.
    """

    depth: int
    rank: int
    letters: np.ndarray
    lengths: np.ndarray
    matrices: np.ndarray

    def __len__(self) -> int:
        """Return the number of words."""
        return int(self.lengths.shape[0])

    def word(self, i: int) -> Word:
        """Return the word in row i."""
        return Word(tuple(int(v) for v in self.letters[i, : self.lengths[i]]))

    def element(self, i: int) -> core.MoebiusMap:
        """Return the group element in row i."""
        return core.MoebiusMap.from_array(self.matrices[i])

    def first_letters(self) -> np.ndarray:
        """Return each word's first letter, 0 for the empty word."""
        if self.depth == 0:
            return np.zeros(len(self), dtype=np.int8)
        return self.letters[:, 0]

    def last_letters(self) -> np.ndarray:
        """Return each word's last letter, 0 for the empty word."""
        if self.depth == 0:
            return np.zeros(len(self), dtype=np.int8)
        cols = np.clip(self.lengths.astype(np.int64) - 1, 0, None)
        last = self.letters[np.arange(len(self)), cols]
        return np.where(self.lengths > 0, last, 0)

    def starts_with(self, w: Word) -> np.ndarray:
        """Return a mask of the words that begin with w."""
        n = len(w)
        mask = self.lengths >= n
        for t, v in enumerate(w.letters):
            if t >= self.depth:
                return np.zeros(len(self), dtype=bool)
            mask &= self.letters[:, t] == v
        return mask

    def ends_with(self, w: Word) -> np.ndarray:
        """Return a mask of the words that end with w."""
        n = len(w)
        if n > self.depth:
            return np.zeros(len(self), dtype=bool)
        mask = self.lengths >= n
        rows = np.arange(len(self))
        for t, v in enumerate(w.letters):
            cols = np.clip(self.lengths.astype(np.int64) - n + t, 0, self.depth - 1)
            mask &= self.letters[rows, cols] == v
        return mask

    def matches(self, w: Word) -> np.ndarray:
        """Return a mask of the rows equal to w."""
        if len(w) > self.depth:
            return np.zeros(len(self), dtype=bool)
        target = np.zeros(self.depth, dtype=self.letters.dtype)
        target[: len(w)] = w.letters
        return (self.lengths == len(w)) & np.all(self.letters == target, axis=1)

    def power_mask(self, w: Word) -> np.ndarray:
        """Return a mask of the rows equal to a nonzero power of w."""
        mask = np.zeros(len(self), dtype=bool)
        if not w.letters:
            return mask
        k = 1
        while True:
            found = False
            for p in (w.power(k), w.power(-k)):
                if len(p) <= self.depth:
                    mask |= self.matches(p)
                    found = True
            if not found:
                return mask
            k += 1

    def prefix_parts(self) -> list[np.ndarray]:
        """Partition the non-empty words by their first letter."""
        first = self.first_letters()
        alphabet = _alphabet(self.rank)
        return [np.flatnonzero(first == v) for v in alphabet]


def _alphabet(rank: int) -> list[int]:
    return [v for i in range(1, rank + 1) for v in (i, -i)]


@functools.lru_cache(maxsize=BALL_CACHE_SIZE)
def word_ball(group: FuchsianGroup, depth: int) -> WordBall:
    """Return the ball of reduced words of length at most depth.

    Raises:
        NotFreeError if the group is not flagged as free.
        DomainError if depth is negative.
    """
    if not group.assumed_free:
        msg = f"group {group.label!r} is not flagged as free"
        raise errors.NotFreeError(msg)
    if depth < 0:
        msg = f"depth must be non-negative, got {depth}"
        raise errors.DomainError(msg)

    log = logging.get_logger()
    alphabet = _alphabet(group.rank)
    gens = {}
    for i, g in enumerate(group.generators, start=1):
        gens[i] = g.as_array()
        gens[-i] = g.inverse().as_array()

    width = max(depth, 1)
    letters = [np.zeros((1, width), dtype=np.int8)]
    lengths = [np.zeros(1, dtype=np.int16)]
    matrices = [np.eye(2)[np.newaxis]]

    prev_letters, prev_mats = letters[0], matrices[0]
    prev_last = np.zeros(1, dtype=np.int8)
    for k in range(1, depth + 1):
        level_letters, level_mats, level_last = [], [], []
        for v in alphabet:
            keep = prev_last != -v
            w = prev_letters[keep].copy()
            w[:, k - 1] = v
            level_letters.append(w)
            level_mats.append(prev_mats[keep] @ gens[v])
            level_last.append(np.full(w.shape[0], v, dtype=np.int8))
        prev_letters = np.concatenate(level_letters)
        prev_mats = np.concatenate(level_mats)
        prev_last = np.concatenate(level_last)
        letters.append(prev_letters)
        matrices.append(prev_mats)
        lengths.append(np.full(prev_letters.shape[0], k, dtype=np.int16))

    ball_letters = np.concatenate(letters)
    if depth == 0:
        ball_letters = ball_letters[:, :0]
    result = WordBall(
        depth=depth,
        rank=group.rank,
        letters=ball_letters,
        lengths=np.concatenate(lengths),
        matrices=np.concatenate(matrices),
    )
    log.debug("built word ball", group=group.label, depth=depth, size=len(result))
    return result


def ball(group: FuchsianGroup, max_word_length: int) -> Iterator[tuple[Word, core.MoebiusMap]]:
    """Yield every reduced word of length at most max_word_length with its element.

    Words come in order of length. The ball may be split by first letter
    with WordBall.prefix_parts.

    Raises:
        NotFreeError if the group is not flagged as free.
    """
    b = word_ball(group, max_word_length)
    for i in range(len(b)):
        yield b.word(i), b.element(i)


class Simplicity(enum.Enum):
    """Whether a closed geodesic is known to be simple."""

    SIMPLE = "simple"
    NON_SIMPLE = "non-simple"
    UNKNOWN = "unknown"


@dataclasses.dataclass(frozen=True)
class SimplicityStatus:
    """A simplicity verdict with its certificate.

    SIMPLE carries the depth up to which no crossing translate exists.
    NON_SIMPLE carries a conjugator whose translate of the axis crosses it.
    """

    kind: Simplicity = Simplicity.UNKNOWN
    depth: int | None = None
    witness: Word | None = None

    @classmethod
    def simple(cls, depth: int) -> "SimplicityStatus":
        """Return a SIMPLE verdict certified to depth."""
        return cls(kind=Simplicity.SIMPLE, depth=depth)

    @classmethod
    def non_simple(cls, witness: Word) -> "SimplicityStatus":
        """Return a NON_SIMPLE verdict with its crossing witness."""
        return cls(kind=Simplicity.NON_SIMPLE, witness=witness)


@dataclasses.dataclass(frozen=True)
class ConjClass:
    """A primitive hyperbolic conjugacy class, i.e. a closed geodesic."""

    rep: Word
    trace: float
    length: float
    simplicity: SimplicityStatus = SimplicityStatus()

    def with_simplicity(self, status: SimplicityStatus) -> "ConjClass":
        """Return a copy carrying status."""
        return dataclasses.replace(self, simplicity=status)


def conj_class(group: FuchsianGroup, w: Word) -> ConjClass:
    """Return the class of w, with its canonical representative.

    Raises:
        NotHyperbolicError if w is not hyperbolic.
    """
    rep = w.canonical_cyclic()
    m = evaluate(group, rep)
    length = core.translation_length(m)
    return ConjClass(rep=rep, trace=abs(m.trace), length=length)


def conjugacy_classes(
    group: FuchsianGroup,
    max_trace: float,
    depth: int,
    band: float = core.PARABOLIC_BAND,
) -> list[ConjClass]:
    """Return the primitive hyperbolic classes with |trace| ≤ max_trace.

    Args:
        group: A free group.
        max_trace: Largest absolute trace to keep.
        depth: Largest length of a cyclically reduced representative.
        band: Parabolic band; classes need |trace| > 2 + band.

    Returns:
        Classes deduplicated under rotation, inversion and sign, sorted by
        length and then by representative. The list is complete only for
        representatives of length at most depth.

    Raises:
        DomainError if depth is less than 1.
        NotFreeError if the group is not flagged as free.
    """
    if depth < 1:
        msg = f"depth must be at least 1, got {depth}"
        raise errors.DomainError(msg)
    b = word_ball(group, depth)
    traces = np.abs(b.matrices[:, 0, 0] + b.matrices[:, 1, 1])
    candidates = (
        (b.lengths > 0)
        & (b.first_letters() != -b.last_letters())
        & (traces > 2 + band)
        & (traces <= max_trace * (1 + 1e-12))
    )

    def collect(part: np.ndarray) -> set[tuple[int, ...]]:
        found = set()
        for i in part[candidates[part]]:
            w = b.word(int(i))
            if w.is_proper_power():
                continue
            found.add(w.canonical_cyclic().letters)
        return found

    reps: set[tuple[int, ...]] = set()
    for part in runtime.fan_out(collect, b.prefix_parts()):
        reps |= part

    classes = [conj_class(group, Word(letters)) for letters in reps]
    classes.sort(key=lambda c: (c.length, len(c.rep), [letter_key(v) for v in c.rep.letters]))
    logging.get_logger().debug(
        "enumerated conjugacy classes",
        group=group.label,
        depth=depth,
        max_trace=max_trace,
        count=len(classes),
    )
    return classes


def _cyclic_conjugators(rep: Word) -> list[Word]:
    """Return p·q⁻¹ for prefixes p, q of the cyclic conjugates of rep and rep⁻¹."""
    n = len(rep)
    prefixes = []
    for source in (rep.letters, rep.inverse().letters):
        doubled = source + source
        prefixes.extend(Word.reduce(doubled[:i]) for i in range(n))
    out = {(p * q.inverse()).letters for p in prefixes for q in prefixes}
    return [Word(letters) for letters in sorted(out, key=lambda w: (len(w), w))]


def simplicity(group: FuchsianGroup, cls: ConjClass, depth: int) -> SimplicityStatus:
    """Decide whether a closed geodesic crosses one of its own translates.

    Searches conjugators in the depth-ball and the conjugators relating the
    cyclic conjugates of the representative. A crossing translate is
    rechecked with geodesics_relation before it is returned as a witness.

    Raises:
        NotHyperbolicError if the class is not hyperbolic.
    """
    g = evaluate(group, cls.rep)
    ax = core.axis(g)
    e1, e2 = ax.endpoint_vectors()

    b = word_ball(group, depth)
    extras = _cyclic_conjugators(cls.rep)
    extra_mats = np.stack([evaluate(group, w).as_array() for w in extras])
    mats = np.concatenate([b.matrices, extra_mats])

    codes, _ = core.relation_arrays(e1, e2, mats @ e1, mats @ e2)
    for i in np.flatnonzero(codes == core.Relation.CROSSING):
        i = int(i)
        w = b.word(i) if i < len(b) else extras[i - len(b)]
        other = ax.image(evaluate(group, w))
        if core.geodesics_relation(ax, other).kind == core.Relation.CROSSING:
            return SimplicityStatus.non_simple(w)
    return SimplicityStatus.simple(depth)


def normalizing_map(
    group: FuchsianGroup,
    parabolic: Word,
    *,
    scale: str = "balanced",
    depth: int = 6,
) -> tuple[core.MoebiusMap, Word]:
    """Return the conjugator used by cusp_normalize and the oriented peripheral word.

    See cusp_normalize for the arguments.
    """
    p = evaluate(group, parabolic)
    fixed = core.parabolic_fixed_point(p)
    if fixed.is_infinite:
        s0 = core.MoebiusMap.identity()
    else:
        s0 = core.MoebiusMap(0.0, -1.0, 1.0, -fixed.value)

    moved = core.conjugate(p, s0)
    omega = moved.b / moved.a
    peripheral = parabolic
    if omega < 0:
        peripheral = parabolic.inverse()
        omega = -omega

    conjugated = group.conjugated(s0)
    min_c = _min_nonperipheral_c(conjugated, peripheral, depth)
    match scale:
        case "balanced":
            factor = math.sqrt(min_c / omega)
        case "unit":
            factor = min_c
        case _:
            msg = f"scale must be 'balanced' or 'unit', got {scale!r}"
            raise errors.DomainError(msg)
    return core.MoebiusMap.dilation(factor) @ s0, peripheral


def cusp_normalize(
    group: FuchsianGroup,
    parabolic: Word,
    *,
    scale: str = "balanced",
    depth: int = 6,
) -> FuchsianGroup:
    """Conjugate the group so that the cusp of a parabolic word sits at infinity.

    Args:
        group: A free group.
        parabolic: A word evaluating to a parabolic element.
        scale: "balanced" makes the width equal the least |c| outside the
            peripheral subgroup, so the result does not depend on the input
            conjugate. "unit" makes the maximal cusp height 1.
        depth: Depth of the ball used to find the least |c|.

    Returns:
        The conjugated group with cusp data. A single-letter peripheral word
        becomes generator 0, snapped to z ↦ z + ω exactly.

    Raises:
        NotParabolicError if the word is not parabolic.
        EmptyBallError if the ball holds no word outside the peripheral subgroup.
    """
    conj, peripheral = normalizing_map(group, parabolic, scale=scale, depth=depth)
    gens = [core.conjugate(m, conj) for m in group.generators]
    labels = list(group.labels)
    omega = evaluate(FuchsianGroup(tuple(gens), tuple(labels)), peripheral).canonical().b

    if len(peripheral) == 1:
        v = peripheral.letters[0]
        i = abs(v) - 1
        g = gens[i] if v > 0 else gens[i].inverse()
        label = labels[i] if v > 0 else f"{labels[i]}^-1"
        sign = 1.0 if g.a > 0 else -1.0
        g = core.MoebiusMap(sign, sign * omega, 0.0, sign)
        del gens[i], labels[i]
        gens.insert(0, g)
        labels.insert(0, label)
        peripheral = Word((1,))

    result = FuchsianGroup(
        generators=tuple(gens),
        labels=tuple(labels),
        assumed_free=group.assumed_free,
        cusp=CuspData(width=omega, peripheral=peripheral),
        label=group.label,
    )
    logging.get_logger().debug("normalized cusp", group=group.label, width=omega, scale=scale)
    return result


def _nonperipheral_c(group: FuchsianGroup, peripheral: Word, depth: int) -> tuple[np.ndarray, WordBall]:
    b = word_ball(group, depth)
    c = np.abs(b.matrices[:, 1, 0])
    scale = np.maximum(1.0, np.maximum(np.abs(b.matrices[:, 0, 0]), np.abs(b.matrices[:, 1, 1])))
    usable = (b.lengths > 0) & ~b.power_mask(peripheral) & (c > core.INFINITY_TOLERANCE * scale)
    return np.where(usable, c, np.inf), b


def _min_nonperipheral_c(group: FuchsianGroup, peripheral: Word, depth: int) -> float:
    c, _ = _nonperipheral_c(group, peripheral, depth)
    best = float(np.min(c)) if c.size else math.inf
    if not math.isfinite(best):
        msg = f"no word of length ≤ {depth} lies outside the peripheral subgroup"
        raise errors.EmptyBallError(msg)
    return best


"""Largest number of translates compared pairwise when checking a cusp region is embedded."""
MAX_PAIRWISE_TRANSLATES = 500


def _overlapping(gap: np.ndarray, touch: np.ndarray, tolerance: float) -> tuple[np.ndarray, np.ndarray]:
    """Return masks of overlapping and of tangent horodisk pairs, as core.horodisk_relation decides them."""
    overlapping = gap < touch * (1 - tolerance)
    return overlapping, ~overlapping & (gap <= touch * (1 + tolerance))


def cusp_region_contacts(
    group: FuchsianGroup, height: float, depth: int, tolerance: float = core.TANGENCY_TOLERANCE
) -> tuple[bool, bool]:
    """Relate the horodisk {Im z > height} at the normalized cusp to its translates by the ball.

    The translate by a word with c ≠ 0 is based at a/c with diameter
    1/(c²·height). Every translate must be disjoint from or tangent to the
    horodisk at infinity, and the largest translates must be disjoint from or
    tangent to each other. Translates with the same base are the same
    horodisk.

    Returns:
        Whether some translate is tangent, and whether no two overlap.

    Raises:
        NoCuspError if the group is not cusp-normalized.
        EmptyBallError if no word outside the peripheral subgroup has c ≠ 0.
    """
    cusp = _require_cusp(group)
    if not height > 0:
        raise errors.NonPositiveLengthError("height", height)
    c, b = _nonperipheral_c(group, cusp.peripheral, depth)
    rows = np.flatnonzero(np.isfinite(c))
    if rows.size == 0:
        msg = f"no word of length ≤ {depth} lies outside the peripheral subgroup"
        raise errors.EmptyBallError(msg)
    cs = c[rows]
    base = b.matrices[rows, 0, 0] / b.matrices[rows, 1, 0]
    diameter = 1 / (cs * cs * height)

    overlapping, tangent = _overlapping(np.full(rows.size, height), diameter, tolerance)
    touches = bool(np.any(tangent))
    embedded = not bool(np.any(overlapping))

    big = np.argsort(cs, kind="stable")
    big = big[cs[big] <= 2 * cs[big[0]]]
    _, first = np.unique(np.round(base[big], 9), return_index=True)
    big = big[np.sort(first)][:MAX_PAIRWISE_TRANSLATES]
    x, d = base[big], diameter[big]
    offset = np.abs(x[:, None] - x[None, :])
    same = offset <= tolerance * np.maximum(1.0, np.abs(x[:, None]))
    overlapping, _ = _overlapping(offset * offset, d[:, None] * d[None, :], tolerance)
    return touches, embedded and not bool(np.any(overlapping & ~same))


@dataclasses.dataclass(frozen=True)
class MaximalCusp:
    """The largest embedded horodisk at the normalized cusp."""

    height: float
    area: float
    width: float
    min_c: float
    realizing_word: Word
    tangent: bool
    embedded: bool
    depth: int

    @property
    def bound_holds(self) -> bool:
        """Whether the cusp region has area at least 4."""
        return self.area >= 4 - 1e-9  # noqa: PLR2004  # Sharp lower bound on cusp areas.


def _require_cusp(group: FuchsianGroup) -> CuspData:
    if group.cusp is None or not group.cusp.normalized:
        msg = f"group {group.label!r} is not cusp-normalized"
        raise errors.NoCuspError(msg)
    return group.cusp


def maximal_cusp(group: FuchsianGroup, depth: int) -> MaximalCusp:
    """Return the height and area of the maximal cusp region at infinity.

    height = 1/min|c| over the words outside the peripheral subgroup with
    c ≠ 0, and area = ω·min|c|. The horodisk of that height is then compared
    with its translates by the whole ball: none may overlap it or each other,
    and at least one should be tangent to it.

    Raises:
        NoCuspError if the group is not cusp-normalized.
        EmptyBallError if no word outside the peripheral subgroup has c ≠ 0.
    """
    cusp = _require_cusp(group)
    if depth < 1:
        msg = f"depth must be at least 1, got {depth}"
        raise errors.DomainError(msg)
    c, b = _nonperipheral_c(group, cusp.peripheral, depth)
    i = int(np.argmin(c))
    min_c = float(c[i])
    if not math.isfinite(min_c):
        msg = f"no word of length ≤ {depth} lies outside the peripheral subgroup"
        raise errors.EmptyBallError(msg)

    height = 1 / min_c
    tangent, embedded = cusp_region_contacts(group, height, depth)
    result = MaximalCusp(
        height=height,
        area=cusp.width * min_c,
        width=cusp.width,
        min_c=min_c,
        realizing_word=b.word(i),
        tangent=tangent,
        embedded=embedded,
        depth=depth,
    )
    log = logging.get_logger()
    if not result.bound_holds:
        log.error("cusp area below 4", group=group.label, area=result.area, depth=depth)
    if not (tangent and embedded):
        log.error("cusp region check failed", group=group.label, tangent=tangent, embedded=embedded, depth=depth)
    log.debug("found maximal cusp", group=group.label, height=height, area=result.area, depth=depth)
    return result


def cusp_exclusion_check(group: FuchsianGroup, cls: ConjClass) -> bool:
    """Check that no translate of a simple closed geodesic climbs into the cusp.

    With the maximal horodisk at height h and cusp width ω, every lift of a
    simple closed geodesic stays below height sqrt(h² + ω²/4). Lifts are the
    translates of the axis by the ball of the class's certificate depth.

    Raises:
        NotSimpleError if the class is not certified simple.
        NoCuspError if the group is not cusp-normalized.
    """
    if cls.simplicity.kind != Simplicity.SIMPLE:
        msg = f"class {cls.rep.letters} is not certified simple"
        raise errors.NotSimpleError(msg)
    cusp = _require_cusp(group)
    depth = max(cls.simplicity.depth, 1)
    height = maximal_cusp(group, depth).height
    threshold = math.sqrt(height * height + cusp.width * cusp.width / 4)

    ax = core.axis(evaluate(group, cls.rep))
    e1, e2 = ax.endpoint_vectors()
    b = word_ball(group, depth)
    u = b.matrices @ e1
    v = b.matrices @ e2
    with np.errstate(divide="ignore", invalid="ignore"):
        apex = np.abs(u[:, 0] / u[:, 1] - v[:, 0] / v[:, 1]) / 2
    apex = np.where(np.isfinite(apex), apex, np.inf)
    return bool(np.max(apex) <= threshold + 1e-9 * max(1.0, height))


class CuspDocument(pydantic.BaseModel):
    """The cusp section of a group document."""

    omega: float = pydantic.Field(gt=0)
    peripheral: list[int] = [1]


class GroupDocument(pydantic.BaseModel):
    """A group as stored in JSON."""

    label: str = ""
    generators: list[tuple[float, float, float, float]]
    labels: list[str] = []
    assumed_free: bool = True
    cusp: CuspDocument | None = None

    def to_group(self) -> FuchsianGroup:
        """Build the group described by the document.

        Raises:
            ConfigError if the document does not describe a valid group.
        """
        try:
            gens = tuple(core.MoebiusMap.from_entries(*g) for g in self.generators)
            cusp = None
            if self.cusp is not None:
                cusp = CuspData(width=self.cusp.omega, peripheral=Word(tuple(self.cusp.peripheral)))
            return FuchsianGroup(
                generators=gens,
                labels=tuple(self.labels),
                assumed_free=self.assumed_free,
                cusp=cusp,
                label=self.label,
            )
        except errors.HypsurfError as e:
            raise errors.ConfigError("generators", str(e)) from e

    @classmethod
    def from_group(cls, group: FuchsianGroup) -> "GroupDocument":
        """Describe a group as a document."""
        cusp = None
        if group.cusp is not None and group.cusp.normalized:
            cusp = CuspDocument(omega=group.cusp.width, peripheral=list(group.cusp.peripheral.letters))
        return cls(
            label=group.label,
            generators=[(g.a, g.b, g.c, g.d) for g in group.generators],
            labels=list(group.labels),
            assumed_free=group.assumed_free,
            cusp=cusp,
        )
