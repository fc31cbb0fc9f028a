"""Core domain types for 1D mountain-valley crease patterns.

A crease pattern on a paper segment is a strictly increasing sequence of
integer positions ``c_0 < c_1 < ... < c_n``.  The interior points
``c_1 .. c_{n-1}`` are creases, the outer two are the paper ends.  A
mountain-valley (MV) assignment labels every crease 'M' or 'V'.

All positions are exact signed 64-bit integers.  The crimp machinery in
:mod:`origami1d.fold_engine` relies on exact equality of interval lengths,
so floating point is deliberately rejected everywhere in the core.  Fused
interval lengths never exceed the total span of the pattern, so bounding
positions and the span to the 64-bit range keeps every derived quantity
in range as well.

Crease indices are 1-based throughout the package (crease ``i`` is the
point ``positions[i]``), matching the conventional ``c_1 .. c_{n-1}``
naming used in output.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

MOUNTAIN = "M"
VALLEY = "V"
UNKNOWN = "?"


class PatternError(ValueError):
    """Invalid pattern input: parsing, validation or generation failure."""


def _check_positions(positions: tuple[int, ...]) -> None:
    if len(positions) < 2:
        raise PatternError("a pattern needs at least the two paper ends")
    for p in positions:
        if not isinstance(p, int) or isinstance(p, bool):
            raise PatternError(f"position {p!r} is not an integer")
        if p < INT64_MIN or p > INT64_MAX:
            raise PatternError(f"position {p} outside signed 64-bit range")
    for a, b in zip(positions, positions[1:]):
        if a >= b:
            raise PatternError(f"positions must be strictly increasing, got {a} >= {b}")
    if positions[-1] - positions[0] > INT64_MAX:
        # Keeps every fused interval length representable in 64 bits.
        raise PatternError("pattern span exceeds signed 64-bit range")


@dataclass(frozen=True)
class CreasePattern:
    """Strictly increasing integer positions ``c_0 .. c_n``."""

    positions: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.positions, tuple):
            object.__setattr__(self, "positions", tuple(self.positions))
        _check_positions(self.positions)

    @property
    def num_creases(self) -> int:
        return len(self.positions) - 2

    def crease_ids(self) -> range:
        """1-based indices of the creases ``c_1 .. c_{n-1}``."""
        return range(1, len(self.positions) - 1)

    def crease_position(self, crease_id: int) -> int:
        if not 1 <= crease_id <= self.num_creases:
            raise PatternError(f"no crease with index {crease_id}")
        return self.positions[crease_id]

    def intervals(self) -> tuple[int, ...]:
        """Consecutive gaps; always positive and summing to the span."""
        pos = self.positions
        return tuple(pos[i + 1] - pos[i] for i in range(len(pos) - 1))


def _check_labels(labels: str, allowed: str) -> None:
    if not isinstance(labels, str):
        raise PatternError("labels must be a string")
    for ch in labels:
        if ch not in allowed:
            raise PatternError(f"invalid crease label {ch!r}")


@dataclass(frozen=True)
class MVAssignment:
    """One 'M' or 'V' per crease, as a compact string."""

    labels: str

    def __post_init__(self) -> None:
        _check_labels(self.labels, MOUNTAIN + VALLEY)

    def label(self, crease_id: int) -> str:
        return self.labels[crease_id - 1]

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class PartialMVAssignment:
    """Like :class:`MVAssignment` but '?' marks an unknown label."""

    labels: str

    def __post_init__(self) -> None:
        _check_labels(self.labels, MOUNTAIN + VALLEY + UNKNOWN)

    def label(self, crease_id: int) -> str:
        return self.labels[crease_id - 1]

    def is_complete(self) -> bool:
        return UNKNOWN not in self.labels

    def __len__(self) -> int:
        return len(self.labels)


def _check_lengths(pattern: CreasePattern, mv) -> None:
    if len(mv.labels) != pattern.num_creases:
        raise PatternError(
            f"{pattern.num_creases} creases but {len(mv.labels)} labels"
        )


@dataclass(frozen=True)
class MVPattern:
    """A crease pattern together with a complete MV assignment."""

    pattern: CreasePattern
    mv: MVAssignment

    def __post_init__(self) -> None:
        _check_lengths(self.pattern, self.mv)

    @property
    def positions(self) -> tuple[int, ...]:
        return self.pattern.positions

    @property
    def labels(self) -> str:
        return self.mv.labels


@dataclass(frozen=True)
class PartialMVPattern:
    """A crease pattern with a partially known MV assignment."""

    pattern: CreasePattern
    mv: PartialMVAssignment

    def __post_init__(self) -> None:
        _check_lengths(self.pattern, self.mv)


def mv_pattern(positions, labels: str) -> MVPattern:
    """Convenience constructor from raw positions and a label string."""
    return MVPattern(CreasePattern(tuple(positions)), MVAssignment(labels))


# ---------------------------------------------------------------------------
# Text and JSON serialization
#
# Text format (UTF-8, line oriented, '#' starts a comment):
#   positions: 0 3 4 7
#   mv: MV
# The mv string may be empty (no creases) and may contain '?' for
# unknown labels, in which case parsing yields a PartialMVPattern.
# ---------------------------------------------------------------------------


def _parse_int(token: str) -> int:
    try:
        return int(token, 10)
    except ValueError:
        raise PatternError(
            f"position {token!r} is not an integer "
            "(scale rational inputs to integers first)"
        ) from None


def parse_pattern(text: str) -> MVPattern | PartialMVPattern:
    """Parse the line-oriented text format described in the module docs."""
    positions: tuple[int, ...] | None = None
    labels: str | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("positions:"):
            if positions is not None:
                raise PatternError("duplicate 'positions:' line")
            positions = tuple(_parse_int(t) for t in line[len("positions:"):].split())
        elif line.startswith("mv:"):
            if labels is not None:
                raise PatternError("duplicate 'mv:' line")
            labels = line[len("mv:"):].strip()
        else:
            raise PatternError(f"unrecognized line: {raw.strip()!r}")
    if positions is None:
        raise PatternError("missing 'positions:' line")
    if labels is None:
        raise PatternError("missing 'mv:' line")
    pattern = CreasePattern(positions)
    if UNKNOWN in labels:
        return PartialMVPattern(pattern, PartialMVAssignment(labels))
    return MVPattern(pattern, MVAssignment(labels))


def serialize_pattern(p: MVPattern | PartialMVPattern) -> str:
    pos = " ".join(str(x) for x in p.pattern.positions)
    return f"positions: {pos}\nmv: {p.mv.labels}\n"


def pattern_to_json(p: MVPattern | PartialMVPattern) -> str:
    doc = {"positions": list(p.pattern.positions), "mv": p.mv.labels}
    return json.dumps(doc, separators=(",", ":"))


def pattern_from_json(text: str) -> MVPattern | PartialMVPattern:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PatternError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "positions" not in doc or "mv" not in doc:
        raise PatternError('JSON pattern needs "positions" and "mv" keys')
    positions = doc["positions"]
    if not isinstance(positions, list):
        raise PatternError('"positions" must be a list')
    labels = doc["mv"]
    if not isinstance(labels, str):
        raise PatternError('"mv" must be a string')
    pattern = CreasePattern(tuple(positions))
    if UNKNOWN in labels:
        return PartialMVPattern(pattern, PartialMVAssignment(labels))
    return MVPattern(pattern, MVAssignment(labels))


# ---------------------------------------------------------------------------
# Random flat-foldable pattern generation
# ---------------------------------------------------------------------------


def _generate_rejection(num_creases: int, rng: random.Random, max_attempts: int) -> MVPattern:
    from .fold_engine import is_flat_foldable

    for _ in range(max_attempts):
        gaps = [rng.randint(1, 8) for _ in range(num_creases + 1)]
        positions = [0]
        for g in gaps:
            positions.append(positions[-1] + g)
        labels = "".join(rng.choice("MV") for _ in range(num_creases))
        candidate = mv_pattern(positions, labels)
        if is_flat_foldable(candidate):
            return candidate
    raise PatternError(
        f"no foldable pattern with {num_creases} creases found "
        f"in {max_attempts} rejection attempts"
    )


def _generate_inverse(num_creases: int, rng: random.Random) -> MVPattern:
    """Grow a foldable pattern by planting crimpable runs into an end sequence.

    Two inverse moves, each the reversal of one crimp:

    * interval split: replace one interval of length ``l`` with
      ``L, d*k, R`` where ``L + R = l + d`` and ``L, R > d`` and the run
      carries ``k+1`` creases with equal M and V counts (``k`` odd);
      crimping the run restores the original interval exactly.
    * crease split: replace one crease (adjacent intervals ``L, R``) with
      a run ``d*k`` between them, ``d < min(L, R)``, ``k`` even, carrying
      ``k+1`` creases whose majority label equals the replaced crease's
      label; crimping the run restores the crease at its old position
      with its old label.

    Either move keeps the pattern foldable: the planted run is crimpable
    in place, and crimping it first reproduces the previous (foldable)
    pattern.  Both moves add an even number of creases, so the seed end
    sequence fixes the parity.
    """
    # Interval cells in a linked list; cells are never mutated, only
    # replaced, so candidate bookkeeping can validate lazily by id.
    span = 3 * (num_creases + 2) + 16
    lens: list[int] = []
    left_label: list[str] = []  # label of the crease left of the cell ("" = paper start)
    nxt: list[int] = []
    prv: list[int] = []
    alive: list[bool] = []

    def new_cell(length: int, label: str) -> int:
        lens.append(length)
        left_label.append(label)
        nxt.append(-1)
        prv.append(-1)
        alive.append(True)
        return len(lens) - 1

    if num_creases % 2 == 0:
        head = new_cell(span, "")
        creases = 0
    else:
        head = new_cell(span // 2, "")
        second = new_cell(span - span // 2, rng.choice("MV"))
        nxt[head] = second
        prv[second] = head
        creases = 1

    def replace_cell(cell: int, lengths: list[int], labels: list[str]) -> None:
        """Replace `cell` with a chain of new cells.

        The first chain cell inherits `cell`'s left crease label; `labels`
        supplies the crease left of every following chain cell.
        """
        chain = [new_cell(lengths[0], left_label[cell])]
        for length, lab in zip(lengths[1:], labels):
            c = new_cell(length, lab)
            nxt[chain[-1]] = c
            prv[c] = chain[-1]
            chain.append(c)
        before, after = prv[cell], nxt[cell]
        alive[cell] = False
        if before >= 0:
            nxt[before] = chain[0]
        prv[chain[0]] = before
        nxt[chain[-1]] = after
        if after >= 0:
            prv[after] = chain[-1]

    def interval_split(cell: int) -> int:
        l = lens[cell]
        if l < 3:
            return 0
        d = rng.randint(1, min(2, l - 2))
        k = rng.choice((1, 3)) if creases + 4 <= num_creases else 1
        left = rng.randint(d + 1, l - 1)
        right = l + d - left
        half = (k + 1) // 2
        labs = list("M" * half + "V" * half)
        rng.shuffle(labs)
        replace_cell(cell, [left] + [d] * k + [right], labs)
        return k + 1

    def crease_split(cell: int) -> int:
        # Splits the crease to the left of `cell`; the run's first crease
        # keeps the old label, so the extra labels are an even M/V mix
        # biased to make the old label the majority.
        p = prv[cell]
        if p < 0:
            return 0
        lo = min(lens[p], lens[cell])
        if lo < 2:
            return 0
        d = rng.randint(1, min(2, lo - 1))
        k = rng.choice((2, 4)) if creases + 4 <= num_creases else 2
        old = left_label[cell]
        minority = "V" if old == "M" else "M"
        labs = list(old * (k // 2) + minority * (k // 2))
        rng.shuffle(labs)
        replace_cell(cell, [d] * k + [lens[cell]], labs)
        return k

    while creases < num_creases:
        cells = [i for i in range(len(lens)) if alive[i]]
        rng.shuffle(cells)
        progress = 0
        for cell in cells:
            if creases >= num_creases:
                break
            if rng.random() < 0.5:
                added = interval_split(cell) or crease_split(cell)
            else:
                added = crease_split(cell) or interval_split(cell)
            creases += added
            progress += added
        if progress == 0:  # pragma: no cover - span sizing prevents this
            raise PatternError("inverse-crimp generator stalled")

    head = next(i for i in range(len(lens)) if alive[i] and prv[i] < 0)
    positions = [0]
    labels = []
    cell = head
    while cell >= 0:
        if left_label[cell]:
            labels.append(left_label[cell])
        positions.append(positions[-1] + lens[cell])
        cell = nxt[cell]
    return mv_pattern(positions, "".join(labels))


def generate_random(
    num_creases: int,
    seed: int,
    strategy: str = "auto",
    max_attempts: int = 10_000,
) -> MVPattern:
    """Deterministically generate a flat-foldable pattern with `num_creases` creases.

    ``strategy`` is one of ``auto`` (rejection sampling up to 20 creases,
    inverse crimping beyond), ``rejection`` or ``inverse``.
    """
    if num_creases < 0:
        raise PatternError("num_creases must be >= 0")
    rng = random.Random(seed)
    if num_creases == 0:
        return mv_pattern([0, 5 + rng.randint(0, 10)], "")
    if strategy == "auto":
        strategy = "rejection" if num_creases <= 20 else "inverse"
    if strategy == "rejection":
        return _generate_rejection(num_creases, rng, max_attempts)
    if strategy == "inverse":
        return _generate_inverse(num_creases, rng)
    raise PatternError(f"unknown strategy {strategy!r}")
