"""Crimp execution, flat-foldability, folding maps and folded layer geometry.

A monocrimp folds one adjacent opposite-parity crease pair inside a
crimpable run, fusing the three surrounding intervals ``l, d, r`` into a
single interval of length ``l - d + r`` (never shorter than either
flank, since ``d <= min(l, r)``).  A crimp applies monocrimps inside one
run until none remain: an even-size run vanishes, an odd-size run leaves
one survivor carrying the run's majority label.  A pattern folds flat
exactly when exhaustive crimping never meets a run whose labels have no
opposite adjacent pair left; the residual pattern (an end sequence, with
interval lengths rising then falling) folds under any labels by
repeatedly folding an end interval over or under a neighbor at least as
long.

Folded geometry: with every crease folded and the leftmost interval held
fixed, the image of a point ``x`` in interval ``t`` is the alternating
sum ``2*c_1 - 2*c_2 + ... + (-1)^(t+1)*2*c_t + (-1)^t * x``, which
depends only on positions, never on labels.  Labels decide only the
vertical stacking, which is computed by replaying the witness fold
sequence and validated by :func:`check_layering`.

Everything operates on immutable values and returns new values; all
functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._reduction import ScanResult, StuckRun, reduce_pattern
from .pattern import INT64_MAX, CreasePattern, MVAssignment, MVPattern


class CrimpError(ValueError):
    """A crimp or monocrimp was requested where its preconditions fail."""


class UnfoldableError(ValueError):
    """An operation requiring a flat-foldable pattern got an unfoldable one."""

    def __init__(self, message: str, certificate: StuckRun | None = None):
        super().__init__(message)
        self.certificate = certificate


@dataclass(frozen=True)
class FoldOp:
    """One primitive fold: a monocrimp pair or a single end fold."""

    op: str  # "monocrimp" | "endfold"
    creases: tuple[int, ...]
    side: str | None = None  # "left" | "right" for end folds


def fold_ops_to_json(ops) -> list[dict]:
    out = []
    for op in ops:
        if op.op == "monocrimp":
            out.append({"op": "monocrimp", "creases": list(op.creases)})
        else:
            out.append({"op": "endfold", "crease": op.creases[0], "side": op.side})
    return out


def fold_ops_from_json(docs) -> tuple[FoldOp, ...]:
    ops = []
    for doc in docs:
        if doc["op"] == "monocrimp":
            ops.append(FoldOp("monocrimp", tuple(doc["creases"])))
        else:
            ops.append(FoldOp("endfold", (doc["crease"],), doc["side"]))
    return tuple(ops)


@dataclass(frozen=True)
class CrimpableSequence:
    """Maximal run of equally spaced creases with strictly longer flanks."""

    crease_ids: tuple[int, ...]
    distance: int
    left_flank: int
    right_flank: int

    @property
    def size(self) -> int:
        return len(self.crease_ids)


@dataclass(frozen=True)
class ReducedPattern:
    """A crease pattern mid-reduction; creases keep their original ids."""

    positions: tuple[int, ...]
    crease_ids: tuple[int, ...]
    log: tuple[FoldOp, ...] = ()

    @classmethod
    def from_pattern(cls, pattern: CreasePattern) -> "ReducedPattern":
        return cls(pattern.positions, tuple(pattern.crease_ids()))

    def intervals(self) -> tuple[int, ...]:
        pos = self.positions
        return tuple(pos[i + 1] - pos[i] for i in range(len(pos) - 1))

    def position_of(self, crease_id: int) -> int:
        return self.positions[self.crease_ids.index(crease_id) + 1]


def find_crimpable_sequences(p: ReducedPattern) -> list[CrimpableSequence]:
    """All maximal crimpable runs, left to right; empty iff `p` is an end sequence."""
    iv = p.intervals()
    n = len(iv)
    out = []
    a = 0
    while a < n:
        b = a
        while b + 1 < n and iv[b + 1] == iv[a]:
            b += 1
        if 1 <= a and b <= n - 2 and iv[a - 1] > iv[a] and iv[b + 1] > iv[a]:
            out.append(
                CrimpableSequence(
                    p.crease_ids[a - 1 : b + 1], iv[a], iv[a - 1], iv[b + 1]
                )
            )
        a = b + 1
    return out


def fuse_length(c_im1: int, c_i: int, c_ip1: int, c_ip2: int) -> int:
    """Length of the interval left by a monocrimp on the middle pair.

    Total in its four arguments (only strict ordering is required); the
    result equals ``(c_i - c_im1) - (c_ip1 - c_i) + (c_ip2 - c_ip1)``.
    """
    if not c_im1 < c_i < c_ip1 < c_ip2:
        raise CrimpError("fuse_length arguments must be strictly increasing")
    fused = c_ip2 - 2 * c_ip1 + 2 * c_i - c_im1
    if fused > INT64_MAX:
        raise OverflowError("fused interval length exceeds signed 64-bit range")
    return fused


def _locate_pair(p: ReducedPattern, pair) -> int:
    a, b = pair
    try:
        ia = p.crease_ids.index(a)
    except ValueError:
        raise CrimpError(f"crease {a} not present in the reduced pattern") from None
    if ia + 1 >= len(p.crease_ids) or p.crease_ids[ia + 1] != b:
        raise CrimpError(f"creases ({a}, {b}) are not adjacent")
    return ia


def monocrimp(p: ReducedPattern, mv: MVAssignment, pair) -> ReducedPattern:
    """Fold the adjacent opposite-parity pair, fusing its three intervals."""
    a, b = pair
    ia = _locate_pair(p, pair)
    if mv.label(a) == mv.label(b):
        raise CrimpError(f"creases ({a}, {b}) have equal parity")
    member = any(
        a in seq.crease_ids and b in seq.crease_ids
        for seq in find_crimpable_sequences(p)
    )
    if not member:
        raise CrimpError(f"creases ({a}, {b}) are not inside a crimpable sequence")
    j = ia + 1  # positions index of crease a
    pos = p.positions
    mid = pos[j + 1] - pos[j]
    fused = fuse_length(pos[j - 1], pos[j], pos[j + 1], pos[j + 2])
    # Fused interval never shrinks below either flank it replaced.
    assert fused >= pos[j] - pos[j - 1] and fused >= pos[j + 2] - pos[j + 1]
    shift = 2 * mid
    new_positions = pos[:j] + tuple(x - shift for x in pos[j + 2 :])
    new_ids = p.crease_ids[:ia] + p.crease_ids[ia + 2 :]
    return ReducedPattern(
        new_positions, new_ids, p.log + (FoldOp("monocrimp", (a, b)),)
    )


def crimp(p: ReducedPattern, mv: MVAssignment, seq: CrimpableSequence):
    """Exhaustively monocrimp `seq` (leftmost opposite pair first).

    Returns ``(reduced, survivor)`` where the survivor is the single
    remaining crease id for odd-size runs and ``None`` for even ones.
    Raises :class:`UnfoldableError` when no opposite adjacent pair is
    left before the run is exhausted.
    """
    current = [s for s in find_crimpable_sequences(p) if s.crease_ids == seq.crease_ids]
    if not current:
        raise CrimpError("sequence is not crimpable in this pattern")
    remaining = list(seq.crease_ids)
    while len(remaining) > 1:
        for t in range(len(remaining) - 1):
            if mv.label(remaining[t]) != mv.label(remaining[t + 1]):
                break
        else:
            labs = "".join(mv.label(c) for c in remaining)
            cert = StuckRun(
                tuple(remaining),
                labs,
                seq.distance,
                tuple(p.position_of(c) for c in remaining),
            )
            raise UnfoldableError(
                f"no opposite-parity pair left in run {tuple(remaining)}", cert
            )
        p = monocrimp(p, mv, (remaining[t], remaining[t + 1]))
        del remaining[t : t + 2]
    return p, (remaining[0] if remaining else None)


@dataclass(frozen=True)
class Foldability:
    """Decision plus either a witness fold sequence or a stuck-run certificate."""

    foldable: bool
    witness: tuple[FoldOp, ...] | None
    certificate: StuckRun | None

    def __bool__(self) -> bool:
        return self.foldable


def _end_fold_ops(scan: ScanResult) -> list[FoldOp]:
    lengths = scan.end_lengths
    ids = scan.end_crease_ids
    if not ids:
        return []
    t = lengths.index(max(lengths))
    # end sequences rise then fall, so folding toward the longest interval
    # always folds an end interval over a neighbor at least as long
    assert all(lengths[j] <= lengths[j + 1] for j in range(t))
    assert all(lengths[j] >= lengths[j + 1] for j in range(t, len(lengths) - 1))
    ops = [FoldOp("endfold", (ids[j],), "left") for j in range(t)]
    for j in range(len(ids) - 1, t - 1, -1):
        ops.append(FoldOp("endfold", (ids[j],), "right"))
    return ops


def is_flat_foldable(p: MVPattern) -> Foldability:
    """Decide flat-foldability by exhaustive crimping, in linear time.

    On success the witness lists every monocrimp in execution order
    followed by the end folds that collapse the residual end sequence
    onto its longest interval (left end first, ties to the leftmost).
    """
    scan = reduce_pattern(p.positions, p.labels, record_pairs=True)
    if scan.stuck is not None:
        return Foldability(False, None, scan.stuck)
    ops = [
        FoldOp("monocrimp", pair) for node in scan.nodes for pair in node.pairs
    ]
    ops.extend(_end_fold_ops(scan))
    return Foldability(True, tuple(ops), None)


def fold_point(creases, x: int) -> int:
    """Image of `x` after folding every crease in `creases` beyond the first.

    The first entry is the fixed crease (not folded).  Fewer than two
    entries leave `x` unchanged.
    """
    cs = tuple(creases)
    if len(cs) < 2:
        return x
    acc = 0
    sign = 1
    for a in cs[1:]:
        acc += sign * 2 * a
        sign = -sign
    return acc + sign * x


@dataclass(frozen=True)
class FoldedInterval:
    lo: int
    hi: int
    orientation: int  # +1 keeps direction, -1 mirrored
    level: int  # 0 = bottom layer


@dataclass(frozen=True)
class FoldedState:
    """Folded images of all intervals plus one valid vertical stacking."""

    intervals: tuple[FoldedInterval, ...]
    crease_points: tuple[int, ...]  # folded point of crease i at index i-1


def _replay_levels(p: MVPattern, witness) -> list[int]:
    """Replay fold ops over layer stacks; returns per-interval levels."""
    n_int = len(p.positions) - 1
    stacks: list[list[int] | None] = [[t] for t in range(n_int)]
    nxt = list(range(1, n_int)) + [-1]
    prv = [-1] + list(range(n_int - 1))
    # crease id <-> cell adjacency; crease i sits between cells i-1 and i
    left_cell = {cid: cid - 1 for cid in range(1, n_int)}
    right_crease = list(range(1, n_int)) + [-1]
    head, tail = 0, n_int - 1

    for op in witness:
        if op.op == "monocrimp":
            a, b = op.creases
            l = left_cell.pop(a)
            m = nxt[l]
            r = nxt[m]
            left_cell.pop(b)
            mid = stacks[m][::-1]
            if p.mv.label(a) == "M":
                new_stack = stacks[l] + mid + stacks[r]
            else:
                new_stack = stacks[r] + mid + stacks[l]
            stacks[l] = new_stack
            stacks[m] = stacks[r] = None
            nxt[l] = nxt[r]
            if nxt[r] >= 0:
                prv[nxt[r]] = l
            right_crease[l] = right_crease[r]
            if right_crease[r] >= 0:
                left_cell[right_crease[r]] = l
            if tail == r:
                tail = l
        else:
            (k,) = op.creases
            lab = p.mv.label(k)
            if op.side == "left":
                f = head
                s = nxt[f]
                assert left_cell.pop(k) == f
                flap = stacks[f][::-1]
                stacks[s] = flap + stacks[s] if lab == "V" else stacks[s] + flap
                stacks[f] = None
                prv[s] = -1
                head = s
            else:
                f = tail
                s = prv[f]
                assert left_cell.pop(k) == s
                flap = stacks[f][::-1]
                stacks[s] = flap + stacks[s] if lab == "V" else stacks[s] + flap
                stacks[f] = None
                nxt[s] = -1
                right_crease[s] = -1
                tail = s
    assert head == tail and not left_cell
    final = stacks[head]
    levels = [0] * n_int
    depth = len(final)
    for idx, t in enumerate(final):  # top-first; level 0 = bottom
        levels[t] = depth - 1 - idx
    return levels


def folded_state(p: MVPattern) -> FoldedState:
    """Fold the whole pattern flat: images via the folding maps, one valid stacking.

    The leftmost interval is held fixed, so its image is the identity.
    """
    fold = is_flat_foldable(p)
    if not fold:
        raise UnfoldableError("pattern is not flat-foldable", fold.certificate)
    pos = p.positions
    n_int = len(pos) - 1
    levels = _replay_levels(p, fold.witness)
    acc = 0
    intervals = []
    crease_points = []
    for t in range(n_int):
        sign = 1 if t % 2 == 0 else -1
        a = 2 * acc + sign * pos[t]
        b = 2 * acc + sign * pos[t + 1]
        intervals.append(
            FoldedInterval(min(a, b), max(a, b), sign, levels[t])
        )
        if t + 1 < n_int:
            crease_points.append(b)
        acc += sign * pos[t + 1]
    state = FoldedState(tuple(intervals), tuple(crease_points))
    assert check_layering(state)
    return state


def _fold_direction(iv: FoldedInterval, q: int) -> int | None:
    if iv.lo == q:
        return 1
    if iv.hi == q:
        return -1
    return None


def check_layering(s: FoldedState) -> bool:
    """Validate that the stacking never makes layers cross.

    At each fold point ``q`` the two joined layers turn around together,
    so (a) no layer stacked strictly between them may span ``q`` in its
    interior (it would pierce the fold), and (b) folds turning around at
    the same point toward the same side must nest in stack order, never
    interleave.
    """
    folds = []
    for ci, q in enumerate(s.crease_points):
        t1 = s.intervals[ci]
        t2 = s.intervals[ci + 1]
        d1 = _fold_direction(t1, q)
        d2 = _fold_direction(t2, q)
        if d1 is None or d2 is None or d1 != d2:
            return False
        l1, l2 = sorted((t1.level, t2.level))
        for z in s.intervals:
            if l1 < z.level < l2 and z.lo < q < z.hi:
                return False
        folds.append((q, -d1, l1, l2))
    groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for q, away, l1, l2 in folds:
        groups.setdefault((q, away), []).append((l1, l2))
    for ranges in groups.values():
        for i in range(len(ranges)):
            a1, b1 = ranges[i]
            for j in range(i + 1, len(ranges)):
                a2, b2 = ranges[j]
                if a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1:
                    return False
    return True
