"""Shared left-to-right reduction engine.

Reduces a crease pattern by exhaustively crimping, always at the leftmost
crimpable run.  A crimpable run is a maximal block of equally spaced
creases (gap ``d``) whose flanking intervals are both strictly longer
than ``d``; crimping removes opposite-parity adjacent pairs until zero
(even-size run) or one (odd-size run) crease remains.  Removing a pair
fuses three intervals ``l, d, r`` into one of length ``l - d + r``, so an
even crimp merges the two flanks while an odd crimp leaves both flank
lengths untouched and a surviving crease between them.

The scan keeps a stack of equal-length interval runs with no strict
local minimum anywhere inside the stack.  Pushing the next interval can
expose the top run as a local minimum, which is exactly the leftmost
crimpable run of the current pattern; crimping it either records a
survivor (odd) or fuses the flanks into a pending interval that is
re-examined against the new stack top, so cascades of newly formed
minima to the left are handled before the cursor moves on.  Every
interval is pushed once and popped at most once, which bounds the number
of interval comparisons linearly in the input size; ``comparisons``
reports the exact count.

Crease identity: original 1-based indices; 0 is the paper-start sentinel
and never appears in a run.  In structural mode (``labels=None``) crimps
are located from interval lengths alone and survivors get fresh negative
ids ``-(node_id + 1)``, since which original crease survives depends on
the labels.
"""

from __future__ import annotations

import gc
from dataclasses import dataclass

# Above this many intervals the scan pauses garbage collection: the build
# allocates millions of long-lived containers, and repeated full
# collections over them dominate the runtime otherwise.
_GC_PAUSE_THRESHOLD = 50_000


@dataclass(slots=True)
class ForestNode:
    """One crimped run, in crimp order (ids double as creation order)."""

    id: int
    crease_ids: tuple[int, ...]
    labels: str | None
    distance: int
    start: int  # position of the run's first crease at crimp time
    survivor: int | None
    pairs: tuple[tuple[int, int], ...]
    parent: int | None = None
    _children: list[int] | None = None

    @property
    def size(self) -> int:
        return len(self.crease_ids)

    @property
    def children(self) -> list[int]:
        return self._children if self._children is not None else []

    @property
    def crease_positions(self) -> tuple[int, ...]:
        """Positions of the run's creases at crimp time (label-independent)."""
        d = self.distance
        start = self.start
        return tuple(start + j * d for j in range(len(self.crease_ids)))


@dataclass(slots=True)
class StuckRun:
    """Certificate of unfoldability: a crimpable run with no opposite pair left."""

    crease_ids: tuple[int, ...]
    labels: str
    distance: int
    crease_positions: tuple[int, ...]

    def remaining(self) -> tuple[int, ...]:
        """The same-parity creases that block the crimp."""
        stack: list[tuple[int, str]] = []
        for cid, lab in zip(self.crease_ids, self.labels):
            if stack and stack[-1][1] != lab:
                stack.pop()
            else:
                stack.append((cid, lab))
        return tuple(cid for cid, _ in stack)


@dataclass(slots=True)
class ScanResult:
    nodes: list[ForestNode]
    stuck: StuckRun | None
    end_crease_ids: tuple[int, ...]
    end_positions: tuple[int, ...]
    end_lengths: tuple[int, ...]
    comparisons: int
    monocrimps: int


def reduce_pattern(
    positions,
    labels: str | None = None,
    record_pairs: bool = False,
) -> ScanResult:
    """Run the reduction scan over ``positions`` (with optional crease labels)."""
    if len(positions) > _GC_PAUSE_THRESHOLD and gc.isenabled():
        gc.disable()
        try:
            return reduce_pattern(positions, labels, record_pairs)
        finally:
            gc.enable()
    lengths = [b - a for a, b in zip(positions, positions[1:])]
    n_int = len(lengths)
    nodes: list[ForestNode] = []
    owner: dict[int, int] = {}  # survivor crease id -> node id awaiting a parent
    comparisons = 0
    monocrimps = 0
    structural = labels is None

    # Parallel run stacks: length value, interval count, start position of
    # the run's first interval, and the crease id left of each interval.
    rv: list[int] = [lengths[0]]
    rc: list[int] = [1]
    rs: list[int] = [positions[0]]
    rcr: list[list[int]] = [[0]]
    edge = positions[1]  # right end of the reduced prefix

    for i in range(1, n_int):
        x = lengths[i]
        xc = i
        xs = edge
        while True:
            if not rv:
                rv.append(x)
                rc.append(1)
                rs.append(xs)
                rcr.append([xc])
                edge = xs + x
                break
            top = rv[-1]
            comparisons += 1
            if x == top:
                rc[-1] += 1
                rcr[-1].append(xc)
                edge = xs + x
                break
            if x < top:
                rv.append(x)
                rc.append(1)
                rs.append(xs)
                rcr.append([xc])
                edge = xs + x
                break
            comparisons += 1
            if len(rv) == 1 or rv[-2] <= top:
                rv.append(x)
                rc.append(1)
                rs.append(xs)
                rcr.append([xc])
                edge = xs + x
                break

            # The top run is the leftmost crimpable run: crimp it.
            d = top
            k = rc[-1]
            start = rs[-1]
            node_id = len(nodes)
            size = k + 1

            if k == 1 and not structural:
                # Pair crimp: dominant case, kept allocation-light.
                a = rcr[-1][0]
                b = xc
                la = labels[a - 1]
                if la == labels[b - 1]:
                    return ScanResult(
                        nodes,
                        StuckRun((a, b), la + la, d, (start, start + d)),
                        (),
                        (),
                        (),
                        comparisons,
                        monocrimps,
                    )
                ids_t = (a, b)
                labs = "MV" if la == "M" else "VM"
                pairs: tuple[tuple[int, int], ...] = (ids_t,) if record_pairs else ()
                survivor = None
            else:
                ids = rcr[-1]
                ids.append(xc)
                ids_t = tuple(ids)
                if structural:
                    labs = None
                    pairs = ()
                    survivor = -(node_id + 1) if size & 1 else None
                else:
                    labs = "".join(labels[c - 1] for c in ids_t)
                    stack_id: list[int] = []
                    stack_lab: list[str] = []
                    pair_list: list[tuple[int, int]] = []
                    for cid, lab in zip(ids_t, labs):
                        if stack_lab and stack_lab[-1] != lab:
                            a = stack_id.pop()
                            stack_lab.pop()
                            if record_pairs:
                                pair_list.append((a, cid))
                        else:
                            stack_id.append(cid)
                            stack_lab.append(lab)
                    if len(stack_id) > 1:
                        return ScanResult(
                            nodes,
                            StuckRun(
                                ids_t,
                                labs,
                                d,
                                tuple(start + j * d for j in range(size)),
                            ),
                            (),
                            (),
                            (),
                            comparisons,
                            monocrimps,
                        )
                    pairs = tuple(pair_list)
                    survivor = stack_id[0] if stack_id else None

            monocrimps += size >> 1
            if owner:
                for cid in ids_t:
                    child = owner.pop(cid, None)
                    if child is not None:
                        nodes[child].parent = node_id

            nodes.append(
                ForestNode(node_id, ids_t, labs, d, start, survivor, pairs)
            )
            rv.pop()
            rc.pop()
            rs.pop()
            rcr.pop()
            if survivor is not None:
                owner[survivor] = node_id
                xc = survivor
                xs = start
            else:
                below_count = rc[-1]
                below_val = rv[-1]
                x = below_val - d + x
                xs = rs[-1] + (below_count - 1) * below_val
                xc = rcr[-1].pop()
                rc[-1] -= 1
                if rc[-1] == 0:
                    rv.pop()
                    rc.pop()
                    rs.pop()
                    rcr.pop()

    end_ids: list[int] = []
    end_positions: list[int] = []
    end_lengths: list[int] = []
    for r in range(len(rv)):
        value = rv[r]
        base = rs[r]
        for j in range(rc[r]):
            cid = rcr[r][j]
            if cid != 0:
                end_ids.append(cid)
                end_positions.append(base + j * value)
            end_lengths.append(value)

    for node_id, node in enumerate(nodes):
        parent = node.parent
        if parent is not None:
            siblings = nodes[parent]._children
            if siblings is None:
                nodes[parent]._children = [node_id]
            else:
                siblings.append(node_id)

    return ScanResult(
        nodes,
        None,
        tuple(end_ids),
        tuple(end_positions),
        tuple(end_lengths),
        comparisons,
        monocrimps,
    )
