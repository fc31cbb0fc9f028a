"""Minimum forcing sets and MV reconstruction.

A forcing set is a crease subset whose labels admit exactly one foldable
completion.  The minimum one is computed from the crimp forest: start
with every end crease, then walk each tree top-down and per run add the
M-labeled creases (even run), the majority-labeled creases when the
run's survivor is already forced, and the minority-labeled creases
otherwise.  Every run of size ``l`` contributes exactly ``l // 2`` new
creases, one per monocrimp, so the result has size ``m + e`` for ``m``
total monocrimps and ``e`` end creases, which is also the size of the
smallest possible forcing set.

Reconstruction inverts the process: the forest is rebuilt from interval
lengths alone, each run must carry at least ``l // 2`` known labels of
one type, and every unknown crease in the run receives the opposite
type.  Survivor identities are recovered bottom-up as runs are labeled.
"""

from __future__ import annotations

from dataclasses import dataclass

from .crimp_forest import CrimpForest, build_crimp_forest, build_structural_forest
from .fold_engine import is_flat_foldable
from .pattern import (
    CreasePattern,
    MVAssignment,
    MVPattern,
    PartialMVAssignment,
    PatternError,
)

END_CREASE = "end"
EVEN_NODE_M = "even_m"
MAJORITY = "majority"
MINORITY = "minority"


class ReconstructionError(ValueError):
    """Partial labels do not satisfy the reconstruction preconditions."""


@dataclass(frozen=True)
class ForcingSource:
    """Why a crease entered the forcing set (``node`` for run-based kinds)."""

    kind: str
    node: int | None = None


@dataclass(frozen=True)
class ForcingSet:
    crease_ids: tuple[int, ...]  # sorted original indices
    sources: dict[int, ForcingSource]
    monocrimp_count: int
    end_count: int

    @property
    def size(self) -> int:
        return len(self.crease_ids)

    def to_json_dict(self) -> dict:
        sources = {}
        for cid in self.crease_ids:
            src = self.sources[cid]
            sources[str(cid)] = (
                {"kind": src.kind}
                if src.node is None
                else {"kind": src.kind, "node": src.node}
            )
        return {
            "creases": list(self.crease_ids),
            "m": self.monocrimp_count,
            "e": self.end_count,
            "sources": sources,
        }


def forcing_set_from_forest(forest: CrimpForest) -> ForcingSet:
    """Run the top-down traversal over an already-built labeled forest."""
    assert forest.end_labels is not None, "forcing needs a labeled forest"
    forced: dict[int, ForcingSource] = {
        cid: ForcingSource(END_CREASE) for cid in forest.end_crease_ids
    }
    for nid in forest.preorder():
        node = forest.nodes[nid]
        if node.size % 2 == 0:
            target = "M"
            kind = EVEN_NODE_M
        else:
            majority = node.labels[node.crease_ids.index(node.survivor)]
            if node.survivor in forced:
                target = majority
                kind = MAJORITY
            else:
                target = "V" if majority == "M" else "M"
                kind = MINORITY
        added = 0
        for cid, lab in zip(node.crease_ids, node.labels):
            if lab == target and cid not in forced:
                forced[cid] = ForcingSource(kind, nid)
                added += 1
        # One new forced crease per monocrimp of this run.
        assert added == node.size // 2
    ids = tuple(sorted(forced))
    assert len(ids) == forest.monocrimp_count + forest.end_count
    return ForcingSet(ids, forced, forest.monocrimp_count, forest.end_count)


def forcing_set(p: MVPattern) -> ForcingSet:
    """Minimum forcing set of a flat-foldable pattern, in linear time."""
    return forcing_set_from_forest(build_crimp_forest(p))


def verify_forcing(p: MVPattern, crease_ids, budget=None) -> bool:
    """Exhaustively check that `crease_ids` is forcing (brute-force oracle).

    Refuses with :class:`origami1d.oracle.BudgetExceededError` when more
    free creases remain than the budget allows.
    """
    from . import oracle

    return oracle.is_forcing(p, crease_ids, budget)


def _annihilate_slots(labels: list[str]) -> int | None:
    """Slot index of the surviving crease, or None for a balanced run."""
    stack: list[int] = []
    for slot, lab in enumerate(labels):
        if stack and labels[stack[-1]] != lab:
            stack.pop()
        else:
            stack.append(slot)
    assert len(stack) <= 1
    return stack[0] if stack else None


def reconstruct_mv(c: CreasePattern, partial: PartialMVAssignment) -> MVAssignment:
    """Recover the unique foldable assignment from forcing-set labels.

    The known labels must cover a forcing set: every end crease labeled
    and every run carrying at least ``size // 2`` known labels, all of
    one type.  Unknown creases in a run get the opposite type.
    """
    if len(partial.labels) != c.num_creases:
        raise PatternError(
            f"{c.num_creases} creases but {len(partial.labels)} labels"
        )
    if partial.is_complete():
        mv = MVAssignment(partial.labels)
        if not is_flat_foldable(MVPattern(c, mv)):
            raise ReconstructionError("complete label set is not foldable")
        return mv

    known = {
        cid: partial.labels[cid - 1]
        for cid in c.crease_ids()
        if partial.labels[cid - 1] != "?"
    }
    forest = build_structural_forest(c)
    resolved_id: dict[int, int] = {}  # placeholder survivor id -> original id
    assigned: dict[int, str] = {}

    def put(cid: int, lab: str) -> None:
        prev = assigned.get(cid)
        if prev is not None and prev != lab:
            raise ReconstructionError(
                f"crease {cid} receives conflicting labels {prev!r} and {lab!r}"
            )
        assigned[cid] = lab

    for node in forest.nodes:  # creation order: children before parents
        size = node.size
        real = [resolved_id.get(cid, cid) for cid in node.crease_ids]
        known_types = {known[r] for r in real if r in known}
        if len(known_types) > 1:
            raise ReconstructionError(
                f"run {tuple(real)} has known labels of both types"
            )
        n_known = sum(1 for r in real if r in known)
        if n_known < size // 2:
            raise ReconstructionError(
                f"run {tuple(real)} is under-labeled: {n_known} known "
                f"labels, needs at least {size // 2}"
            )
        g = known_types.pop()
        opposite = "V" if g == "M" else "M"
        limit = size // 2 + (1 if size % 2 else 0)
        if n_known > limit:
            raise ReconstructionError(
                f"run {tuple(real)} has {n_known} same-type known labels, "
                f"more than a foldable run admits"
            )
        labels = [g if r in known else opposite for r in real]
        for r, lab in zip(real, labels):
            put(r, lab)
        if node.survivor is not None:
            slot = _annihilate_slots(labels)
            resolved_id[node.survivor] = real[slot]

    for cid in forest.end_crease_ids:
        real = resolved_id.get(cid, cid)
        if real not in known:
            raise ReconstructionError(f"end crease {real} is unlabeled")
        put(real, known[real])

    labels_out = "".join(assigned[cid] for cid in c.crease_ids())
    mv = MVAssignment(labels_out)
    if not is_flat_foldable(MVPattern(c, mv)):
        raise ReconstructionError("reconstructed assignment is not foldable")
    for cid, lab in known.items():
        if labels_out[cid - 1] != lab:
            raise ReconstructionError(
                f"reconstruction contradicts the known label of crease {cid}"
            )
    return mv
