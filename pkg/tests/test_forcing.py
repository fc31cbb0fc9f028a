import pytest

from origami1d import (
    PartialMVAssignment,
    ReconstructionError,
    UnfoldableError,
    build_crimp_forest,
    forcing_set,
    is_flat_foldable,
    mv_pattern,
    reconstruct_mv,
    verify_forcing,
)
from origami1d.forcing import END_CREASE, MAJORITY, MINORITY
from origami1d.oracle import BudgetExceededError, OracleBudget

from conftest import positions_from_lengths


def test_walkthrough_forcing_set(walkthrough):
    fs = forcing_set(walkthrough)
    assert fs.crease_ids == (1, 2, 6, 8, 9)
    assert fs.size == 5
    assert (fs.monocrimp_count, fs.end_count) == (4, 1)
    # the worked traversal: end crease first, then majority at the root
    # (same label as the survivor already in the set), then minority at
    # the node whose survivor is not yet forced
    assert fs.sources[9].kind == END_CREASE
    assert fs.sources[8].kind == MAJORITY and fs.sources[8].node == 3
    assert fs.sources[1].kind == MINORITY and fs.sources[1].node == 1


def test_zero_creases_empty_forcing_set():
    fs = forcing_set(mv_pattern((0, 5), ""))
    assert fs.crease_ids == ()
    assert fs.size == 0


def test_single_crease_forcing_set_is_that_crease():
    fs = forcing_set(mv_pattern((0, 2, 5), "M"))
    assert fs.crease_ids == (1,)
    assert fs.sources[1].kind == END_CREASE


def test_forcing_set_unfoldable_raises(pair_unfoldable):
    with pytest.raises(UnfoldableError):
        forcing_set(pair_unfoldable)


def test_size_law_and_source_counts(minimality_corpus):
    for p in minimality_corpus:
        forest = build_crimp_forest(p)
        fs = forcing_set(p)
        assert fs.size == fs.monocrimp_count + fs.end_count
        assert fs.monocrimp_count == forest.monocrimp_count
        assert fs.end_count == forest.end_count
        # per node, exactly size // 2 creases enter via that node's tag
        per_node: dict[int, int] = {}
        for cid in fs.crease_ids:
            src = fs.sources[cid]
            if src.node is not None:
                per_node[src.node] = per_node.get(src.node, 0) + 1
        for node in forest.nodes:
            assert per_node.get(node.id, 0) == node.size // 2


def test_monocrimp_hit_property(minimality_corpus):
    # every monocrimp of the witness has at least one crease in the set
    for p in minimality_corpus:
        forced = set(forcing_set(p).crease_ids)
        for op in is_flat_foldable(p).witness:
            if op.op == "monocrimp":
                assert forced.intersection(op.creases)


def test_verify_forcing_examples(pair_foldable):
    assert verify_forcing(pair_foldable, {2})
    assert verify_forcing(pair_foldable, {1})
    assert not verify_forcing(pair_foldable, set())
    assert verify_forcing(pair_foldable, {1, 2})


def test_verify_forcing_budget_refusal(walkthrough):
    tight = OracleBudget(max_free_creases=3)
    with pytest.raises(BudgetExceededError):
        verify_forcing(walkthrough, {9}, tight)


# --- reconstruction -----------------------------------------------------------


def restrict(p, forced_ids):
    labels = "".join(
        lab if (i + 1) in forced_ids else "?" for i, lab in enumerate(p.labels)
    )
    return PartialMVAssignment(labels)


def test_walkthrough_round_trip(walkthrough):
    fs = forcing_set(walkthrough)
    partial = restrict(walkthrough, set(fs.crease_ids))
    assert reconstruct_mv(walkthrough.pattern, partial).labels == walkthrough.labels


def test_round_trip_small_corpus(minimality_corpus):
    for p in minimality_corpus[:60]:
        fs = forcing_set(p)
        partial = restrict(p, set(fs.crease_ids))
        assert reconstruct_mv(p.pattern, partial).labels == p.labels


def test_fully_labeled_returned_verbatim(walkthrough):
    partial = PartialMVAssignment(walkthrough.labels)
    assert reconstruct_mv(walkthrough.pattern, partial).labels == walkthrough.labels


def test_fully_labeled_unfoldable_rejected(pair_unfoldable):
    with pytest.raises(ReconstructionError):
        reconstruct_mv(pair_unfoldable.pattern, PartialMVAssignment("MM"))


def test_unlabeled_end_crease_rejected(walkthrough):
    fs = forcing_set(walkthrough)
    known = set(fs.crease_ids) - {9}  # drop the end crease
    with pytest.raises(ReconstructionError, match="end crease"):
        reconstruct_mv(walkthrough.pattern, restrict(walkthrough, known))


def test_under_labeled_run_rejected(walkthrough):
    fs = forcing_set(walkthrough)
    known = set(fs.crease_ids) - {1}  # deprive one run of its only label
    with pytest.raises(ReconstructionError, match="under-labeled"):
        reconstruct_mv(walkthrough.pattern, restrict(walkthrough, known))


def test_mixed_known_types_in_one_run_rejected():
    p = mv_pattern(positions_from_lengths((3, 1, 1, 3)), "MMV")
    with pytest.raises(ReconstructionError, match="both types"):
        reconstruct_mv(p.pattern, PartialMVAssignment("MV?"))


def test_over_labeled_run_rejected():
    # three same-type labels in a 4-crease run: no foldable completion
    q = mv_pattern(positions_from_lengths((3, 1, 1, 1, 3)), "MVMV")
    with pytest.raises(ReconstructionError):
        reconstruct_mv(q.pattern, PartialMVAssignment("MMM?"))
