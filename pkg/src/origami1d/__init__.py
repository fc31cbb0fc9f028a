"""Flat-foldability, crimp forests and minimum forcing sets for 1D
mountain-valley crease patterns, with brute-force oracles for desk-scale
verification."""

from ._reduction import ForestNode, StuckRun
from .crimp_forest import (
    CrimpForest,
    build_crimp_forest,
    build_crimp_forest_random_order,
    build_structural_forest,
    crimp_signatures,
    end_signature,
    export_forest,
    forest_isomorphic,
)
from .fold_engine import (
    CrimpError,
    CrimpableSequence,
    FoldOp,
    Foldability,
    FoldedInterval,
    FoldedState,
    ReducedPattern,
    UnfoldableError,
    check_layering,
    crimp,
    find_crimpable_sequences,
    fold_ops_from_json,
    fold_ops_to_json,
    fold_point,
    folded_state,
    fuse_length,
    is_flat_foldable,
    monocrimp,
)
from .forcing import (
    ForcingSet,
    ForcingSource,
    ReconstructionError,
    forcing_set,
    reconstruct_mv,
    verify_forcing,
)
from .oracle import (
    BudgetExceededError,
    OracleBudget,
    dfs_foldable,
    foldable_assignments,
    is_forcing,
    minimum_forcing_size,
)
from .pattern import (
    CreasePattern,
    MVAssignment,
    MVPattern,
    PartialMVAssignment,
    PartialMVPattern,
    PatternError,
    generate_random,
    mv_pattern,
    parse_pattern,
    pattern_from_json,
    pattern_to_json,
    serialize_pattern,
)

__version__ = "0.1.0"
