"""Shared fixtures: named small patterns and seeded random corpora."""

from __future__ import annotations

from itertools import accumulate

import pytest

from origami1d import generate_random, mv_pattern

# Two creases around a strictly shorter middle interval: opposite labels
# fold, equal labels self-intersect.
PAIR_POSITIONS = (0, 3, 4, 7)

# Interval lengths 4,1,1,2,2,3,2,2,3,4: reduces through four 3-crease runs
# into a single end crease; the classic worked example for the forest and
# the forcing traversal.  The label string is one foldable assignment
# agreeing with (M,M,V) on (c1,c2,c3), derived with the DFS oracle.
WALKTHROUGH_POSITIONS = (0, 4, 5, 6, 8, 10, 13, 15, 17, 20, 24)
WALKTHROUGH_LABELS = "MMVVVMVMM"


def positions_from_lengths(lengths, start=0):
    return tuple(accumulate(lengths, initial=start))


# Fixed 8-crease position sets (10 positions each) covering a deep forest,
# a pure end sequence, and one long uniform run.
EIGHT_CREASE_POSITION_SETS = (
    positions_from_lengths((4, 1, 1, 2, 2, 3, 2, 2, 3)),
    positions_from_lengths((1, 2, 3, 4, 5, 4, 3, 2, 1)),
    positions_from_lengths((2, 1, 1, 1, 1, 1, 1, 1, 2)),
)


@pytest.fixture(scope="session")
def pair_foldable():
    return mv_pattern(PAIR_POSITIONS, "MV")


@pytest.fixture(scope="session")
def pair_unfoldable():
    return mv_pattern(PAIR_POSITIONS, "MM")


@pytest.fixture(scope="session")
def walkthrough():
    return mv_pattern(WALKTHROUGH_POSITIONS, WALKTHROUGH_LABELS)


@pytest.fixture(scope="session")
def minimality_corpus():
    """200 seeded foldable patterns with 4..12 creases."""
    return [generate_random(4 + i % 9, seed=1000 + i) for i in range(200)]


@pytest.fixture(scope="session")
def order_corpus():
    """100 seeded foldable patterns with 4..14 creases."""
    return [generate_random(4 + i % 11, seed=5000 + i) for i in range(100)]
