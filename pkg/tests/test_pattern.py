import pytest
from hypothesis import given
from hypothesis import strategies as st

from origami1d import (
    CreasePattern,
    MVPattern,
    PartialMVPattern,
    PatternError,
    dfs_foldable,
    generate_random,
    is_flat_foldable,
    mv_pattern,
    parse_pattern,
    pattern_from_json,
    pattern_to_json,
    serialize_pattern,
)

from conftest import WALKTHROUGH_POSITIONS


def test_parse_basic():
    p = parse_pattern("positions: 0 3 4 7\nmv: MV")
    assert isinstance(p, MVPattern)
    assert p.positions == (0, 3, 4, 7)
    assert p.labels == "MV"
    assert p.pattern.crease_position(1) == 3
    assert p.pattern.crease_position(2) == 4


def test_parse_zero_creases():
    p = parse_pattern("positions: 0 5\nmv:")
    assert p.positions == (0, 5)
    assert p.labels == ""


def test_parse_walkthrough_intervals():
    p = parse_pattern(
        "positions: 0 4 5 6 8 10 13 15 17 20 24\nmv: MMVVVMVMM"
    )
    assert p.pattern.intervals() == (4, 1, 1, 2, 2, 3, 2, 2, 3, 4)


def test_parse_comments_and_partial():
    text = "# a comment\npositions: 0 3 4 7  # trailing\nmv: M?\n"
    p = parse_pattern(text)
    assert isinstance(p, PartialMVPattern)
    assert p.mv.labels == "M?"
    assert not p.mv.is_complete()


@pytest.mark.parametrize(
    "text",
    [
        "positions: 0 3 3 7\nmv: MV",  # not increasing
        "positions: 7 3\nmv:",  # decreasing
        "positions: 0 3 4 7\nmv: M",  # length mismatch
        "positions: 0 3.5 7\nmv: M",  # non-integer
        "positions: 0 3 4 7\nmv: MX",  # bad label
        "positions: 0 99999999999999999999\nmv:",  # overflow
        "mv: MV",  # missing positions
        "positions: 0 5",  # missing mv
        "positions: 0 5\nmv:\nbogus line",
    ],
)
def test_parse_errors(text):
    with pytest.raises(PatternError):
        parse_pattern(text)


def test_intervals_examples():
    assert CreasePattern((0, 3, 4, 7)).intervals() == (3, 1, 3)
    assert CreasePattern((0, 5)).intervals() == (5,)
    assert CreasePattern(WALKTHROUGH_POSITIONS).intervals() == (
        4, 1, 1, 2, 2, 3, 2, 2, 3, 4,
    )


def test_span_overflow_checked():
    with pytest.raises(PatternError):
        CreasePattern((-(2**62), 2**62))


gaps = st.lists(st.integers(min_value=1, max_value=50), min_size=1, max_size=12)
labels_for = lambda n: st.text(alphabet="MV", min_size=n, max_size=n)


@given(gaps.flatmap(lambda g: st.tuples(st.just(g), labels_for(len(g) - 1))))
def test_round_trip_serialize(data):
    gs, labels = data
    positions = [0]
    for g in gs:
        positions.append(positions[-1] + g)
    p = mv_pattern(positions, labels)
    assert parse_pattern(serialize_pattern(p)) == p
    assert pattern_from_json(pattern_to_json(p)) == p


@given(gaps)
def test_intervals_positive_and_sum(gs):
    positions = [3]
    for g in gs:
        positions.append(positions[-1] + g)
    pat = CreasePattern(tuple(positions))
    iv = pat.intervals()
    assert all(x > 0 for x in iv)
    assert sum(iv) == positions[-1] - positions[0]


def test_generate_zero_creases():
    p = generate_random(0, seed=42)
    assert p.pattern.num_creases == 0
    assert is_flat_foldable(p)


def test_generate_small_foldable():
    p = generate_random(3, seed=1)
    assert p.pattern.num_creases == 3
    assert is_flat_foldable(p)
    assert dfs_foldable(p)


@pytest.mark.parametrize("seed", range(12))
def test_generate_inverse_always_foldable(seed):
    p = generate_random(9, seed=seed, strategy="inverse")
    assert p.pattern.num_creases == 9
    assert is_flat_foldable(p)
    assert dfs_foldable(p)


@pytest.mark.parametrize("n,seed", [(1, 0), (2, 1), (7, 2), (16, 3), (25, 4), (40, 5)])
def test_generate_sizes_and_determinism(n, seed):
    p = generate_random(n, seed=seed)
    q = generate_random(n, seed=seed)
    assert p == q
    assert p.pattern.num_creases == n
    assert is_flat_foldable(p)


def test_generate_rejects_negative():
    with pytest.raises(PatternError):
        generate_random(-1, seed=0)
