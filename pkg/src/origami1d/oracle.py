"""Independent brute-force ground truth.

Foldability here is decided by memoized depth-first search over every
legal physical fold move: a monocrimp folds an adjacent opposite-parity
crease pair whose middle interval is no longer than either neighbor, and
an end fold folds an end interval over a neighbor at least as long.  A
pattern is foldable when some move sequence reduces it to a single
interval.  This deliberately shares no logic with the engine's scan
decision in :mod:`origami1d.fold_engine`; agreement between the two is a
test target, not a code path.

Forcing verification enumerates every completion of the free creases and
checks that the input assignment is the only foldable one; the minimum
forcing-set search enumerates candidate subsets in cardinality-then-
lexicographic order against the full set of foldable assignments.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from .fold_engine import UnfoldableError, is_flat_foldable
from .pattern import CreasePattern, MVPattern, mv_pattern

MAX_SUBSET_CREASES = 16


class BudgetExceededError(RuntimeError):
    """The requested oracle computation exceeds the configured budget."""


@dataclass(frozen=True)
class OracleBudget:
    max_free_creases: int = 25
    max_dfs_states: int = 10_000_000
    time_limit: float = 600.0  # seconds

    def __post_init__(self) -> None:
        if (
            self.max_free_creases <= 0
            or self.max_dfs_states <= 0
            or self.time_limit <= 0
        ):
            raise ValueError("all budget fields must be positive")


@dataclass
class _Search:
    budget: OracleBudget
    memo: dict
    states: int = 0
    deadline: float = 0.0

    @classmethod
    def start(cls, budget: OracleBudget) -> "_Search":
        return cls(budget, {}, 0, time.monotonic() + budget.time_limit)

    def tick(self) -> None:
        self.states += 1
        if self.states > self.budget.max_dfs_states:
            raise BudgetExceededError(
                f"DFS exceeded {self.budget.max_dfs_states} states"
            )
        if self.states % 4096 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceededError("DFS exceeded the time budget")


def _normalize(pos: tuple[int, ...]) -> tuple[int, ...]:
    if pos[0] == 0:
        return pos
    base = pos[0]
    return tuple(x - base for x in pos)


def _dfs(pos: tuple[int, ...], labs: str, search: _Search) -> bool:
    key = (pos, labs)
    hit = search.memo.get(key)
    if hit is not None:
        return hit
    search.tick()
    n = len(pos)
    if n == 2:
        search.memo[key] = True
        return True
    result = False
    # end folds: fold an end interval over a neighbor at least as long
    if pos[1] - pos[0] <= pos[2] - pos[1]:
        result = _dfs(_normalize(pos[1:]), labs[1:], search)
    if not result and pos[-1] - pos[-2] <= pos[-2] - pos[-3]:
        result = _dfs(pos[:-1], labs[:-1], search)
    if not result:
        # monocrimps: adjacent opposite pair, middle <= both neighbors
        for j in range(1, n - 2):
            if labs[j - 1] == labs[j]:
                continue
            mid = pos[j + 1] - pos[j]
            if mid <= pos[j] - pos[j - 1] and mid <= pos[j + 2] - pos[j + 1]:
                shift = 2 * mid
                new_pos = pos[:j] + tuple(x - shift for x in pos[j + 2 :])
                if _dfs(new_pos, labs[: j - 1] + labs[j + 1 :], search):
                    result = True
                    break
    search.memo[key] = result
    return result


def dfs_foldable(
    p: MVPattern,
    budget: OracleBudget | None = None,
    stats_out: dict | None = None,
) -> bool:
    """Foldability by exhaustive search over monocrimps and end folds."""
    budget = budget or OracleBudget()
    search = _Search.start(budget)
    result = _dfs(_normalize(p.positions), p.labels, search)
    if stats_out is not None:
        stats_out["dfs_states"] = search.states
    return result


def _completions(base: str, free: list[int]):
    """All label strings agreeing with `base` outside the free creases."""
    chars = list(base)
    for combo in itertools.product("MV", repeat=len(free)):
        for cid, lab in zip(free, combo):
            chars[cid - 1] = lab
        yield "".join(chars)


def is_forcing(
    p: MVPattern,
    crease_ids,
    budget: OracleBudget | None = None,
    cross_check: bool = True,
    stats_out: dict | None = None,
) -> bool:
    """True iff the labels on `crease_ids` admit no other foldable completion.

    Enumerates all ``2^free`` completions, deciding each by DFS; with
    ``cross_check`` every verdict is also compared against the engine's
    scan decision and a mismatch raises ``RuntimeError``.
    """
    budget = budget or OracleBudget()
    forced = set(crease_ids)
    unknown = forced.difference(p.pattern.crease_ids())
    if unknown:
        raise ValueError(f"not creases of this pattern: {sorted(unknown)}")
    free = [cid for cid in p.pattern.crease_ids() if cid not in forced]
    if len(free) > budget.max_free_creases:
        raise BudgetExceededError(
            f"{len(free)} free creases exceed the budget of "
            f"{budget.max_free_creases}"
        )
    search = _Search.start(budget)
    pos = _normalize(p.positions)
    if not _dfs(pos, p.labels, search):
        raise UnfoldableError("pattern is not flat-foldable")
    result = True
    completions = 0
    for labs in _completions(p.labels, free):
        completions += 1
        ok = _dfs(pos, labs, search)
        if cross_check:
            engine = bool(is_flat_foldable(mv_pattern(p.positions, labs)))
            if engine != ok:
                raise RuntimeError(
                    f"decision mismatch on labels {labs!r}: "
                    f"engine={engine} oracle={ok}"
                )
        if ok and labs != p.labels:
            result = False
            break
    if stats_out is not None:
        stats_out["dfs_states"] = search.states
        stats_out["completions"] = completions
    return result


def foldable_assignments(
    pattern: CreasePattern,
    budget: OracleBudget | None = None,
    stats_out: dict | None = None,
) -> list[str]:
    """Every foldable label string of `pattern`, in enumeration order."""
    budget = budget or OracleBudget()
    n = pattern.num_creases
    if n > budget.max_free_creases:
        raise BudgetExceededError(
            f"{n} creases exceed the enumeration budget of "
            f"{budget.max_free_creases}"
        )
    search = _Search.start(budget)
    pos = _normalize(pattern.positions)
    out = []
    for labs in _completions("M" * n, list(range(1, n + 1))):
        if _dfs(pos, labs, search):
            out.append(labs)
    if stats_out is not None:
        stats_out["dfs_states"] = search.states
        stats_out["assignments"] = 1 << n
    return out


def minimum_forcing_size(
    p: MVPattern,
    budget: OracleBudget | None = None,
    stats_out: dict | None = None,
) -> tuple[int, tuple[int, ...]]:
    """Smallest forcing-set size plus the first witness subset.

    Candidate subsets are enumerated in increasing cardinality and
    lexicographic order within each cardinality, each checked against
    the exhaustively computed set of foldable assignments.
    """
    budget = budget or OracleBudget()
    n = p.pattern.num_creases
    if n > MAX_SUBSET_CREASES:
        raise BudgetExceededError(
            f"subset enumeration is limited to {MAX_SUBSET_CREASES} creases"
        )
    foldable = foldable_assignments(p.pattern, budget, stats_out)
    if p.labels not in foldable:
        raise UnfoldableError("pattern is not flat-foldable")

    def mask(labs: str) -> int:
        m = 0
        for i, ch in enumerate(labs):
            if ch == "V":
                m |= 1 << i
        return m

    own = mask(p.labels)
    diffs = sorted(
        (mask(f) ^ own for f in foldable if f != p.labels),
        key=lambda d: bin(d).count("1"),
    )
    checked = 0
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            checked += 1
            fm = 0
            for i in combo:
                fm |= 1 << i
            if all(d & fm for d in diffs):
                if stats_out is not None:
                    stats_out["subsets_checked"] = checked
                return k, tuple(i + 1 for i in combo)
    raise AssertionError("unreachable: the full crease set is always forcing")
