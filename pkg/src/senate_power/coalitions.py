"""Coalition enumeration, critical players, and brute-force index oracles.

Enumeration walks every bit set of the voters, so it is meant for small
games (a few dozen voters at most). The ``oracle_*`` functions evaluate the
index definitions literally, over explicitly listed coalitions, and exist to
cross-check the counting algorithms in :mod:`senate_power.indices`.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from senate_power.game import (
    Coalition,
    CoalitionLike,
    TooManyVoters,
    WeightedVotingGame,
    as_coalition,
    coalition_weight,
)

MAX_ENUM_VOTERS = 24
ORACLE_PERMUTATION_CAP = 10
ORACLE_SUBSET_CAP = 20


class TooManyVotersForOracle(TooManyVoters):
    pass


class UnknownIndex(ValueError):
    pass


class FamilyKind(enum.Enum):
    WINNING = "winning"
    MINIMAL_WINNING = "minimal_winning"
    VULNERABLE = "vulnerable"


@dataclass(frozen=True)
class CoalitionFamily:
    game: WeightedVotingGame
    kind: FamilyKind
    coalitions: tuple[Coalition, ...]

    def __len__(self) -> int:
        return len(self.coalitions)

    def __iter__(self):
        return iter(self.coalitions)

    def __contains__(self, c: object) -> bool:
        return c in set(self.coalitions)

    def member_lists(self) -> list[list[int]]:
        return [list(c.members) for c in self.coalitions]

    def to_json(self) -> str:
        return json.dumps(
            {
                "game": self.game.literal(),
                "kind": self.kind.value,
                "coalitions": self.member_lists(),
            }
        )


def subset_tables(weights) -> tuple[np.ndarray, np.ndarray]:
    """Weight and cardinality of every bit set, indexed by the mask itself."""
    sums = np.zeros(1, dtype=np.int64)
    sizes = np.zeros(1, dtype=np.int64)
    for w in weights:
        sums = np.concatenate([sums, sums + w])
        sizes = np.concatenate([sizes, sizes + 1])
    return sums, sizes


def critical_table(game: WeightedVotingGame) -> tuple[np.ndarray, np.ndarray]:
    """Per-mask critical-member bit set and critical count over all 2**n masks.

    Losing masks get an empty critical set.
    """
    _check_enum_size(game.n)
    sums, _ = subset_tables(game.weights)
    masks = np.arange(1 << game.n, dtype=np.int64)
    winning = sums >= game.quota
    crit_mask = np.zeros_like(masks)
    crit_count = np.zeros_like(masks)
    for i, w in enumerate(game.weights):
        critical = winning & ((masks >> i) & 1 == 1) & (sums - w < game.quota)
        crit_mask |= critical.astype(np.int64) << i
        crit_count += critical
    return crit_mask, crit_count


def _check_enum_size(n: int) -> None:
    if n > MAX_ENUM_VOTERS:
        raise TooManyVoters(
            f"enumeration over {n} voters exceeds the cap of {MAX_ENUM_VOTERS}"
        )


def _family(game, kind, masks) -> CoalitionFamily:
    return CoalitionFamily(
        game, kind, tuple(Coalition(int(m)) for m in sorted(masks))
    )


def enumerate_winning(game: WeightedVotingGame) -> CoalitionFamily:
    _check_enum_size(game.n)
    sums, _ = subset_tables(game.weights)
    return _family(game, FamilyKind.WINNING, np.flatnonzero(sums >= game.quota))


def enumerate_minimal_winning(game: WeightedVotingGame) -> CoalitionFamily:
    """Winning coalitions in which every member is critical.

    Zero-weight voters are never critical, so the search runs over the
    positive-weight voters only and maps the result back.
    """
    positive = [i for i, w in enumerate(game.weights) if w > 0]
    _check_enum_size(len(positive))
    sums, sizes = subset_tables([game.weights[i] for i in positive])
    masks = np.arange(len(sums), dtype=np.int64)
    minimal = sums >= game.quota
    for j, i in enumerate(positive):
        has_j = (masks >> j) & 1 == 1
        minimal &= ~has_j | (sums - game.weights[i] < game.quota)
    found = []
    for m in np.flatnonzero(minimal):
        full = 0
        for j, i in enumerate(positive):
            if m >> j & 1:
                full |= 1 << i
        found.append(full)
    return _family(game, FamilyKind.MINIMAL_WINNING, found)


def enumerate_vulnerable(game: WeightedVotingGame) -> CoalitionFamily:
    """Winning coalitions with at least one critical member."""
    _, crit_count = critical_table(game)
    return _family(game, FamilyKind.VULNERABLE, np.flatnonzero(crit_count > 0))


def critical_players(game: WeightedVotingGame, c: CoalitionLike) -> frozenset[int]:
    c = as_coalition(c)
    total = coalition_weight(game, c)
    if total < game.quota:
        return frozenset()
    return frozenset(i for i in c if total - game.weights[i] < game.quota)


# -- oracles ---------------------------------------------------------------


def oracle_shapley(game: WeightedVotingGame) -> tuple[Fraction, ...]:
    """Shapley-Shubik values by walking the tree of voter orderings.

    Each branch stops at its pivot: the ``(n - d)!`` orderings that share a
    pivotal prefix of length ``d`` are credited together. The subtree below
    a losing prefix depends only on which voters it holds, so its pivot
    counts are memoised on that set; every one of the ``n!`` orderings is
    still counted exactly once.
    """
    n, q, w = game.n, game.quota, game.weights
    if n > ORACLE_PERMUTATION_CAP:
        raise TooManyVotersForOracle(
            f"permutation oracle limited to {ORACLE_PERMUTATION_CAP} voters"
        )
    fact = [math.factorial(k) for k in range(n + 1)]
    memo: dict[int, list[int]] = {}

    def below(used: int, depth: int, running: int) -> list[int]:
        if used in memo:
            return memo[used]
        counts = [0] * n
        for voter in range(n):
            if used >> voter & 1:
                continue
            if running + w[voter] >= q:
                counts[voter] += fact[n - depth - 1]
            else:
                sub = below(used | 1 << voter, depth + 1, running + w[voter])
                for k in range(n):
                    counts[k] += sub[k]
        memo[used] = counts
        return counts

    pivots = below(0, 0, 0)
    assert sum(pivots) == fact[n]
    return tuple(Fraction(p, fact[n]) for p in pivots)


def brute_force_shapley(game: WeightedVotingGame) -> tuple[Fraction, ...]:
    """Pivot counts over all n! orderings one by one; only for very small n."""
    n = game.n
    pivots = [0] * n
    for order in itertools.permutations(range(n)):
        running = 0
        for voter in order:
            running += game.weights[voter]
            if running >= game.quota:
                pivots[voter] += 1
                break
    total = math.factorial(n)
    return tuple(Fraction(p, total) for p in pivots)


@dataclass(frozen=True)
class _ExplicitFamilies:
    winning: tuple[frozenset[int], ...]
    critical: dict  # winning coalition -> frozenset of critical members
    minimal: tuple[frozenset[int], ...]


@lru_cache(maxsize=64)
def _explicit_families(game: WeightedVotingGame) -> _ExplicitFamilies:
    n, q, w = game.n, game.quota, game.weights
    winning = []
    critical = {}
    for size in range(n + 1):
        for members in itertools.combinations(range(n), size):
            s = frozenset(members)
            total = sum(w[i] for i in s)
            if total < q:
                continue
            winning.append(s)
            critical[s] = frozenset(i for i in s if total - w[i] < q)
    minimal = tuple(s for s in winning if critical[s] == s)
    return _ExplicitFamilies(tuple(winning), critical, minimal)


def _normalise(raw: list[Fraction]) -> tuple[Fraction, ...]:
    total = sum(raw)
    return tuple(Fraction(x) / total for x in raw)


def _share_sums(sets, n: int) -> list[Fraction]:
    """For each voter, the sum of 1/|S| over the sets S containing it.

    Tallying by set size keeps the Fraction work to one short sum per voter.
    """
    tallies = [dict() for _ in range(n)]
    for s in sets:
        k = len(s)
        for i in s:
            tallies[i][k] = tallies[i].get(k, 0) + 1
    return [sum((Fraction(c, k) for k, c in t.items()), Fraction(0)) for t in tallies]


def oracle_index(game: WeightedVotingGame, index_kind) -> tuple[Fraction, ...]:
    """Evaluate an index straight from its set definition.

    ``index_kind`` is an :class:`~senate_power.indices.IndexKind` member or its
    short name (``ss``, ``bz``, ``dp``, ``hp``, ``jo``).
    """
    from senate_power.indices import IndexKind

    try:
        kind = IndexKind.parse(index_kind)
    except ValueError as exc:
        raise UnknownIndex(str(exc)) from None
    if kind is IndexKind.SHAPLEY_SHUBIK:
        return oracle_shapley(game)
    if game.n > ORACLE_SUBSET_CAP:
        raise TooManyVotersForOracle(
            f"subset oracle limited to {ORACLE_SUBSET_CAP} voters"
        )
    fam = _explicit_families(game)
    n = game.n
    if kind is IndexKind.BANZHAF:
        swings = [sum(1 for s in fam.winning if i in fam.critical[s]) for i in range(n)]
        return _normalise([Fraction(x) for x in swings])
    if kind is IndexKind.DEEGAN_PACKEL:
        shares = _share_sums(fam.minimal, n)
        return tuple(x / len(fam.minimal) for x in shares)
    if kind is IndexKind.HOLLER_PACKEL:
        counts = [sum(1 for s in fam.minimal if i in s) for i in range(n)]
        return _normalise([Fraction(x) for x in counts])
    if kind is IndexKind.JOHNSTON:
        return _normalise(_share_sums((fam.critical[s] for s in fam.winning), n))
    raise UnknownIndex(f"no oracle for {kind}")
